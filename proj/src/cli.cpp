#include "betacoal/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "betacoal/coalescent.hpp"
#include "betacoal/experiments.hpp"
#include "betacoal/rates.hpp"
#include "betacoal/report.hpp"
#include "betacoal/sampling.hpp"

namespace betacoal {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string alpha_text;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t reps = 0;
  std::string seed_text;
  double theta = 0.0;
  std::int64_t a = 2;
  std::int64_t b = 0;
  std::int64_t start_n = 0;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out_path;
  std::string raw_out_path;
  std::string path_out;
  std::vector<std::string> thresholds;
  std::string experiment;
};

std::string format15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty()) return kDefaultSeed;
  if (text.front() == '-') throw UsageError("seed must be a nonnegative integer");
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw UsageError("invalid seed: " + text);
  }
  if (used != text.size()) throw UsageError("invalid seed: " + text);
  return seed;
}

std::map<std::string, double> parse_thresholds(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("threshold must be name=value");
    std::size_t used = 0;
    double value = 0.0;
    const std::string text = item.substr(eq + 1);
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid threshold value: " + item);
    }
    if (used != text.size()) throw UsageError("invalid threshold value: " + item);
    out[item.substr(0, eq)] = value;
  }
  return out;
}

// The output sink: --out path when given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file: " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

OutputHeader make_header(const std::vector<std::string>& args, const Options& opt,
                         const std::optional<AlphaParams>& alpha, std::uint64_t seed) {
  OutputHeader h;
  h.version = BETACOAL_VERSION;
  h.command = "betacoal";
  for (const auto& a : args) h.command += " " + a;
  if (alpha) {
    h.alpha = alpha->alpha;
    if (alpha->tag != AlphaTag::none) h.alpha_text = opt.alpha_text;
  }
  h.seed = seed;
  return h;
}

void json_header(std::ostream& out, const OutputHeader& h) {
  out << "\"header\": {\"version\": \"" << h.version << "\", \"command\": \"";
  for (const char c : h.command) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << "\", \"alpha\": ";
  if (!h.alpha_text.empty()) {
    out << '"' << h.alpha_text << '"';
  } else if (h.alpha) {
    out << format_real(*h.alpha);
  } else {
    out << "null";
  }
  out << ", \"seed\": " << h.seed << "}";
}

int cmd_rates(const std::vector<std::string>& args, const Options& opt, std::ostream& out) {
  const AlphaParams p = parse_alpha(opt.alpha_text);
  if (opt.m < 2) throw UsageError("--m must be at least 2");
  const OutputHeader header = make_header(args, opt, p, parse_seed(opt.seed_text));
  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  const bool json = opt.format == "json";
  if (json) {
    os << "{";
    json_header(os, header);
    os << ", \"rows\": [";
  } else {
    write_comment_header(os, header);
    os << "m,l,rate,prob\n";
  }
  bool first = true;
  for (std::int64_t m = 2; m <= opt.m; ++m) {
    const double total = total_rate(m, p);
    for (std::int64_t l = m - 1; l >= 1; --l) {
      const double rate = merge_rate(m, m - l + 1, p);
      if (json) {
        os << (first ? "\n  " : ",\n  ") << "{\"m\": " << m << ", \"l\": " << l
           << ", \"rate\": " << format_real(rate) << ", \"prob\": " << format_real(rate / total)
           << "}";
      } else {
        os << m << ',' << l << ',' << format15(rate) << ',' << format15(rate / total) << '\n';
      }
      first = false;
    }
  }
  if (json) os << "\n]}\n";
  return kExitOk;
}

int cmd_simulate(const std::vector<std::string>& args, Options opt, std::ostream& out) {
  if (opt.reps == 0) opt.reps = 1;
  const AlphaParams p = parse_alpha(opt.alpha_text);
  if (opt.n < 1) throw UsageError("--n must be at least 1");
  if (opt.reps < 1) throw UsageError("--reps must be at least 1");
  const bool with_sites = opt.theta != 0.0;
  if (with_sites && !(opt.theta > 0.0)) throw UsageError("--theta must be positive");
  const std::uint64_t seed = parse_seed(opt.seed_text);
  const OutputHeader header = make_header(args, opt, p, seed);
  const Model model(p);

  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  const bool json = opt.format == "json";
  if (json) {
    os << "{";
    json_header(os, header);
    os << ", \"rows\": [";
  } else {
    write_comment_header(os, header);
    os << (with_sites ? "replicate,L_n,tau_n,S_n\n" : "replicate,L_n,tau_n\n");
  }
  for (std::int64_t i = 0; i < opt.reps; ++i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    const LengthSample s = simulate_length(opt.n, stream, model);
    std::int64_t sites = 0;
    if (with_sites) sites = segregating_sites(s.length, opt.theta, stream);
    if (json) {
      os << (i ? ",\n  " : "\n  ") << "{\"replicate\": " << i
         << ", \"L_n\": " << format_real(s.length) << ", \"tau_n\": " << s.tau;
      if (with_sites) os << ", \"S_n\": " << sites;
      os << "}";
    } else {
      os << i << ',' << format_real(s.length) << ',' << s.tau;
      if (with_sites) os << ',' << sites;
      os << '\n';
    }
  }
  if (json) os << "\n]}\n";

  if (!opt.path_out.empty()) {
    std::ofstream path_file(opt.path_out);
    if (!path_file) throw UsageError("cannot open path output file: " + opt.path_out);
    RandomStream stream(seed, 0);
    write_path_csv(path_file, simulate_path(opt.n, stream, model), seed, 0, p);
  }
  return kExitOk;
}

int cmd_cpp_window(const std::vector<std::string>& args, Options opt, std::ostream& out) {
  if (opt.reps == 0) opt.reps = 1;
  const AlphaParams p = parse_alpha(opt.alpha_text);
  if (opt.reps < 1) throw UsageError("--reps must be at least 1");
  if (opt.a < 2 || opt.b < opt.a) throw UsageError("need 2 <= --a <= --b");
  const std::int64_t start_n = opt.start_n > 0 ? opt.start_n : default_start_n(opt.b);
  if (start_n <= opt.b) throw UsageError("--start-n must exceed --b");
  const std::uint64_t seed = parse_seed(opt.seed_text);
  const OutputHeader header = make_header(args, opt, p, seed);
  const Model model(p);

  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  const bool json = opt.format == "json";
  if (json) {
    os << "{";
    json_header(os, header);
    os << ", \"window\": [" << opt.a << ", " << opt.b << "], \"start_n\": " << start_n
       << ", \"replicates\": [";
  } else {
    write_comment_header(os, header);
    os << "# window=[" << opt.a << "," << opt.b << "] start_n=" << start_n << '\n';
    os << "replicate,atom\n";
  }
  for (std::int64_t i = 0; i < opt.reps; ++i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    const IntegerPointProcess pp = cpp_infinity_window(opt.a, opt.b, start_n, stream, model);
    if (json) {
      os << (i ? ",\n  " : "\n  ") << "{\"replicate\": " << i << ", \"atoms\": [";
      for (std::size_t j = 0; j < pp.atoms.size(); ++j) os << (j ? ", " : "") << pp.atoms[j];
      os << "]}";
    } else {
      for (const auto atom : pp.atoms) os << i << ',' << atom << '\n';
    }
  }
  if (json) os << "\n]}\n";
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& args, const Options& opt, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> ids;
  if (opt.experiment == "all") {
    for (const auto& info : experiment_registry()) ids.push_back(info.id);
  } else if (is_registered_experiment(opt.experiment)) {
    ids.push_back(opt.experiment);
  } else {
    throw UsageError("unknown experiment: " + opt.experiment);
  }

  ExperimentSpec base;
  if (!opt.alpha_text.empty()) base.alpha = parse_alpha(opt.alpha_text);
  if (opt.n != 0) base.n = opt.n;
  if (opt.reps != 0) base.replicates = opt.reps;
  if (opt.theta != 0.0) base.theta = opt.theta;
  base.seed = parse_seed(opt.seed_text);
  if (opt.threads < 1) throw UsageError("--threads must be at least 1");
  base.threads = opt.threads;
  base.thresholds = parse_thresholds(opt.thresholds);
  base.keep_raw = !opt.raw_out_path.empty();
  const OutputHeader header = make_header(args, opt, base.alpha, base.seed);

  std::vector<ExperimentReport> reports;
  for (const auto& id : ids) {
    ExperimentSpec spec = base;
    spec.id = id;
    // Threshold names are per experiment, so "all" runs with the defaults.
    if (ids.size() > 1) spec.thresholds.clear();
    reports.push_back(run_experiment(spec));
    const auto& r = reports.back();
    err << (r.pass ? "PASS " : "FAIL ") << r.experiment_id << " ("
        << format15(r.runtime_seconds) << " s)\n";
  }
  if (ids.size() > 1 && !base.thresholds.empty()) {
    err << "note: --threshold is applied only to single experiments\n";
  }

  Sink sink(opt.out_path, out);
  std::ostream& os = sink.get();
  if (opt.format == "json") {
    write_reports_json(os, header, reports);
  } else {
    write_comment_header(os, header);
    write_checks_csv(os, reports);
  }
  if (!opt.raw_out_path.empty()) {
    std::ofstream raw(opt.raw_out_path);
    if (!raw) throw UsageError("cannot open raw output file: " + opt.raw_out_path);
    write_comment_header(raw, header);
    for (const auto& r : reports) {
      if (reports.size() > 1) raw << "# experiment: " << r.experiment_id << '\n';
      write_raw_csv(raw, r);
    }
  }
  const bool all_pass =
      std::all_of(reports.begin(), reports.end(), [](const ExperimentReport& r) { return r.pass; });
  return all_pass ? kExitOk : kExitFailed;
}

}  // namespace

AlphaParams parse_alpha(const std::string& text) {
  if (text == "golden") return make_alpha_params(AlphaTag::golden);
  if (text == "sqrt2") return make_alpha_params(AlphaTag::sqrt2);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid alpha: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("invalid alpha: '" + text + "'");
  return make_alpha_params(value);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beta(2-alpha, alpha)-coalescent simulation and verification", "betacoal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(BETACOAL_VERSION));
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed_text, "64-bit seed (default 0xC0A1E5CE)");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", opt.out_path, "Output path (default: standard output)");
  };

  auto* rates = app.add_subcommand("rates", "Merge rates and jump probabilities for m <= M");
  rates->add_option("--alpha", opt.alpha_text, "Alpha in (1,2), or golden / sqrt2")->required();
  rates->add_option("--m", opt.m, "Largest block count")->required();
  common(rates);

  auto* simulate = app.add_subcommand("simulate", "Per-replicate L_n, tau_n and S_n");
  simulate->add_option("--alpha", opt.alpha_text, "Alpha in (1,2), or golden / sqrt2")->required();
  simulate->add_option("--n", opt.n, "Sample size")->required();
  simulate->add_option("--reps", opt.reps, "Replicates (default 1)");
  simulate->add_option("--theta", opt.theta, "Mutation rate; adds S_n");
  simulate->add_option("--path-out", opt.path_out, "Write the path of replicate 0 here");
  common(simulate);

  auto* window = app.add_subcommand("cpp-window", "Atoms of the point process from infinity");
  window->add_option("--alpha", opt.alpha_text, "Alpha in (1,2), or golden / sqrt2")->required();
  window->add_option("--a", opt.a, "Window start (default 2)");
  window->add_option("--b", opt.b, "Window end")->required();
  window->add_option("--start-n", opt.start_n, "Starting block count (default 100 b)");
  window->add_option("--reps", opt.reps, "Replicates (default 1)");
  common(window);

  auto* verify = app.add_subcommand("verify", "Run a registered experiment, or all of them");
  verify->add_option("experiment", opt.experiment, "Experiment id or 'all'")->required();
  verify->add_option("--alpha", opt.alpha_text, "Alpha override");
  verify->add_option("--n", opt.n, "Size override");
  verify->add_option("--reps", opt.reps, "Replicate override");
  verify->add_option("--theta", opt.theta, "Mutation rate override");
  verify->add_option("--threads", opt.threads, "Worker threads; results do not depend on it")
      ->default_val(1);
  verify->add_option("--threshold", opt.thresholds, "Threshold override name=value");
  verify->add_option("--raw-out", opt.raw_out_path, "CSV of raw replicate statistics");
  common(verify);
  opt.format = "csv";

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (verify->parsed() && verify->count("--format") == 0) opt.format = "json";

  try {
    if (rates->parsed()) return cmd_rates(args, opt, out);
    if (simulate->parsed()) return cmd_simulate(args, opt, out);
    if (window->parsed()) return cmd_cpp_window(args, opt, out);
    return cmd_verify(args, opt, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace betacoal
