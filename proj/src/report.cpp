#include "betacoal/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace betacoal {

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_real(double x) {
  if (!std::isfinite(x)) return "null";
  return format_real(x);
}

const double* find_value(const std::vector<std::pair<std::string, double>>& values,
                         const std::string& name) {
  for (const auto& [key, value] : values) {
    if (key == name) return &value;
  }
  return nullptr;
}

void upsert(std::vector<std::pair<std::string, double>>& values, const std::string& name,
            double value) {
  for (auto& [key, existing] : values) {
    if (key == name) {
      existing = value;
      return;
    }
  }
  values.emplace_back(name, value);
}

void write_named_values(std::ostream& out, const std::vector<std::pair<std::string, double>>& values,
                        const std::string& pad) {
  out << "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i ? "," : "") << "\n" << pad << "  " << json_string(values[i].first) << ": "
        << json_real(values[i].second);
  }
  out << (values.empty() ? "}" : "\n" + pad + "}");
}

}  // namespace

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::less:
      return "<";
    case CompareOp::less_equal:
      return "<=";
    case CompareOp::greater_equal:
      return ">=";
    case CompareOp::equal:
      return "==";
  }
  return "?";
}

bool compare(double statistic, CompareOp op, double threshold) {
  switch (op) {
    case CompareOp::less:
      return statistic < threshold;
    case CompareOp::less_equal:
      return statistic <= threshold;
    case CompareOp::greater_equal:
      return statistic >= threshold;
    case CompareOp::equal:
      return statistic == threshold;
  }
  return false;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ExperimentReport::add_statistic(const std::string& name, double value) {
  upsert(statistics, name, value);
}

void ExperimentReport::add_threshold(const std::string& name, double value) {
  upsert(thresholds, name, value);
}

double ExperimentReport::statistic(const std::string& name) const {
  const double* v = find_value(statistics, name);
  if (!v) throw std::out_of_range("unknown statistic: " + name);
  return *v;
}

double ExperimentReport::threshold(const std::string& name) const {
  const double* v = find_value(thresholds, name);
  if (!v) throw std::out_of_range("unknown threshold: " + name);
  return *v;
}

void ExperimentReport::add_check(const std::string& name, const std::string& statistic_name,
                                 CompareOp op, const std::string& threshold_name) {
  checks.push_back(Check{name, statistic_name, op, threshold_name, false});
}

void ExperimentReport::evaluate(const std::map<std::string, double>& overrides) {
  for (const auto& [name, value] : overrides) {
    if (!find_value(thresholds, name)) {
      throw std::invalid_argument("experiment " + experiment_id + " has no threshold '" + name +
                                  "'");
    }
    add_threshold(name, value);
  }
  pass = true;
  for (auto& check : checks) {
    const double s = statistic(check.statistic);
    check.pass = std::isfinite(s) && compare(s, check.op, threshold(check.threshold));
    pass = pass && check.pass;
  }
}

void write_comment_header(std::ostream& out, const OutputHeader& header) {
  out << "# betacoal " << header.version << " | command: " << header.command << " | alpha: ";
  if (!header.alpha_text.empty()) {
    out << header.alpha_text;
  } else if (header.alpha) {
    out << format_real(*header.alpha);
  } else {
    out << "grid";
  }
  out << " | seed: " << header.seed << '\n';
}

void write_report_json(std::ostream& out, const ExperimentReport& report, int indent,
                       bool include_runtime) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string in = pad + "  ";
  out << "{\n";
  out << in << "\"experiment_id\": " << json_string(report.experiment_id) << ",\n";
  out << in << "\"alpha\": " << (report.alpha ? json_real(*report.alpha) : "null") << ",\n";
  out << in << "\"seed\": " << report.seed << ",\n";
  out << in << "\"n\": " << report.n << ",\n";
  out << in << "\"replicates\": " << report.replicates << ",\n";
  out << in << "\"statistics\": ";
  write_named_values(out, report.statistics, in);
  out << ",\n" << in << "\"thresholds\": ";
  write_named_values(out, report.thresholds, in);
  out << ",\n" << in << "\"verdict\": [";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const Check& c = report.checks[i];
    out << (i ? "," : "") << "\n"
        << in << "  {\"check\": " << json_string(c.name)
        << ", \"statistic\": " << json_string(c.statistic) << ", \"op\": " << json_string(to_string(c.op))
        << ", \"threshold\": " << json_string(c.threshold)
        << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
  }
  out << (report.checks.empty() ? "]" : "\n" + in + "]") << ",\n";
  out << in << "\"notes\": [";
  for (std::size_t i = 0; i < report.notes.size(); ++i) {
    out << (i ? ", " : "") << json_string(report.notes[i]);
  }
  out << "],\n";
  out << in << "\"pass\": " << (report.pass ? "true" : "false");
  if (include_runtime) out << ",\n" << in << "\"runtime_seconds\": " << json_real(report.runtime_seconds);
  out << "\n" << pad << "}";
}

void write_reports_json(std::ostream& out, const OutputHeader& header,
                        const std::vector<ExperimentReport>& reports, bool include_runtime) {
  bool all = true;
  for (const auto& r : reports) all = all && r.pass;
  out << "{\n  \"header\": {\"version\": " << json_string(header.version)
      << ", \"command\": " << json_string(header.command) << ", \"alpha\": ";
  if (!header.alpha_text.empty()) {
    out << json_string(header.alpha_text);
  } else {
    out << (header.alpha ? json_real(*header.alpha) : "null");
  }
  out << ", \"seed\": " << header.seed << "},\n  \"reports\": [";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_report_json(out, reports[i], 4, include_runtime);
  }
  out << (reports.empty() ? "]" : "\n  ]") << ",\n  \"pass\": " << (all ? "true" : "false")
      << "\n}\n";
}

void write_checks_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "experiment,check,statistic,value,op,threshold,limit,pass\n";
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      out << r.experiment_id << ',' << c.name << ',' << c.statistic << ','
          << format_real(r.statistic(c.statistic)) << ',' << to_string(c.op) << ',' << c.threshold
          << ',' << format_real(r.threshold(c.threshold)) << ',' << (c.pass ? "pass" : "fail")
          << '\n';
    }
  }
}

void write_raw_csv(std::ostream& out, const ExperimentReport& report) {
  out << "replicate,stat_name,value\n";
  for (const auto& row : report.raw) {
    out << row.replicate << ',' << row.stat_name << ',' << format_real(row.value) << '\n';
  }
}

}  // namespace betacoal
