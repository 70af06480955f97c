#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "betacoal/coalescent.hpp"
#include "betacoal/experiments.hpp"
#include "betacoal/limits.hpp"
#include "betacoal/numerics.hpp"
#include "betacoal/rates.hpp"
#include "betacoal/report.hpp"
#include "betacoal/sampling.hpp"
#include "betacoal/stats.hpp"

namespace py = pybind11;
using namespace betacoal;

namespace {

AlphaParams params_from(const py::object& alpha) {
  if (py::isinstance<py::str>(alpha)) {
    const auto text = alpha.cast<std::string>();
    if (text == "golden") return make_alpha_params(AlphaTag::golden);
    if (text == "sqrt2") return make_alpha_params(AlphaTag::sqrt2);
    throw py::value_error("alpha must be a number, 'golden' or 'sqrt2'");
  }
  return make_alpha_params(alpha.cast<double>());
}

py::dict params_dict(const AlphaParams& p) {
  py::dict d;
  d["alpha"] = p.alpha;
  d["gamma"] = p.gamma_const;
  d["c1"] = p.c1;
  d["c2"] = p.c2;
  d["c_l52"] = p.c_l52 ? py::cast(*p.c_l52) : py::none();
  d["d"] = p.d_norm;
  d["sigma_alpha"] = p.sigma_alpha;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Beta(2-alpha, alpha)-coalescent simulation and verification";
  m.attr("__version__") = BETACOAL_VERSION;
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  m.def("params", [](const py::object& a) { return params_dict(params_from(a)); }, py::arg("alpha"));

  m.def("merge_rate", [](std::int64_t mm, std::int64_t k, const py::object& a) {
    return merge_rate(mm, k, params_from(a));
  }, py::arg("m"), py::arg("k"), py::arg("alpha"));
  m.def("total_rate", [](std::int64_t mm, const py::object& a) {
    return total_rate(mm, params_from(a));
  }, py::arg("m"), py::arg("alpha"));
  m.def("jump_pmf", [](std::int64_t mm, const py::object& a) {
    return jump_law(mm, params_from(a)).pmf_table();
  }, py::arg("m"), py::arg("alpha"), "P(U = k) for k = 1..m-1, index 0 holding k = 1.");
  m.def("v_pmf", [](std::int64_t k, const py::object& a) { return v_pmf(k, params_from(a)); },
        py::arg("k"), py::arg("alpha"));
  m.def("v_tail", [](std::int64_t k, const py::object& a) { return v_tail(k, params_from(a)); },
        py::arg("k"), py::arg("alpha"));
  m.def("mismatch_probability", [](std::int64_t mm, const py::object& a) {
    return mismatch_probability(mm, params_from(a));
  }, py::arg("m"), py::arg("alpha"));

  m.def("simulate_path", [](std::int64_t n, const py::object& a, std::uint64_t seed, std::uint64_t stream) {
    const Model model(params_from(a));
    RandomStream s(seed, stream);
    const auto path = simulate_path(n, s, model);
    return py::make_tuple(path.states, path.times);
  }, py::arg("n"), py::arg("alpha"), py::arg("seed") = kDefaultSeed, py::arg("stream") = 0,
     "Returns (states, times) of one block-counting path.");
  m.def("simulate_lengths", [](std::int64_t n, const py::object& a, std::int64_t reps, std::uint64_t seed) {
    const Model model(params_from(a));
    std::vector<double> out;
    py::gil_scoped_release release;
    for (std::int64_t i = 0; i < reps; ++i) {
      RandomStream s(seed, static_cast<std::uint64_t>(i));
      out.push_back(simulate_length(n, s, model).length);
    }
    return out;
  }, py::arg("n"), py::arg("alpha"), py::arg("reps") = 1, py::arg("seed") = kDefaultSeed);
  m.def("expected_tree_length", [](std::int64_t n, const py::object& a) {
    return expected_tree_length(n, params_from(a));
  }, py::arg("n"), py::arg("alpha"));

  m.def("stable_samples", [](const py::object& a, std::int64_t count, std::uint64_t seed) {
    const AlphaParams p = params_from(a);
    RandomStream s(seed, 0);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& x : out) x = sample_stable(s, p);
    return out;
  }, py::arg("alpha"), py::arg("count"), py::arg("seed") = kDefaultSeed);

  m.def("ks_two_sample", [](const std::vector<double>& a, const std::vector<double>& b) {
    return ks_two_sample(a, b);
  }, py::arg("a"), py::arg("b"));
  m.def("hill_tail_index", [](const std::vector<double>& x, std::int64_t k, const std::string& side) {
    if (side != "left" && side != "right") throw py::value_error("side must be 'left' or 'right'");
    return hill_tail_index(x, k, side == "left" ? TailSide::left : TailSide::right);
  }, py::arg("sample"), py::arg("k"), py::arg("side") = "right");

  m.def("classify_regime", [](const py::object& a) {
    const auto r = classify_regime(params_from(a));
    py::dict d;
    d["length_case"] = static_cast<int>(r.theorem1_case);
    d["sites_case"] = static_cast<int>(r.corollary_case);
    d["length_scale_exponent"] = r.length_scale_exponent;
    d["sites_scale_exponent"] = r.sites_scale_exponent;
    return d;
  }, py::arg("alpha"));

  m.def("experiments", [] {
    std::vector<std::string> ids;
    for (const auto& info : experiment_registry()) ids.push_back(info.id);
    return ids;
  });
  m.def("run_experiment", [](const std::string& id, std::uint64_t seed, std::optional<std::int64_t> n,
                             std::optional<std::int64_t> reps, unsigned threads) {
    ExperimentSpec spec;
    spec.id = id;
    spec.seed = seed;
    spec.n = n;
    spec.replicates = reps;
    spec.threads = threads;
    ExperimentReport report;
    {
      py::gil_scoped_release release;
      report = run_experiment(spec);
    }
    std::ostringstream os;
    write_report_json(os, report);
    return os.str();
  }, py::arg("id"), py::arg("seed") = kDefaultSeed, py::arg("n") = py::none(),
     py::arg("reps") = py::none(), py::arg("threads") = 1,
     "Runs a registered experiment and returns its report as JSON text.");
}
