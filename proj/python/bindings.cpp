#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "maxent/charge_distribution.hpp"
#include "maxent/cli.hpp"
#include "maxent/ensemble.hpp"
#include "maxent/entropy_analytics.hpp"
#include "maxent/fock_space.hpp"
#include "maxent/sampler.hpp"
#include "maxent/scramble.hpp"

namespace py = pybind11;
using namespace maxent;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> values) {
  py::array_t<T> out(static_cast<py::ssize_t>(values.size()));
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

PureState as_state(py::array_t<Complex, py::array::c_style | py::array::forcecast> amps, int n) {
  return {n, std::vector<Complex>(amps.data(), amps.data() + amps.size())};
}

py::dict term_dict(const EntropyTerm& t) {
  py::dict d;
  d["value"] = t.value;
  d["method"] = std::string(to_string(t.method));
  d["included"] = t.included;
  return d;
}

py::dict report_dict(const EntropyReport& r) {
  py::dict d;
  d["evaluated_qubits"] = r.evaluated_qubits;
  d["s_thermal"] = term_dict(r.s_thermal);
  d["delta_s_average"] = term_dict(r.delta_s_average);
  d["page_term"] = term_dict(r.page_term);
  d["wedge_term"] = term_dict(r.wedge_term);
  d["erfc_term"] = term_dict(r.erfc_term);
  d["wedge_asymptotic"] = term_dict(r.wedge_asymptotic);
  d["erfc_asymptotic"] = term_dict(r.erfc_asymptotic);
  d["total"] = r.total();
  d["average_state"] = r.average_state();
  return d;
}

ScrambleSpec parse_mode(const std::string& mode, std::uint64_t seed) {
  ScrambleSpec spec;
  spec.seed = seed;
  if (mode == "haar") return spec;
  if (mode == "haar-full") {
    spec.materialize_unitaries = true;
    return spec;
  }
  if (mode.rfind("brickwork:", 0) == 0) {
    spec.mode = ScrambleMode::kBrickwork;
    spec.steps = std::stoi(mode.substr(10));
    return spec;
  }
  throw std::invalid_argument("mode must be haar, haar-full or brickwork:<steps>");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximum-entropy pure-state ensembles with a conserved U(1) charge";

  py::class_<SpectralDensity>(m, "SpectralDensity")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &SpectralDensity::n)
      .def_property_readonly("big_gamma", &SpectralDensity::big_gamma)
      .def("omega", &SpectralDensity::omega, py::arg("k"))
      .def("log_omega", &SpectralDensity::log_omega, py::arg("k"))
      .def("table", [](const SpectralDensity& s) {
        std::vector<double> w(static_cast<std::size_t>(s.n()) + 1);
        for (int k = 0; k <= s.n(); ++k) w[k] = s.omega(k);
        return to_array<double>(w);
      });

  py::class_<ChargeDistribution>(m, "ChargeDistribution")
      .def_property_readonly("n", &ChargeDistribution::n)
      .def("table", [](const ChargeDistribution& p) { return to_array(p.table()); })
      .def("mean_charge", &ChargeDistribution::mean_charge)
      .def("charge_variance", &ChargeDistribution::charge_variance)
      .def("describe", [](const ChargeDistribution& p) { return describe(p.kind()); });

  m.def("gaussian", [](const SpectralDensity& s, double center, double width) {
    return discretize(GaussianKind{center, width}, s);
  }, py::arg("spectral"), py::arg("center"), py::arg("width"));
  m.def("microcanonical", [](const SpectralDensity& s, double q) {
    return discretize(MicrocanonicalKind{ChargeValue::from_q(q, s.n())}, s);
  }, py::arg("spectral"), py::arg("q"));
  m.def("flat", [](const SpectralDensity& s) { return discretize(FlatKind{}, s); });
  m.def("cat_product", [](const SpectralDensity& s, int blocks, int block_size) {
    return discretize(CatProductKind{blocks, block_size}, s);
  }, py::arg("spectral"), py::arg("blocks"), py::arg("block_size"));
  m.def("tabulated", [](const SpectralDensity& s, std::vector<double> weights) {
    return discretize(TabulatedKind{std::move(weights)}, s);
  }, py::arg("spectral"), py::arg("weights"));

  m.def("induced_subsystem_distribution",
        [](const ChargeDistribution& p, const SpectralDensity& s, int n_a) {
          const auto p_a = induced_subsystem_distribution(p, s, SystemPartition(s.n(), n_a));
          return to_array(p_a.table());
        },
        py::arg("p"), py::arg("spectral"), py::arg("n_a"));
  m.def("input_information", &input_information, py::arg("p"), py::arg("spectral"));
  m.def("ensemble_entropy", [](const ChargeDistribution& p, const SpectralDensity& s) {
    return ensemble_entropy(build_ensemble(p, s));
  }, py::arg("p"), py::arg("spectral"));
  m.def("ensemble_rho", [](const ChargeDistribution& p, const SpectralDensity& s) {
    return to_array(build_ensemble(p, s).rho_table());
  }, py::arg("p"), py::arg("spectral"));

  m.def("delta_s_gaussian_closed_form", [](double n_a, double delta, double kappa) {
    return delta_s_gaussian_closed_form({n_a, delta, kappa});
  }, py::arg("n_a"), py::arg("delta"), py::arg("kappa") = 0.0);
  m.def("delta_s_average_exact", [](const ChargeDistribution& p, const SpectralDensity& s, int n_a) {
    const auto p_a = induced_subsystem_distribution(p, s, SystemPartition(s.n(), n_a));
    return delta_s_average_exact(p_a, SpectralDensity(n_a));
  }, py::arg("p"), py::arg("spectral"), py::arg("n_a"));
  m.def("average_entropy_report", [](const ChargeDistribution& p, const SpectralDensity& s, int n_a,
                                     bool include_page) {
    return report_dict(average_entropy_report(p, s, SystemPartition(s.n(), n_a), include_page));
  }, py::arg("p"), py::arg("spectral"), py::arg("n_a"), py::arg("include_page") = false);
  m.def("microcanonical_entropy_with_fluctuations", [](int n, int n_a, double q) {
    const SpectralDensity s(n);
    return report_dict(microcanonical_entropy_with_fluctuations(ChargeValue::from_q(q, n),
                                                                SystemPartition(n, n_a), s));
  }, py::arg("n"), py::arg("n_a"), py::arg("q"));
  m.def("page_value", [](int n, int n_a) { return page_value(SystemPartition(n, n_a)); },
        py::arg("n"), py::arg("n_a"));
  m.def("narayana", &narayana, py::arg("r"), py::arg("k"));
  m.def("wedge_correction", &wedge_correction, py::arg("q_bar"), py::arg("n"), py::arg("gamma") = 0.5);
  m.def("erfc_correction", &erfc_correction, py::arg("q_bar"), py::arg("n"), py::arg("gamma") = 0.5);

  m.def("sample_state", [](const ChargeDistribution& p, const SpectralDensity& s, std::uint64_t seed) {
    const auto state = sample_state(build_ensemble(p, s), seed);
    return to_array(state.amplitudes());
  }, py::arg("p"), py::arg("spectral"), py::arg("seed"));
  m.def("entanglement_entropy", [](py::array_t<Complex, py::array::c_style | py::array::forcecast> amps,
                                   int n, int n_a) {
    return entanglement_entropy(as_state(std::move(amps), n), SystemPartition(n, n_a));
  }, py::arg("amplitudes"), py::arg("n"), py::arg("n_a"));
  m.def("monte_carlo_entropy", [](const ChargeDistribution& p, const SpectralDensity& s, int n_a,
                                  std::size_t samples, std::uint64_t seed, unsigned workers) {
    const auto ensemble = build_ensemble(p, s);
    McEstimate est;
    {
      py::gil_scoped_release release;
      est = monte_carlo_entropy(ensemble, SystemPartition(s.n(), n_a), samples, seed, workers);
    }
    py::dict d;
    d["mean"] = est.mean;
    d["stderr"] = est.standard_error;
    d["stddev"] = est.stddev;
    d["samples"] = est.samples;
    d["seed"] = est.seed;
    d["values"] = to_array<double>(est.values);
    return d;
  }, py::arg("p"), py::arg("spectral"), py::arg("n_a"), py::arg("samples"), py::arg("seed"),
     py::arg("workers") = 0);

  m.def("cat_product_state", [](int blocks, int block_size) {
    return to_array(cat_product_state({blocks, block_size}).amplitudes());
  }, py::arg("blocks"), py::arg("block_size"));
  m.def("scramble", [](py::array_t<Complex, py::array::c_style | py::array::forcecast> amps, int n,
                       const std::string& mode, std::uint64_t seed) {
    return to_array(scramble(as_state(std::move(amps), n), parse_mode(mode, seed)).amplitudes());
  }, py::arg("amplitudes"), py::arg("n"), py::arg("mode") = "haar", py::arg("seed") = 0);
  m.def("charge_table", [](py::array_t<Complex, py::array::c_style | py::array::forcecast> amps, int n) {
    return to_array<double>(measure_charge_distribution(as_state(std::move(amps), n)));
  }, py::arg("amplitudes"), py::arg("n"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));

  m.attr("__version__") = cli::kToolVersion;
}
