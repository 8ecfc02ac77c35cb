// Python face of the library: the main pipeline operations, the null
// calibrations, and the synthetic models. Matrices cross as numpy arrays
// via pybind11's Eigen support.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "improprietest/augmented.hpp"
#include "improprietest/bulk_law.hpp"
#include "improprietest/csv.hpp"
#include "improprietest/experiments.hpp"
#include "improprietest/models.hpp"
#include "improprietest/roy.hpp"
#include "improprietest/spike.hpp"
#include "improprietest/testing.hpp"
#include "improprietest/tracy_widom.hpp"
#include "improprietest/version.hpp"
#include "improprietest/wilks.hpp"

namespace py = pybind11;
using namespace improp;

namespace {

AugmentedSample sample_from_array(const Eigen::MatrixXd& data) {
  if (data.cols() % 2 != 0)
    throw std::invalid_argument("data must have 2N columns ([u, v])");
  return AugmentedSample(static_cast<int>(data.cols() / 2), data);
}

TestConfig config_from_args(double alpha, const std::string& statistic,
                            const std::string& method, int mc_count,
                            std::uint64_t mc_seed) {
  TestConfig c;
  c.alpha = alpha;
  c.statistic = statistic_from_string(statistic);
  c.method = method_from_string(method);
  c.mc_count = mc_count;
  c.mc_seed = mc_seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = IMPROPRIETEST_VERSION;

  py::class_<ImproprietySpectrum>(m, "ImproprietySpectrum")
      .def_readonly("coeffs", &ImproprietySpectrum::coeffs)
      .def_readonly("squared", &ImproprietySpectrum::squared);

  py::class_<RegimeParams>(m, "RegimeParams")
      .def(py::init<int, int>(), py::arg("n_dim"), py::arg("m_obs"))
      .def_readonly("n_dim", &RegimeParams::n_dim)
      .def_readonly("m_obs", &RegimeParams::m_obs)
      .def_readonly("gamma", &RegimeParams::gamma);

  m.def(
      "sample_spectrum",
      [](const Eigen::MatrixXd& data) {
        return sample_spectrum(sample_from_array(data));
      },
      py::arg("data"),
      "impropriety coefficients of an M x 2N real data matrix [u, v]");

  m.def(
      "glrt_statistic",
      [](const ImproprietySpectrum& s) {
        auto g = glrt_statistic(s);
        return py::make_tuple(g.T_prime, g.saturated);
      },
      py::arg("spectrum"), "(T', saturated)");
  m.def(
      "roy_statistic",
      [](const ImproprietySpectrum& s) {
        auto r = roy_statistic(s);
        return py::make_tuple(r.W, r.saturated);
      },
      py::arg("spectrum"), "(W = logit(r1), saturated)");

  m.def(
      "run_test",
      [](const Eigen::MatrixXd& data, double alpha,
         const std::string& statistic, const std::string& method,
         int mc_count, std::uint64_t mc_seed) {
        AugmentedSample sample = sample_from_array(data);
        RegimeParams regime(sample.n_dim, sample.m_obs);
        TestConfig cfg =
            config_from_args(alpha, statistic, method, mc_count, mc_seed);
        TestReport rep = run_test(sample_spectrum(sample), cfg, regime);
        py::module_ json = py::module_::import("json");
        return json.attr("loads")(rep.to_json());
      },
      py::arg("data"), py::arg("alpha") = 0.01, py::arg("statistic") = "glrt",
      py::arg("method") = "adjusted_bartlett", py::arg("mc_count") = 100000,
      py::arg("mc_seed") = TestConfig().mc_seed,
      "full test on an M x 2N data matrix; returns the report as a dict");

  m.def(
      "calibrate_threshold",
      [](int n_dim, int m_obs, double alpha, const std::string& statistic,
         const std::string& method, int mc_count, std::uint64_t mc_seed) {
        return calibrate_threshold(
            config_from_args(alpha, statistic, method, mc_count, mc_seed),
            RegimeParams(n_dim, m_obs));
      },
      py::arg("n_dim"), py::arg("m_obs"), py::arg("alpha") = 0.01,
      py::arg("statistic") = "glrt", py::arg("method") = "adjusted_bartlett",
      py::arg("mc_count") = 100000,
      py::arg("mc_seed") = TestConfig().mc_seed);

  // null calibrations
  py::class_<GlrtNullParams>(m, "GlrtNullParams")
      .def_readonly("n_dim", &GlrtNullParams::n_dim)
      .def_readonly("m_obs", &GlrtNullParams::m_obs)
      .def_readonly("gamma", &GlrtNullParams::gamma)
      .def_readonly("m", &GlrtNullParams::m)
      .def_readonly("s", &GlrtNullParams::s)
      .def_readonly("q", &GlrtNullParams::q)
      .def_readonly("p", &GlrtNullParams::p)
      .def_readonly("alpha_shift", &GlrtNullParams::alpha_shift);
  m.def("glrt_clt_params", [](int n, int mm) {
    return glrt_clt_params(RegimeParams(n, mm));
  });

  py::class_<RoyNullParams>(m, "RoyNullParams")
      .def_readonly("psi", &RoyNullParams::psi)
      .def_readonly("phi", &RoyNullParams::phi)
      .def_readonly("mu", &RoyNullParams::mu)
      .def_readonly("sigma", &RoyNullParams::sigma)
      .def_readonly("near_degenerate", &RoyNullParams::near_degenerate);
  m.def("roy_params", &roy_params, py::arg("n_dim"), py::arg("m_obs"));

  m.def("tw1_cdf", &tw1_cdf, py::arg("x"));
  m.def("tw1_quantile", &tw1_quantile, py::arg("p"));

  m.def(
      "bulk_pdf",
      [](double gamma, double r) { return bulk_pdf(BulkLaw(gamma), r); },
      py::arg("gamma"), py::arg("r"));
  m.def(
      "bulk_cdf",
      [](double gamma, double r) { return bulk_cdf(BulkLaw(gamma), r); },
      py::arg("gamma"), py::arg("r"));
  m.def(
      "bulk_moments",
      [](double gamma) {
        auto mo = bulk_moments(BulkLaw(gamma));
        return py::make_tuple(mo.mean, mo.variance);
      },
      py::arg("gamma"));
  m.def(
      "bulk_edge",
      [](double gamma) { return BulkLaw(gamma).edge_c; }, py::arg("gamma"));

  m.def(
      "spike_map",
      [](double gamma, double lambda_sq) {
        SpikeMap map(gamma);
        auto lim = spike_map(map, lambda_sq);
        return py::make_tuple(lim.above_threshold, lim.limit);
      },
      py::arg("gamma"), py::arg("lambda_sq"),
      "(separates, a.s. limit of r1); rho_c = 1/(gamma-1)");
  m.def(
      "spike_rho_c", [](double gamma) { return SpikeMap(gamma).rho_c; },
      py::arg("gamma"));

  m.def(
      "sample_wilks_null",
      [](int n, int mm, int count, std::uint64_t seed) {
        RngStream rng(seed);
        return sample_wilks_null(n, mm, count, rng);
      },
      py::arg("n_dim"), py::arg("m_obs"), py::arg("count"), py::arg("seed"),
      "exact T' null draws via the beta-product representation");

  // synthetic models: draw a data matrix / read population truth
  m.def(
      "generate",
      [](const std::string& variant, int n, int mm, double theta,
         const std::vector<double>& p, std::uint64_t seed) {
        ModelSpec spec;
        if (variant == "proper")
          spec = ModelSpec::proper(n, mm);
        else if (variant == "equi")
          spec = ModelSpec::equi(n, mm, theta);
        else if (variant == "spiked")
          spec = ModelSpec::spiked(n, mm, theta);
        else if (variant == "mixed")
          spec = ModelSpec::mixed(n, mm, theta, p);
        else
          throw std::invalid_argument("unknown variant: " + variant);
        RngStream rng(seed);
        return generate(spec, rng).data;
      },
      py::arg("variant"), py::arg("n_dim"), py::arg("m_obs"),
      py::arg("theta") = 0.0, py::arg("p") = std::vector<double>{},
      py::arg("seed") = 1, "M x 2N draw from a synthetic model");

  m.def(
      "population_lambdas",
      [](const std::string& variant, int n, int mm, double theta,
         const std::vector<double>& p) {
        ModelSpec spec;
        if (variant == "proper")
          spec = ModelSpec::proper(n, mm);
        else if (variant == "equi")
          spec = ModelSpec::equi(n, mm, theta);
        else if (variant == "spiked")
          spec = ModelSpec::spiked(n, mm, theta);
        else if (variant == "mixed")
          spec = ModelSpec::mixed(n, mm, theta, p);
        else
          throw std::invalid_argument("unknown variant: " + variant);
        return population_truth(spec).lambdas;
      },
      py::arg("variant"), py::arg("n_dim"), py::arg("m_obs"),
      py::arg("theta") = 0.0, py::arg("p") = std::vector<double>{});

  m.def("theta_for_lambda",
        [](double lambda_sq, const std::string& variant, double p1) {
          ModelVariant v;
          if (variant == "equi")
            v = ModelVariant::equi_correlated;
          else if (variant == "spiked")
            v = ModelVariant::spiked;
          else if (variant == "mixed")
            v = ModelVariant::mixed_pca;
          else
            throw std::invalid_argument("unknown variant: " + variant);
          return theta_for_lambda(lambda_sq, v, p1);
        },
        py::arg("lambda_sq"), py::arg("variant"), py::arg("p1") = 1.0);

  m.def("load_csv",
        [](const std::string& path) { return load_csv(path).data; },
        py::arg("path"), "M x 2N matrix from a harness-layout CSV");

  m.def(
      "run_experiment",
      [](const std::string& config_json, int threads) {
        auto cfg = ExperimentConfig::from_json(config_json);
        auto table = run_experiment(cfg, threads);
        py::module_ json = py::module_::import("json");
        py::dict out;
        out["columns"] = table.columns;
        out["rows"] = table.rows;
        out["meta"] = json.attr("loads")(table.meta);
        return out;
      },
      py::arg("config_json"), py::arg("threads") = 1,
      "run a harness experiment from a JSON config string");

  m.def("experiment_names", [] { return ExperimentConfig::names(); });

  m.def("experiment_defaults", [](const std::string& name) {
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(ExperimentConfig::defaults_for(name).to_json());
  });
}
