#include "improprietest/testing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "json.hpp"

#include "improprietest/roy.hpp"
#include "improprietest/version.hpp"

namespace improp {

const char* to_string(Statistic s) {
  return s == Statistic::glrt ? "glrt" : "roy";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::exact_mc: return "exact_mc";
    case Method::lognormal: return "lognormal";
    case Method::adjusted_bartlett: return "adjusted_bartlett";
    case Method::bartlett: return "bartlett";
    case Method::tracy_widom: return "tracy_widom";
  }
  return "?";
}

namespace {
std::string normalized(std::string name) {
  for (char& c : name)
    if (c == '-') c = '_';
  return name;
}
}  // namespace

Statistic statistic_from_string(const std::string& name) {
  std::string n = normalized(name);
  if (n == "glrt") return Statistic::glrt;
  if (n == "roy") return Statistic::roy;
  throw std::invalid_argument("unknown statistic: " + name);
}

Method method_from_string(const std::string& name) {
  std::string n = normalized(name);
  if (n == "exact_mc") return Method::exact_mc;
  if (n == "lognormal") return Method::lognormal;
  if (n == "adjusted_bartlett") return Method::adjusted_bartlett;
  if (n == "bartlett") return Method::bartlett;
  if (n == "tracy_widom") return Method::tracy_widom;
  throw std::invalid_argument("unknown method: " + name);
}

void TestConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("TestConfig: alpha must be in (0, 1)");
  bool ok = false;
  switch (method) {
    case Method::exact_mc:
      ok = true;
      if (mc_count < 100)
        throw std::invalid_argument("TestConfig: exact_mc needs >= 100 draws");
      break;
    case Method::lognormal:
    case Method::adjusted_bartlett:
    case Method::bartlett:
      ok = (statistic == Statistic::glrt);
      break;
    case Method::tracy_widom:
      ok = (statistic == Statistic::roy);
      break;
  }
  if (!ok)
    throw std::invalid_argument(
        std::string("TestConfig: method ") + to_string(method) +
        " is incompatible with statistic " + to_string(statistic));
}

namespace {

GlrtMethod as_glrt_method(Method method) {
  switch (method) {
    case Method::lognormal: return GlrtMethod::lognormal;
    case Method::adjusted_bartlett: return GlrtMethod::adjusted_bartlett;
    case Method::bartlett: return GlrtMethod::bartlett;
    default: throw std::logic_error("not a GLRT calibration method");
  }
}

GlrtNullParams glrt_params_for(const RegimeParams& regime, Method method) {
  if (method == Method::bartlett) {
    // the classical approximation needs only (N, M)
    GlrtNullParams p;
    p.n_dim = regime.n_dim;
    p.m_obs = regime.m_obs;
    p.gamma = regime.gamma;
    p.m = p.s = p.q = p.p = p.alpha_shift =
        std::numeric_limits<double>::quiet_NaN();
    return p;
  }
  return glrt_clt_params(regime);
}

// Null draws for exact_mc calibration: the beta-product representation for
// the GLRT, the full eigen pipeline for Roy (no cheap sampler exists).
std::vector<double> mc_null_draws(Statistic statistic,
                                  const RegimeParams& regime, int count,
                                  std::uint64_t seed) {
  if (statistic == Statistic::glrt) {
    RngStream rng(seed);
    return sample_wilks_null(regime.n_dim, regime.m_obs, count, rng);
  }
  const double dim = 2.0 * regime.n_dim;
  const double cap_units = 1e12;  // 1e6 eigensolves at 2N = 100
  double units = count * dim * dim * dim;
  int effective = count;
  if (units > cap_units) {
    effective = std::max(100, static_cast<int>(cap_units / (dim * dim * dim)));
    std::fprintf(stderr,
                 "improprietest: exact_mc Roy calibration capped at %d "
                 "replicates (requested %d; O(count N^3) budget)\n",
                 effective, count);
  }
  std::vector<double> out(effective);
  for (int k = 0; k < effective; ++k) {
    RngStream rep = RngStream::derived(seed, k);
    Eigen::MatrixXd data(regime.m_obs, 2 * regime.n_dim);
    for (int i = 0; i < regime.m_obs; ++i)
      for (int j = 0; j < 2 * regime.n_dim; ++j) data(i, j) = rep.normal();
    out[k] = roy_statistic(sample_spectrum(AugmentedSample(regime.n_dim, data)))
                 .W;
  }
  return out;
}

double mc_threshold(std::vector<double> draws, double alpha) {
  std::sort(draws.begin(), draws.end());
  const std::size_t n = draws.size();
  auto rank = static_cast<std::size_t>(
      std::ceil((n + 1.0) * (1.0 - alpha) - 1e-12));
  if (rank > n) {
    std::fprintf(stderr,
                 "improprietest: exact_mc draw count too small for alpha "
                 "= %g; threshold is +inf (test never rejects)\n",
                 alpha);
    return std::numeric_limits<double>::infinity();
  }
  return draws[rank - 1];
}

bool rejects(double stat, double threshold, Method method) {
  // exact_mc: strict exceedance matches the (k+1)/(n+1) p-value exactly;
  // continuous calibrations use the closed rejection region
  return method == Method::exact_mc ? stat > threshold : stat >= threshold;
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "+inf" : "-inf";
}

}  // namespace

double calibrate_threshold(const TestConfig& config,
                           const RegimeParams& regime) {
  config.validate();
  switch (config.method) {
    case Method::exact_mc:
      return mc_threshold(
          mc_null_draws(config.statistic, regime, config.mc_count,
                        config.mc_seed),
          config.alpha);
    case Method::lognormal:
    case Method::adjusted_bartlett:
    case Method::bartlett:
      return glrt_null_quantile(glrt_params_for(regime, config.method),
                                1.0 - config.alpha,
                                as_glrt_method(config.method));
    case Method::tracy_widom:
      return roy_null_quantile(roy_params(regime.n_dim, regime.m_obs),
                               1.0 - config.alpha);
  }
  throw std::logic_error("calibrate_threshold: unknown method");
}

TestReport run_test(const ImproprietySpectrum& spectrum,
                    const TestConfig& config, const RegimeParams& regime) {
  config.validate();
  if (spectrum.coeffs.size() != static_cast<Eigen::Index>(regime.n_dim))
    throw std::invalid_argument("run_test: spectrum size does not match N");

  TestReport rep;
  rep.statistic = config.statistic;
  rep.method = config.method;
  rep.alpha = config.alpha;
  rep.n_dim = regime.n_dim;
  rep.m_obs = regime.m_obs;
  rep.gamma = regime.gamma;

  if (config.statistic == Statistic::glrt) {
    auto g = glrt_statistic(spectrum);
    rep.statistic_value = g.T_prime;
    rep.saturated = g.saturated;
  } else {
    auto r = roy_statistic(spectrum);
    rep.statistic_value = r.W;
    rep.saturated = r.saturated;
  }

  if (config.method == Method::exact_mc) {
    auto draws = mc_null_draws(config.statistic, regime, config.mc_count,
                               config.mc_seed);
    std::size_t k = 0;
    for (double d : draws) k += (d >= rep.statistic_value);
    rep.p_value = (k + 1.0) / (draws.size() + 1.0);
    rep.threshold = mc_threshold(std::move(draws), config.alpha);
  } else if (config.statistic == Statistic::glrt) {
    auto params = glrt_params_for(regime, config.method);
    auto gm = as_glrt_method(config.method);
    rep.p_value = 1.0 - glrt_null_cdf(params, rep.statistic_value, gm);
    rep.threshold = glrt_null_quantile(params, 1.0 - config.alpha, gm);
  } else {
    auto params = roy_params(regime.n_dim, regime.m_obs);
    rep.p_value = 1.0 - roy_null_cdf(params, rep.statistic_value);
    rep.threshold = roy_null_quantile(params, 1.0 - config.alpha);
  }
  rep.reject_h0 = (rep.p_value <= config.alpha);
  return rep;
}

std::string TestReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "improprietest.test_report.v1";
  j["library_version"] = IMPROPRIETEST_VERSION;
  j["statistic"] = improp::to_string(statistic);
  j["method"] = improp::to_string(method);
  j["alpha"] = alpha;
  j["statistic_value"] = json_number(statistic_value);
  j["threshold"] = json_number(threshold);
  j["p_value"] = p_value;
  j["reject_h0"] = reject_h0;
  j["saturated"] = saturated;
  j["regime"] = {{"n_dim", n_dim}, {"m_obs", m_obs}, {"gamma", gamma}};
  return j.dump(2);
}

PowerEstimate power_estimate(const ModelSpec& model, const TestConfig& config,
                             int replicates, std::uint64_t master_seed,
                             int threads) {
  if (replicates < 100)
    throw std::invalid_argument("power_estimate: need >= 100 replicates");
  config.validate();
  RegimeParams regime(model.n_dim, model.m_obs);
  const double threshold = calibrate_threshold(config, regime);

  std::vector<unsigned char> rejected(replicates, 0);
  auto worker = [&](int lo, int hi) {
    for (int k = lo; k < hi; ++k) {
      RngStream rep = RngStream::derived(master_seed, k);
      auto spectrum = sample_spectrum(generate(model, rep));
      double stat = config.statistic == Statistic::glrt
                        ? glrt_statistic(spectrum).T_prime
                        : roy_statistic(spectrum).W;
      rejected[k] = rejects(stat, threshold, config.method) ? 1 : 0;
    }
  };
  int workers = std::max(1, threads);
  if (workers == 1) {
    worker(0, replicates);
  } else {
    std::vector<std::thread> pool;
    int chunk = (replicates + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int lo = w * chunk, hi = std::min(replicates, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  long hits = 0;
  for (unsigned char r : rejected) hits += r;
  double p = static_cast<double>(hits) / replicates;
  double ci = 1.96 * std::sqrt(p * (1.0 - p) / replicates);
  return {p, ci};
}

}  // namespace improp
