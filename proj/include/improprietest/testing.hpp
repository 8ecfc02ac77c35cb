#pragma once

#include <cstdint>
#include <string>

#include "improprietest/augmented.hpp"
#include "improprietest/models.hpp"
#include "improprietest/wilks.hpp"

namespace improp {

enum class Statistic { glrt, roy };

enum class Method {
  exact_mc,
  lognormal,
  adjusted_bartlett,
  bartlett,
  tracy_widom,
};

const char* to_string(Statistic s);
const char* to_string(Method m);
Statistic statistic_from_string(const std::string& name);
Method method_from_string(const std::string& name);

struct TestConfig {
  double alpha = 0.01;
  Statistic statistic = Statistic::glrt;
  Method method = Method::adjusted_bartlett;
  int mc_count = 100000;            // exact_mc only
  std::uint64_t mc_seed = 0x1a2b3c4d5e6f7788ull;

  // throws on alpha outside (0,1) or an incompatible statistic/method pair
  void validate() const;
};

struct TestReport {
  Statistic statistic;
  Method method;
  double alpha;
  double statistic_value;
  double threshold;
  double p_value;
  bool reject_h0;
  bool saturated;  // statistic hit the boundary of its range
  int n_dim;
  int m_obs;
  double gamma;

  std::string to_json() const;  // stable versioned shape
};

// 1-alpha null quantile of the configured statistic
double calibrate_threshold(const TestConfig& config, const RegimeParams& regime);

TestReport run_test(const ImproprietySpectrum& spectrum,
                    const TestConfig& config, const RegimeParams& regime);

struct PowerEstimate {
  double power;
  double ci_halfwidth;  // 95% binomial
};

// Monte-Carlo rejection frequency; the threshold is calibrated once and
// reused.  Deterministic for a fixed master seed regardless of thread count
// (per-replicate derived streams).
PowerEstimate power_estimate(const ModelSpec& model, const TestConfig& config,
                             int replicates, std::uint64_t master_seed,
                             int threads = 1);

}  // namespace improp
