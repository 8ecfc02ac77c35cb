#pragma once

#include <vector>

#include "improprietest/rng.hpp"

namespace improp {

struct RegimeParams {
  int n_dim;
  int m_obs;
  double gamma;  // M/N, the library-wide finite-sample convention
  RegimeParams(int N, int M);
};

// Asymptotic null parameters for T' = -ln T: normal (m, s) from the CLT and
// the shifted-gamma correction (q, p, alpha_shift) derived from them.
struct GlrtNullParams {
  int n_dim;
  int m_obs;
  double gamma;
  double m;
  double s;
  double q;            // N(N+1)/2
  double p;            // sqrt(1/q)
  double alpha_shift;  // m - p q s
};

enum class GlrtMethod { lognormal, adjusted_bartlett, bartlett };

GlrtNullParams glrt_clt_params(const RegimeParams& regime);

double glrt_null_cdf(const GlrtNullParams& params, double t_prime,
                     GlrtMethod method);
double glrt_null_quantile(const GlrtNullParams& params, double prob,
                          GlrtMethod method);

struct ExactMoments {
  double mean;
  double variance;
};
// finite-sample moments of T' under H0 (digamma/trigamma sums)
ExactMoments exact_glrt_moments(int N, int M);

// exact null sampler: T' = -sum ln u_n, u_n ~ Beta((M-N-n+1)/2, (N+1)/2)
std::vector<double> sample_wilks_null(int N, int M, int count, RngStream& rng);
// the independent-real-CCA variant (second shape N/2 instead of (N+1)/2),
// kept only for the mismatch comparison
std::vector<double> sample_wilks_null_cca(int N, int M, int count,
                                          RngStream& rng);

// asymptotic mean under the CCA parameterization: m + ln((gamma-1)/gamma)
double cca_offset_mean(const GlrtNullParams& params);

}  // namespace improp
