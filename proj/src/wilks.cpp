#include "improprietest/wilks.hpp"

#include <cmath>
#include <stdexcept>

#include "improprietest/special_functions.hpp"

namespace improp {

RegimeParams::RegimeParams(int N, int M) : n_dim(N), m_obs(M) {
  if (N < 1 || M < 2 * N)
    throw std::invalid_argument("RegimeParams: need M >= 2N >= 2");
  gamma = static_cast<double>(M) / N;
}

GlrtNullParams glrt_clt_params(const RegimeParams& regime) {
  const double g = regime.gamma;
  const double M = regime.m_obs;
  if (!(g > 2.0)) throw std::domain_error("glrt_clt_params: CLT regime violated (gamma must exceed 2)");
  GlrtNullParams out;
  out.n_dim = regime.n_dim;
  out.m_obs = regime.m_obs;
  out.gamma = g;
  // log1p forms: the naive ratios collapse to 1 + O(1/gamma) and shed
  // precision that the M multiplier then amplifies
  out.m = M * (-std::log1p(-1.0 / g) +
               (g - 2.0) / g * std::log1p(-1.0 / (g - 1.0))) -
          0.5 * std::log1p(-2.0 / g);
  double s2 = 2.0 * (std::log1p(1.0 / (g * (g - 2.0))) +
                     1.0 / (M * (g - 2.0)));
  out.s = std::sqrt(s2);
  double n = regime.n_dim;
  out.q = n * (n + 1.0) / 2.0;
  out.p = std::sqrt(1.0 / out.q);
  out.alpha_shift = out.m - out.p * out.q * out.s;
  return out;
}

double glrt_null_cdf(const GlrtNullParams& params, double t_prime,
                     GlrtMethod method) {
  switch (method) {
    case GlrtMethod::lognormal:
      return sf::norm_cdf((t_prime - params.m) / params.s);
    case GlrtMethod::adjusted_bartlett: {
      if (t_prime < params.alpha_shift) return 0.0;
      double z = (t_prime - params.alpha_shift) / params.s / params.p;
      return sf::gamma_p(params.q, z);
    }
    case GlrtMethod::bartlett: {
      double n = params.n_dim;
      double scaled = (params.m_obs - params.n_dim) * t_prime;
      if (scaled <= 0.0) return 0.0;
      return sf::chi2_cdf(scaled, n * (n + 1.0));
    }
  }
  throw std::logic_error("glrt_null_cdf: unknown method");
}

double glrt_null_quantile(const GlrtNullParams& params, double prob,
                          GlrtMethod method) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::domain_error("glrt_null_quantile: prob must be in (0, 1)");
  switch (method) {
    case GlrtMethod::lognormal:
      return params.m + params.s * sf::norm_quantile(prob);
    case GlrtMethod::adjusted_bartlett:
      return params.alpha_shift +
             params.s * params.p * sf::gamma_p_inv(params.q, prob);
    case GlrtMethod::bartlett: {
      double n = params.n_dim;
      return sf::chi2_quantile(prob, n * (n + 1.0)) /
             (params.m_obs - params.n_dim);
    }
  }
  throw std::logic_error("glrt_null_quantile: unknown method");
}

ExactMoments exact_glrt_moments(int N, int M) {
  if (N < 1 || M < 2 * N)
    throw std::invalid_argument("exact_glrt_moments: need M >= 2N >= 2");
  const double b = (N + 1.0) / 2.0;
  ExactMoments out{0.0, 0.0};
  for (int n = 1; n <= N; ++n) {
    double a = (M - N - n + 1.0) / 2.0;
    out.mean += sf::digamma(a + b) - sf::digamma(a);
    out.variance += sf::trigamma(a) - sf::trigamma(a + b);
  }
  return out;
}

namespace {

std::vector<double> beta_product_draws(int N, int M, int count, double b,
                                       RngStream& rng) {
  if (count < 0) throw std::invalid_argument("sample_wilks_null: negative count");
  double a_last = (M - 2.0 * N + 1.0) / 2.0;
  if (N < 1 || a_last <= 0.0 || b <= 0.0)
    throw std::invalid_argument("sample_wilks_null: non-positive beta shape");
  std::vector<double> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double t_prime = 0.0;
    for (int n = 1; n <= N; ++n) {
      double a = (M - N - n + 1.0) / 2.0;
      t_prime -= std::log(rng.beta(a, b));
    }
    out.push_back(t_prime);
  }
  return out;
}

}  // namespace

std::vector<double> sample_wilks_null(int N, int M, int count, RngStream& rng) {
  return beta_product_draws(N, M, count, (N + 1.0) / 2.0, rng);
}

std::vector<double> sample_wilks_null_cca(int N, int M, int count,
                                          RngStream& rng) {
  return beta_product_draws(N, M, count, N / 2.0, rng);
}

double cca_offset_mean(const GlrtNullParams& params) {
  return params.m + std::log((params.gamma - 1.0) / params.gamma);
}

}  // namespace improp
