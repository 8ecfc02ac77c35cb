#include "improprietest/roy.hpp"

#include <cmath>
#include <stdexcept>

#include "improprietest/tracy_widom.hpp"

namespace improp {

RoyNullParams roy_params(int N, int M) {
  if (N < 1 || M < 2 * N)
    throw std::invalid_argument("roy_params: need M >= 2N >= 2");
  if (M == 2 * N)
    throw std::domain_error(
        "roy_params: M = 2N is degenerate (psi + phi = pi, mu infinite)");
  const double Md = M;
  double arg_psi = (Md - 2.0 * N + 1.0) / Md;
  double arg_phi = (Md - 2.0 * N - 1.0) / Md;
  if (!(arg_psi > -1.0 && arg_psi < 1.0 && arg_phi > -1.0 && arg_phi < 1.0))
    throw std::domain_error("roy_params: arccos argument outside (-1, 1)");
  RoyNullParams out;
  out.n_dim = N;
  out.m_obs = M;
  out.psi = std::acos(arg_psi);
  out.phi = std::acos(arg_phi);
  out.mu = 2.0 * std::log(std::tan(0.5 * (out.phi + out.psi)));
  double sum = out.phi + out.psi;
  double sigma3 = 16.0 / (Md * Md) /
                  (std::sin(sum) * std::sin(sum) * std::sin(out.psi) *
                   std::sin(out.phi));
  out.sigma = std::cbrt(sigma3);
  out.near_degenerate = (M == 2 * N + 1);
  return out;
}

double roy_null_cdf(const RoyNullParams& params, double w) {
  return tw1_cdf((w - params.mu) / params.sigma);
}

double roy_null_quantile(const RoyNullParams& params, double prob) {
  return params.mu + params.sigma * tw1_quantile(prob);
}

}  // namespace improp
