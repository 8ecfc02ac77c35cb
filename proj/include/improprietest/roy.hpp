#pragma once

namespace improp {

// Centering/scaling of W = logit(r1) under H0 (Tracy-Widom limit).
struct RoyNullParams {
  int n_dim;
  int m_obs;
  double psi;
  double phi;
  double mu;
  double sigma;
  bool near_degenerate;  // M = 2N + 1: phi sits exactly at pi/2
};

RoyNullParams roy_params(int N, int M);

double roy_null_cdf(const RoyNullParams& params, double w);
double roy_null_quantile(const RoyNullParams& params, double prob);

}  // namespace improp
