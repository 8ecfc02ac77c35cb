// Micro-benchmark for the Monte-Carlo hot path at 2N = 200, M = 500:
// normal generation, syrk covariance, symmetric eigensolves, gemm.
// Used to size the acceptance-test runtime budget.

#include <chrono>
#include <cstdio>

#include <Eigen/Dense>

#include "improprietest/augmented.hpp"
#include "improprietest/rng.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
  const int n2 = 200, m = 500, reps = 20;
  improp::RngStream rng(42);

  Eigen::MatrixXd x(m, n2);
  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n2; ++j) x(i, j) = rng.normal();
  std::printf("normals %dx%d        : %7.2f ms\n", m, n2, ms_since(t0) / reps);

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n2, n2);
  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) {
    s.setZero();
    s.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / m);
  }
  std::printf("syrk  %dx%d -> %d  : %7.2f ms\n", m, n2, n2, ms_since(t0) / reps);
  s.triangularView<Eigen::StrictlyUpper>() =
      s.triangularView<Eigen::StrictlyLower>().transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) es.compute(s);
  std::printf("dsyev vectors  n=%d : %7.2f ms\n", n2, ms_since(t0) / reps);

  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) es.compute(s, Eigen::EigenvaluesOnly);
  std::printf("dsyev novec    n=%d : %7.2f ms\n", n2, ms_since(t0) / reps);

  Eigen::MatrixXd a = s, b = s, c;
  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) c.noalias() = a * b;
  std::printf("gemm           n=%d : %7.2f ms\n", n2, ms_since(t0) / reps);

  // full pipeline replicate as the acceptance harness runs it
  t0 = Clock::now();
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n2; ++j) x(i, j) = rng.normal();
    improp::AugmentedSample smp(n2 / 2, x);
    acc += improp::sample_spectrum(smp).coeffs(0);
  }
  std::printf("full replicate (2N=%d, M=%d): %7.2f ms   [checksum %.4f]\n", n2,
              m, ms_since(t0) / reps, acc / reps);
  return 0;
}
