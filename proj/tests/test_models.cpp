#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "improprietest/augmented.hpp"
#include "improprietest/models.hpp"
#include "improprietest/rng.hpp"

using namespace improp;

namespace {
Eigen::VectorXd pipeline_lambdas(const ModelSpec& spec) {
  return population_spectrum(population_covariance(spec)).coeffs;
}
}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((void)ModelSpec::equi(0, 10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)ModelSpec::equi(5, 20, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)ModelSpec::equi(5, 20, -1.0), std::invalid_argument);

  Eigen::VectorXd bad_phi = Eigen::VectorXd::Constant(4, 0.7);
  CHECK_THROWS_AS((void)ModelSpec::spiked_dir(4, 16, 1.0, bad_phi),
                  std::invalid_argument);
  Eigen::VectorXd short_phi = Eigen::VectorXd::Unit(3, 0);
  CHECK_THROWS_AS((void)ModelSpec::spiked_dir(4, 16, 1.0, short_phi),
                  std::invalid_argument);

  CHECK_THROWS_AS((void)ModelSpec::mixed(4, 16, 1.0, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS((void)ModelSpec::mixed(4, 16, 1.0, {0.2, 0.5, 0.3}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ModelSpec::mixed(4, 16, 1.0, {1.2, -0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ModelSpec::mixed(2, 8, 1.0, {0.4, 0.3, 0.3}),
                  std::invalid_argument);
  CHECK_NOTHROW((void)ModelSpec::mixed(4, 16, 1.0, {0.6, 0.4}));
}

TEST_CASE("population covariances and closed-form coefficients") {
  // proper: identity covariance, all-zero spectrum
  auto proper = ModelSpec::proper(6, 30);
  CHECK((population_covariance(proper).full -
         Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pipeline_lambdas(proper).cwiseAbs().maxCoeff() < 1e-14);

  // equi theta = 1: lambda = 1/2 for every coefficient
  auto equi = ModelSpec::equi(5, 25, 1.0);
  auto cov = population_covariance(equi);
  CHECK((cov.uu() - 2.0 * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cov.uv() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
  auto lam = pipeline_lambdas(equi);
  for (int i = 0; i < 5; ++i)
    CHECK(lam(i) == doctest::Approx(0.5).epsilon(1e-12));

  // spiked theta = 2/3: lambda_1 = 0.4, all others 0
  auto spiked = ModelSpec::spiked(6, 60, 2.0 / 3.0);
  auto slam = pipeline_lambdas(spiked);
  CHECK(slam(0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(slam.tail(5).cwiseAbs().maxCoeff() < 1e-10);

  // mixed: lambda_k = theta p_k / (1 + theta p_k)
  auto mixed = ModelSpec::mixed(5, 25, 2.0, {0.5, 0.3, 0.2});
  auto mlam = pipeline_lambdas(mixed);
  auto truth = population_truth(mixed);
  CHECK((mlam - truth.lambdas).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(truth.lambdas(0) == doctest::Approx(1.0 / 2.0).epsilon(1e-14));
  CHECK(truth.lambdas(1) == doctest::Approx(0.6 / 1.6).epsilon(1e-14));
  CHECK(truth.lambdas(2) == doctest::Approx(0.4 / 1.4).epsilon(1e-14));
  CHECK(truth.lambdas(3) == 0.0);
}

TEST_CASE("pipeline agreement for random parameters, all variants") {
  RngStream rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    double theta = 0.05 + 3.0 * rng.uniform();
    int n = 2 + static_cast<int>(rng.uniform() * 6);

    auto equi = ModelSpec::equi(n, 4 * n, theta);
    CHECK((pipeline_lambdas(equi) - population_truth(equi).lambdas)
              .cwiseAbs().maxCoeff() < 1e-10);

    // random unit direction: invariance makes the direction irrelevant
    Eigen::VectorXd dir(n);
    for (int j = 0; j < n; ++j) dir(j) = rng.normal();
    dir.normalize();
    auto spiked = ModelSpec::spiked_dir(n, 4 * n, theta, dir);
    CHECK((pipeline_lambdas(spiked) - population_truth(spiked).lambdas)
              .cwiseAbs().maxCoeff() < 1e-10);

    std::vector<double> p = {0.7, 0.3};
    auto mixed = ModelSpec::mixed(n, 4 * n, theta, p);
    CHECK((pipeline_lambdas(mixed) - population_truth(mixed).lambdas)
              .cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("paper mixed setting: exactly ten nonzero coefficients") {
  std::vector<double> p = {0.50, 0.20, 0.10, 0.10, 0.05,
                           0.01, 0.01, 0.01, 0.01, 0.01};
  auto spec = ModelSpec::mixed(20, 400, 1.0, p);
  auto truth = population_truth(spec);
  int nonzero = 0;
  for (int i = 0; i < 20; ++i) nonzero += (truth.lambdas(i) > 1e-12);
  CHECK(nonzero == 10);
  auto lam = pipeline_lambdas(spec);
  CHECK((lam - truth.lambdas).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("theta_for_lambda inversion") {
  CHECK(theta_for_lambda(0.25, ModelVariant::equi_correlated) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)theta_for_lambda(1.0, ModelVariant::spiked),
                  std::domain_error);
  CHECK_THROWS_AS((void)theta_for_lambda(1.0 - 1e-12, ModelVariant::spiked),
                  std::domain_error);
  CHECK_THROWS_AS((void)theta_for_lambda(0.0, ModelVariant::spiked),
                  std::domain_error);
  CHECK_THROWS_AS((void)theta_for_lambda(0.5, ModelVariant::proper_null),
                  std::invalid_argument);

  RngStream rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    double target = 0.02 + 0.9 * rng.uniform();
    double th_e = theta_for_lambda(target, ModelVariant::equi_correlated);
    auto equi = ModelSpec::equi(4, 16, th_e);
    CHECK(population_truth(equi).lambda_sq(0) ==
          doctest::Approx(target).epsilon(1e-12));
    CHECK(pipeline_lambdas(equi)(0) * pipeline_lambdas(equi)(0) ==
          doctest::Approx(target).epsilon(1e-10));

    double th_s = theta_for_lambda(target, ModelVariant::spiked);
    auto spiked = ModelSpec::spiked(4, 16, th_s);
    CHECK(population_truth(spiked).lambda_sq(0) ==
          doctest::Approx(target).epsilon(1e-12));

    double th_m = theta_for_lambda(target, ModelVariant::mixed_pca, 0.5);
    auto mixed = ModelSpec::mixed(4, 16, th_m, {0.5, 0.5});
    CHECK(population_truth(mixed).lambda_sq(0) ==
          doctest::Approx(target).epsilon(1e-12));
  }
}

TEST_CASE("generation: shapes, determinism, stream separation") {
  auto spec = ModelSpec::equi(4, 20, 0.8);
  RngStream a(41), b(41), c(42);
  auto sa = generate(spec, a);
  auto sb = generate(spec, b);
  auto sc = generate(spec, c);
  CHECK(sa.n_dim == 4);
  CHECK(sa.m_obs == 20);
  CHECK(sa.data == sb.data);  // bit-identical
  CHECK((sa.data - sc.data).cwiseAbs().maxCoeff() > 0.0);

  RngStream d1 = RngStream::derived(41, 0), d2 = RngStream::derived(41, 1);
  CHECK((generate(spec, d1).data - generate(spec, d2).data)
            .cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("sample spectra concentrate on the population values") {
  // equi theta=1: mean coefficient -> 0.5 with M
  auto spec = ModelSpec::equi(4, 4000, 1.0);
  RngStream rng(43);
  auto sample = generate(spec, rng);
  auto coeffs = sample_spectrum(sample).coeffs;
  CHECK(std::fabs(coeffs.mean() - 0.5) < 0.05);

  // mean absolute deviation decreases across M in {10N, 100N, 1000N}
  double mad[3] = {0.0, 0.0, 0.0};
  int idx = 0;
  for (int M : {40, 400, 4000}) {
    auto s = ModelSpec::equi(4, M, 1.0);
    double acc = 0.0;
    const int reps = 8;
    for (int k = 0; k < reps; ++k) {
      RngStream rep = RngStream::derived(47, 100 * idx + k);
      auto coef = sample_spectrum(generate(s, rep)).coeffs;
      acc += (coef - Eigen::VectorXd::Constant(4, 0.5)).cwiseAbs().mean();
    }
    mad[idx++] = acc / reps;
  }
  CHECK(mad[1] < mad[0]);
  CHECK(mad[2] < mad[1]);
}

TEST_CASE("sample covariance approaches the analytic one") {
  for (auto variant : {0, 1, 2, 3}) {
    ModelSpec spec;
    switch (variant) {
      case 0: spec = ModelSpec::proper(3, 60000); break;
      case 1: spec = ModelSpec::equi(3, 60000, 1.3); break;
      case 2: spec = ModelSpec::spiked(3, 60000, 0.9); break;
      default: spec = ModelSpec::mixed(3, 60000, 1.1, {0.8, 0.2}); break;
    }
    CAPTURE(variant);
    RngStream rng(53 + variant);
    auto cov = sample_covariance(generate(spec, rng));
    auto pop = population_covariance(spec);
    double scale = pop.full.cwiseAbs().maxCoeff();
    CHECK((cov.full - pop.full).cwiseAbs().maxCoeff() < 0.06 * scale);
  }
}
