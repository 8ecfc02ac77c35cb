#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "improprietest/augmented.hpp"
#include "improprietest/rng.hpp"
#include "improprietest/special_functions.hpp"
#include "improprietest/wilks.hpp"

using namespace improp;

namespace {

// mpmath (50-digit) references for the Thm-6/Cor-7 closed forms
struct CltRef { int M, N; double m, s, alpha; };
const CltRef kCltRefs[] = {
    {10, 4, 3.7157506165407376, 1.2552184390791262, -0.25359861199060692},
    {100, 20, 5.3088435961971153, 0.36843413107611109, -0.030274203381752617},
    {1000, 200, 50.789720655024195, 0.36019954045196811, -0.27737785008338799},
    {2000, 400, 101.32402849816539, 0.35973653638249712, -0.55193590855690762},
    {250, 100, 73.580510464309236, 1.0915921077967896, -3.9916837518620758},
    {500, 100, 25.522566733453595, 0.36112376771472087, -0.14009869363721932},
    {4000, 4, 0.0050050060080114840, 0.0015827220274036495,
     -5.0150348239008699e-10},
    {1000000, 10, 0.00011000110001300017, 1.4832545300048854e-05,
     -1.0000300006891054e-15},
};

// mpmath references for the digamma/trigamma moment sums
struct MomRef { int N, M; double mean, var; };
const MomRef kMomRefs[] = {
    {1, 4, 0.66666666666666667, 0.44444444444444444},
    {10, 40, 3.7437045253101936, 0.26037949822008428},
    {50, 500, 5.6786105249025653, 0.025344975212994395},
    {100, 250, 73.579589646980024, 1.1915161752560942},
    {100, 500, 25.522538363204384, 0.13040993074752180},
    {200, 1000, 50.789706618001911, 0.12974359893583337},
    {4, 4000, 0.0050050059453235281, 2.5050089219025783e-06},
};

double rel(double got, double ref) {
  return std::fabs(got - ref) / std::max(1.0, std::fabs(ref));
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    d = std::max(d, std::fabs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("CLT parameters against high-precision references") {
  for (const auto& r : kCltRefs) {
    CAPTURE(r.M);
    CAPTURE(r.N);
    auto p = glrt_clt_params(RegimeParams(r.N, r.M));
    CHECK(rel(p.m, r.m) < 1e-12);
    CHECK(rel(p.s, r.s) < 1e-12);
    // alpha = m - pqs cancels, so judge its error on the scale of m
    CHECK(std::fabs(p.alpha_shift - r.alpha) <
          1e-12 * std::max(1.0, std::fabs(r.m)));
    CHECK(p.q == doctest::Approx(r.N * (r.N + 1.0) / 2.0).epsilon(1e-15));
    CHECK(p.p == doctest::Approx(std::sqrt(2.0 / (r.N * (r.N + 1.0)))).epsilon(1e-14));
  }
  CHECK_THROWS_WITH_AS((void)glrt_clt_params(RegimeParams(10, 20)),
                       doctest::Contains("CLT regime violated"),
                       std::domain_error);
  CHECK_THROWS_AS((void)RegimeParams(10, 19), std::invalid_argument);
}

TEST_CASE("Cor. 7 large-gamma consistency with the Bartlett chi-square") {
  auto p = glrt_clt_params(RegimeParams(10, 1000000));
  double denom = 2.0 / (p.m_obs - p.n_dim);
  CHECK(std::fabs(p.p * p.s - denom) / denom < 1e-3);
  // chi2_{N(N+1)} mean is N(N+1): (M-N) m approaches it
  CHECK(std::fabs((p.m_obs - p.n_dim) * p.m - 110.0) / 110.0 < 1e-3);
}

TEST_CASE("exact moments against high-precision references") {
  for (const auto& r : kMomRefs) {
    CAPTURE(r.N);
    CAPTURE(r.M);
    auto mo = exact_glrt_moments(r.N, r.M);
    CHECK(rel(mo.mean, r.mean) < 1e-12);
    CHECK(rel(mo.variance, r.var) < 1e-12);
  }
  // N=1, M=4: psi(5/2) - psi(3/2) = 2/3 by the recurrence
  CHECK(exact_glrt_moments(1, 4).mean == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)exact_glrt_moments(3, 5), std::invalid_argument);
}

TEST_CASE("CLT mean converges to the exact mean as M grows") {
  auto p1 = glrt_clt_params(RegimeParams(10, 1000));
  CHECK(std::fabs(p1.m - exact_glrt_moments(10, 1000).mean) < 1e-7);
  auto p2 = glrt_clt_params(RegimeParams(10, 100000));
  CHECK(std::fabs(p2.m - exact_glrt_moments(10, 100000).mean) < 1e-12);
}

TEST_CASE("null CDF: trivial anchors and round trips") {
  auto p = glrt_clt_params(RegimeParams(20, 100));
  CHECK(glrt_null_cdf(p, p.m, GlrtMethod::lognormal) == 0.5);
  CHECK(glrt_null_cdf(p, p.alpha_shift - 0.5, GlrtMethod::adjusted_bartlett) == 0.0);

  // N = 2: bartlett equals a chi-square with 6 dof in (M-N) T'
  auto p2 = glrt_clt_params(RegimeParams(2, 30));
  for (double t : {0.05, 0.2, 0.5})
    CHECK(glrt_null_cdf(p2, t, GlrtMethod::bartlett) ==
          doctest::Approx(sf::chi2_cdf(28.0 * t, 6.0)).epsilon(1e-14));

  for (auto method : {GlrtMethod::lognormal, GlrtMethod::adjusted_bartlett,
                      GlrtMethod::bartlett}) {
    for (double prob : {0.05, 0.5, 0.9, 0.99}) {
      double thr = glrt_null_quantile(p, prob, method);
      CHECK(glrt_null_cdf(p, thr, method) == doctest::Approx(prob).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS((void)glrt_null_quantile(p, 0.0, GlrtMethod::lognormal),
                  std::domain_error);
}

TEST_CASE("lognormal and adjusted-Bartlett agree at large M") {
  auto p = glrt_clt_params(RegimeParams(400, 2000));
  double sup = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double t = p.m + (i / 1000.0 - 1.0) * 5.0 * p.s;
    sup = std::max(sup, std::fabs(glrt_null_cdf(p, t, GlrtMethod::lognormal) -
                                  glrt_null_cdf(p, t, GlrtMethod::adjusted_bartlett)));
  }
  CHECK(sup < 0.01);
}

TEST_CASE("adjusted-Bartlett reduces to Bartlett in the low-dim limit") {
  auto p = glrt_clt_params(RegimeParams(4, 4000));
  for (double prob : {0.95, 0.99}) {
    double qa = glrt_null_quantile(p, prob, GlrtMethod::adjusted_bartlett);
    double qb = glrt_null_quantile(p, prob, GlrtMethod::bartlett);
    CHECK(std::fabs(qa - qb) / qb < 0.01);
  }
}

TEST_CASE("exact sampler: shapes, determinism, closed-form N=1 law") {
  RngStream rng(101);
  CHECK(sample_wilks_null(5, 20, 0, rng).empty());
  CHECK_THROWS_AS((void)sample_wilks_null(3, 5, 10, rng), std::invalid_argument);

  RngStream a(7), b(7);
  auto da = sample_wilks_null(4, 20, 50, a);
  auto db = sample_wilks_null(4, 20, 50, b);
  CHECK(da == db);

  // N = 1, M = 6: T = exp(-T') has CDF t^{5/2}
  RngStream rng1(11);
  auto draws = sample_wilks_null(1, 6, 10000, rng1);
  std::vector<double> t(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) t[i] = std::exp(-draws[i]);
  std::sort(t.begin(), t.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double f = std::pow(t[i], 2.5);
    ks = std::max(ks, std::fabs(f - double(i) / t.size()));
    ks = std::max(ks, std::fabs(f - double(i + 1) / t.size()));
  }
  CHECK(ks < 1.628 / std::sqrt(10000.0));  // 1% critical value
}

TEST_CASE("exact sampler matches digamma moments") {
  RngStream rng(13);
  auto draws = sample_wilks_null(10, 40, 100000, rng);
  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= draws.size();
  auto mo = exact_glrt_moments(10, 40);
  double se = std::sqrt(mo.variance / draws.size());
  CHECK(std::fabs(mean - mo.mean) < 3.0 * se);
  double var = 0.0;
  for (double d : draws) var += (d - mean) * (d - mean);
  var /= draws.size() - 1;
  CHECK(std::fabs(var - mo.variance) / mo.variance < 0.05);
}

TEST_CASE("exact sampler is distributionally identical to the pipeline") {
  // the Thm-4 representation vs the full eigen path on proper data
  for (auto [N, M] : {std::pair{5, 20}, {10, 40}, {20, 50}}) {
    CAPTURE(N);
    const int count = 10000;
    RngStream sampler_rng(501 + N);
    auto direct = sample_wilks_null(N, M, count, sampler_rng);
    std::vector<double> piped(count);
    for (int k = 0; k < count; ++k) {
      RngStream rep = RngStream::derived(900 + N, k);
      Eigen::MatrixXd d(M, 2 * N);
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < 2 * N; ++j) d(i, j) = rep.normal();
      piped[k] = glrt_statistic(sample_spectrum(AugmentedSample(N, d))).T_prime;
    }
    double ks = two_sample_ks(direct, piped);
    CHECK(ks < 1.628 * std::sqrt(2.0 / count));  // 1% two-sample critical value
  }
}

TEST_CASE("adjusted-Bartlett threshold calibrates the exact null") {
  auto p = glrt_clt_params(RegimeParams(20, 100));
  double thr = glrt_null_quantile(p, 0.95, GlrtMethod::adjusted_bartlett);
  RngStream rng(17);
  auto draws = sample_wilks_null(20, 100, 10000, rng);
  int exceed = 0;
  for (double d : draws) exceed += (d > thr);
  double far = exceed / 10000.0;
  CHECK(std::fabs(far - 0.05) < 0.007);
}

TEST_CASE("CCA offset: closed form, exact moments, sampler comparison") {
  auto p = glrt_clt_params(RegimeParams(50, 500));
  CHECK(cca_offset_mean(p) - p.m ==
        doctest::Approx(std::log(0.9)).epsilon(1e-14));
  CHECK(cca_offset_mean(p) < p.m);

  // exact mean difference from digamma sums with the shifted second shape
  double diff = 0.0;
  const double b_improp = (50 + 1.0) / 2.0, b_cca = 50 / 2.0;
  for (int n = 1; n <= 50; ++n) {
    double a = (500 - 50 - n + 1.0) / 2.0;
    diff += (sf::digamma(a + b_cca) - sf::digamma(a)) -
            (sf::digamma(a + b_improp) - sf::digamma(a));
  }
  CHECK(diff == doctest::Approx(-0.10536035928020389).epsilon(1e-12));
  CHECK(std::fabs(diff - std::log(0.9)) < 2e-7);

  // the two samplers differ in mean by ln(9/10) within Monte-Carlo error
  RngStream r1(19), r2(23);
  auto improp_draws = sample_wilks_null(50, 500, 20000, r1);
  auto cca_draws = sample_wilks_null_cca(50, 500, 20000, r2);
  double m1 = 0.0, m2 = 0.0;
  for (double d : improp_draws) m1 += d;
  for (double d : cca_draws) m2 += d;
  m1 /= improp_draws.size();
  m2 /= cca_draws.size();
  double se = std::sqrt(2.0 * 0.02534 / 20000.0);
  CHECK(std::fabs((m2 - m1) - std::log(0.9)) < 3.0 * se);
}
