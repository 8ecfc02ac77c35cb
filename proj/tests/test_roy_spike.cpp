#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "improprietest/roy.hpp"
#include "improprietest/spike.hpp"
#include "improprietest/tracy_widom.hpp"

using namespace improp;

namespace {
// mpmath (50-digit) references for the Thm-8 parameters
struct RoyRef { int N, M; double psi, phi, mu, sigma; };
const RoyRef kRoyRefs[] = {
    {100, 250, 1.3653542092847624, 1.3735192006098023, 3.1780364690740719,
     0.12018754765779086},
    {100, 500, 0.92479286723155246, 0.92979288122909942, 0.57535437919654476,
     0.047696594458578799},
    {10, 40, 1.0180812136981134, 1.0758322950780020, 1.0975002504002402,
     0.26106380141358505},
    {50, 500, 0.64016032871153550, 0.64682707357093797, -0.57539501018711471,
     0.057781247600835730},
    {4, 10, 1.2661036727794991, 1.4706289056333368, 3.1671390222366609,
     1.0280411097460949},
    {3, 7, 1.2810446253588491, 1.5707963267948966, 3.8496946004768276,
     1.6100916267953551},
};
}  // namespace

TEST_CASE("Roy centering/scaling against high-precision references") {
  for (const auto& r : kRoyRefs) {
    CAPTURE(r.N);
    CAPTURE(r.M);
    auto p = roy_params(r.N, r.M);
    CHECK(std::fabs(p.psi - r.psi) < 1e-13);
    CHECK(std::fabs(p.phi - r.phi) < 1e-13);
    CHECK(std::fabs(p.mu - r.mu) < 1e-12 * std::max(1.0, std::fabs(r.mu)));
    CHECK(std::fabs(p.sigma - r.sigma) < 1e-12);
  }
}

TEST_CASE("Roy parameter structure across the admissible range") {
  for (int N : {1, 2, 5, 17, 64, 300}) {
    for (int M : {2 * N + 1, 2 * N + 2, 3 * N, 10 * N, 1000 * N}) {
      CAPTURE(N);
      CAPTURE(M);
      auto p = roy_params(N, M);
      CHECK(p.phi > p.psi);  // arccos is decreasing
      CHECK(p.psi > 0.0);
      CHECK(p.phi < M_PI);
      CHECK(p.sigma > 0.0);
      CHECK(std::isfinite(p.mu));
      CHECK(p.near_degenerate == (M == 2 * N + 1));
    }
  }
  // M = 2N + 1 puts phi exactly at pi/2
  CHECK(roy_params(3, 7).phi == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(roy_params(3, 7).psi == doctest::Approx(std::acos(2.0 / 7.0)).epsilon(1e-15));
  // M = 2N is the genuinely degenerate boundary
  CHECK_THROWS_AS((void)roy_params(5, 10), std::domain_error);
  CHECK_THROWS_AS((void)roy_params(5, 9), std::invalid_argument);
}

TEST_CASE("Roy null CDF/quantile are the TW law in location-scale") {
  auto p = roy_params(100, 500);
  for (double w : {0.3, 0.5, 0.7}) {
    CHECK(roy_null_cdf(p, w) ==
          doctest::Approx(tw1_cdf((w - p.mu) / p.sigma)).epsilon(1e-14));
  }
  double thr = roy_null_quantile(p, 0.99);
  CHECK(thr == doctest::Approx(p.mu + p.sigma * tw1_quantile(0.99)).epsilon(1e-14));
  CHECK(roy_null_cdf(p, thr) == doctest::Approx(0.99).epsilon(1e-9));
}

TEST_CASE("spike map: threshold, continuity, frozen plug-in") {
  SpikeMap map(5.0);
  CHECK(map.rho_c == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(map.edge_c == doctest::Approx(0.64).epsilon(1e-15));

  auto below = spike_map(map, 0.1);
  CHECK_FALSE(below.above_threshold);
  CHECK(below.limit == map.edge_c);

  auto at = spike_map(map, map.rho_c);
  CHECK_FALSE(at.above_threshold);
  CHECK(at.limit == map.edge_c);

  // gamma=5, lambda^2 = 0.4: 0.4 (0.8 + 0.5)^2 = 0.676
  auto strong = spike_map(map, 0.4);
  CHECK(strong.above_threshold);
  CHECK(strong.limit == doctest::Approx(0.676).epsilon(1e-14));

  CHECK_THROWS_AS((void)spike_map(map, -0.1), std::domain_error);
  CHECK_THROWS_AS((void)spike_map(map, 1.2), std::domain_error);
  CHECK_THROWS_AS((void)SpikeMap(1.0), std::domain_error);
}

TEST_CASE("spike map is continuous at the threshold and increasing above") {
  for (double g : {2.0, 2.5, 3.0, 5.0, 10.0, 20.0}) {
    CAPTURE(g);
    SpikeMap map(g);
    if (map.rho_c >= 1.0) continue;  // threshold outside (0,1]: no transition
    // continuity: the Eq. limit evaluated AT rho_c equals the bulk edge
    double w = (g - 1.0) / g + 1.0 / (g * map.rho_c);
    CHECK(map.rho_c * w * w == doctest::Approx(map.edge_c).epsilon(1e-13));
    double just_above = spike_map(map, map.rho_c * (1.0 + 1e-9)).limit;
    CHECK(std::fabs(just_above - map.edge_c) < 1e-8);
    // strictly increasing above the threshold
    double prev = map.edge_c;
    for (double l2 = map.rho_c * 1.01; l2 <= 1.0; l2 += 0.01) {
      double v = spike_map(map, std::min(l2, 1.0)).limit;
      CHECK(v > prev);
      prev = v;
    }
  }
}
