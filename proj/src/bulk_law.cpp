#include "improprietest/bulk_law.hpp"

#include <cmath>
#include <stdexcept>

namespace improp {

namespace {

// integrand after r = c sin^2 t:  f(c sin^2 t) * c sin(2t)
// algebraically gamma*c*cos^2(t) / (pi * (1 - c sin^2 t)), smooth on [0, pi/2]
double substituted_density(const BulkLaw& law, double t) {
  double ct = std::cos(t), st = std::sin(t);
  return law.gamma * law.edge_c * ct * ct /
         (M_PI * (1.0 - law.edge_c * st * st));
}

double adaptive_simpson(const BulkLaw& law, double a, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = substituted_density(law, lm), frm = substituted_density(law, rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(law, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(law, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

BulkLaw::BulkLaw(double gamma_ratio) : gamma(gamma_ratio) {
  if (!(gamma_ratio >= 2.0))
    throw std::domain_error("BulkLaw: gamma must be >= 2");
  edge_c = 4.0 * (gamma_ratio - 1.0) / (gamma_ratio * gamma_ratio);
}

double bulk_pdf(const BulkLaw& law, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("bulk_pdf: r must be in [0, 1]");
  if (r <= 0.0 || r >= law.edge_c) return 0.0;
  // the radicand 4(g-1)(1-r)/r - (g-2)^2 equals g^2 (c - r)/r
  return law.gamma * std::sqrt((law.edge_c - r) / r) / (2.0 * M_PI * (1.0 - r));
}

BulkMoments bulk_moments(const BulkLaw& law) {
  double g = law.gamma;
  return {1.0 / g, (g - 1.0) / (g * g * g)};
}

double bulk_cdf(const BulkLaw& law, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("bulk_cdf: r must be in [0, 1]");
  if (r <= 0.0) return 0.0;
  if (r >= law.edge_c) return 1.0;
  double t_r = std::asin(std::sqrt(r / law.edge_c));
  double fa = substituted_density(law, 0.0);
  double fb = substituted_density(law, t_r);
  double fm = substituted_density(law, 0.5 * t_r);
  double whole = t_r / 6.0 * (fa + 4.0 * fm + fb);
  double v = adaptive_simpson(law, 0.0, t_r, fa, fm, fb, whole, 1e-8, 40);
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace improp
