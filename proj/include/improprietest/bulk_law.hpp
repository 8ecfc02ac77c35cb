#pragma once

namespace improp {

// Limiting spectral law of the squared impropriety coefficients under H0.
struct BulkLaw {
  double gamma;
  double edge_c;  // right edge 4(gamma-1)/gamma^2 of the support
  explicit BulkLaw(double gamma_ratio);
};

struct BulkMoments {
  double mean;
  double variance;
};

// density on (0, c), zero outside; gamma = 2 degenerates to the arcsine law
double bulk_pdf(const BulkLaw& law, double r);
BulkMoments bulk_moments(const BulkLaw& law);
// quadrature CDF; the substitution r = c sin^2 t removes both endpoint
// singularities, leaving a bounded analytic integrand
double bulk_cdf(const BulkLaw& law, double r);

}  // namespace improp
