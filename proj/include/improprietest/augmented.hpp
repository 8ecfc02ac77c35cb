#pragma once

// Augmented (real) representation of complex Gaussian data: covariance
// construction, the proper/improper split, the whitened improper part
// Gamma, its spectrum of impropriety coefficients, and the two test
// statistics built from that spectrum.

#include <Eigen/Dense>
#include <complex>

namespace improp {

// M observations of a 2N-dimensional real vector [u; v] representing
// z = u + iv. One observation per row.
struct AugmentedSample {
  int n_dim = 0;   // N
  int m_obs = 0;   // M
  Eigen::MatrixXd data;  // M x 2N

  AugmentedSample() = default;
  AugmentedSample(int n, Eigen::MatrixXd rows);
  // convenience: complex observations, one per row, z = u + iv
  static AugmentedSample from_complex(
      const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>& z);
};

// 2N x 2N symmetric covariance with named N x N blocks.
struct AugmentedCovariance {
  int n_dim = 0;
  Eigen::MatrixXd full;  // symmetric 2N x 2N

  static AugmentedCovariance from_full(Eigen::MatrixXd c);  // checks symmetry
  static AugmentedCovariance from_blocks(const Eigen::MatrixXd& uu,
                                         const Eigen::MatrixXd& uv,
                                         const Eigen::MatrixXd& vv);
  Eigen::Block<const Eigen::MatrixXd> uu() const { return full.topLeftCorner(n_dim, n_dim); }
  Eigen::Block<const Eigen::MatrixXd> uv() const { return full.topRightCorner(n_dim, n_dim); }
  Eigen::Block<const Eigen::MatrixXd> vu() const { return full.bottomLeftCorner(n_dim, n_dim); }
  Eigen::Block<const Eigen::MatrixXd> vv() const { return full.bottomRightCorner(n_dim, n_dim); }
};

struct ProperImproperSplit {
  Eigen::MatrixXd proper_part;    // commutes with the rotation structure
  Eigen::MatrixXd improper_part;  // remainder; top-left = -bottom-right
};

// Ordered coefficients 1 >= l_1 >= ... >= l_N >= 0 and their squares.
struct ImproprietySpectrum {
  Eigen::VectorXd coeffs;   // descending
  Eigen::VectorXd squared;  // elementwise squares
};

struct GlrtStat {
  double T = 1.0;        // product of (1 - r_n), in (0, 1]
  double T_prime = 0.0;  // -ln T
  bool saturated = false;  // some r_n == 1: T = 0, T' = +inf
};

struct RoyStat {
  double r1 = 0.0;
  double W = 0.0;          // logit(r1)
  bool saturated = false;  // r1 == 0 (W = -inf) or r1 == 1 (W = +inf)
};

// Structure test for the invariance group: top-left == bottom-right and
// top-right == -bottom-left (exact entrywise), and non-singular.
bool is_group_element(const Eigen::MatrixXd& g);

// S_ab = (1/M) sum_m a_m b_m^T : divisor M, no centering (zero-mean model).
AugmentedCovariance sample_covariance(const AugmentedSample& sample);

ProperImproperSplit split_proper_improper(const AugmentedCovariance& c);

// Gamma = Cdot^{-1/2} Cddot Cdot^{-1/2}, whitening via symmetric
// eigendecomposition of Cdot; result symmetrized.
Eigen::MatrixXd gamma_matrix(const AugmentedCovariance& c);

// Top-N eigenvalues of the (+/-)-paired spectrum, clamped into [0,1]
// within 1e-8 of the boundary.
ImproprietySpectrum impropriety_spectrum(const Eigen::MatrixXd& gamma);

GlrtStat glrt_statistic(const ImproprietySpectrum& spec);
RoyStat roy_statistic(const ImproprietySpectrum& spec);

// Same pipeline applied to an exactly specified population covariance.
ImproprietySpectrum population_spectrum(const AugmentedCovariance& c);

// Full sample pipeline: covariance -> split -> Gamma -> spectrum.
ImproprietySpectrum sample_spectrum(const AugmentedSample& sample);

}  // namespace improp
