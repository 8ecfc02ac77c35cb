#include "improprietest/augmented.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace improp {

AugmentedSample::AugmentedSample(int n, Eigen::MatrixXd rows)
    : n_dim(n), m_obs(static_cast<int>(rows.rows())), data(std::move(rows)) {
  if (n_dim <= 0) throw std::invalid_argument("AugmentedSample: N must be positive");
  if (data.cols() != 2 * n_dim)
    throw std::invalid_argument("AugmentedSample: rows must have 2N entries");
  if (!data.allFinite())
    throw std::invalid_argument("AugmentedSample: data must be finite");
}

AugmentedSample AugmentedSample::from_complex(
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>& z) {
  const int m = static_cast<int>(z.rows());
  const int n = static_cast<int>(z.cols());
  Eigen::MatrixXd rows(m, 2 * n);
  rows.leftCols(n) = z.real();
  rows.rightCols(n) = z.imag();
  return AugmentedSample(n, std::move(rows));
}

AugmentedCovariance AugmentedCovariance::from_full(Eigen::MatrixXd c) {
  if (c.rows() != c.cols() || c.rows() % 2 != 0 || c.rows() == 0)
    throw std::invalid_argument("AugmentedCovariance: need a square 2N x 2N matrix");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("AugmentedCovariance: matrix is not symmetric");
  AugmentedCovariance out;
  out.n_dim = static_cast<int>(c.rows()) / 2;
  out.full = 0.5 * (c + c.transpose());  // absorb roundoff asymmetry
  return out;
}

AugmentedCovariance AugmentedCovariance::from_blocks(const Eigen::MatrixXd& uu,
                                                     const Eigen::MatrixXd& uv,
                                                     const Eigen::MatrixXd& vv) {
  const int n = static_cast<int>(uu.rows());
  if (uu.cols() != n || uv.rows() != n || uv.cols() != n || vv.rows() != n ||
      vv.cols() != n)
    throw std::invalid_argument("AugmentedCovariance: block shapes disagree");
  AugmentedCovariance out;
  out.n_dim = n;
  out.full.resize(2 * n, 2 * n);
  out.full.topLeftCorner(n, n) = 0.5 * (uu + uu.transpose());
  out.full.bottomRightCorner(n, n) = 0.5 * (vv + vv.transpose());
  out.full.topRightCorner(n, n) = uv;
  out.full.bottomLeftCorner(n, n) = uv.transpose();  // C_vu = C_uv^T by construction
  return out;
}

bool is_group_element(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0 || g.rows() == 0) return false;
  const int n = static_cast<int>(g.rows()) / 2;
  if (g.topLeftCorner(n, n) != g.bottomRightCorner(n, n)) return false;
  if (g.topRightCorner(n, n) != -g.bottomLeftCorner(n, n)) return false;
  return Eigen::FullPivLU<Eigen::MatrixXd>(g).isInvertible();
}

AugmentedCovariance sample_covariance(const AugmentedSample& sample) {
  const int n2 = 2 * sample.n_dim;
  if (sample.m_obs < n2)
    throw std::invalid_argument(
        "sample_covariance: covariance singularly underdetermined (M < 2N)");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n2, n2);
  s.selfadjointView<Eigen::Lower>().rankUpdate(sample.data.transpose(),
                                               1.0 / sample.m_obs);
  s.triangularView<Eigen::StrictlyUpper>() =
      s.triangularView<Eigen::StrictlyLower>().transpose();
  AugmentedCovariance out;
  out.n_dim = sample.n_dim;
  out.full = std::move(s);
  return out;
}

ProperImproperSplit split_proper_improper(const AugmentedCovariance& c) {
  const int n = c.n_dim;
  Eigen::MatrixXd half_sum = 0.5 * (c.uu() + c.vv());
  Eigen::MatrixXd half_skew = 0.5 * (c.uv() - c.vu());
  ProperImproperSplit out;
  out.proper_part.resize(2 * n, 2 * n);
  out.proper_part.topLeftCorner(n, n) = half_sum;
  out.proper_part.bottomRightCorner(n, n) = half_sum;
  out.proper_part.topRightCorner(n, n) = half_skew;
  out.proper_part.bottomLeftCorner(n, n) = -half_skew;  // = half_skew^T: antisymmetric
  out.improper_part = c.full - out.proper_part;
  return out;
}

namespace {

ImproprietySpectrum spectrum_from_paired_eigs(const Eigen::VectorXd& eigs_ascending) {
  const int n2 = static_cast<int>(eigs_ascending.size());
  const int n = n2 / 2;
  const double pair_tol =
      1e-6 * std::max(1.0, std::fabs(eigs_ascending(n2 - 1)));
  for (int k = 0; k < n; ++k) {
    if (std::fabs(eigs_ascending(k) + eigs_ascending(n2 - 1 - k)) > pair_tol)
      throw std::runtime_error("impropriety_spectrum: spectrum not +/- paired");
  }
  ImproprietySpectrum out;
  out.coeffs.resize(n);
  out.squared.resize(n);
  const double clamp_tol = 1e-8;
  for (int j = 0; j < n; ++j) {
    double l = eigs_ascending(n2 - 1 - j);  // descending nonnegative side
    if (l < 0.0) {
      if (l < -clamp_tol)
        throw std::runtime_error("impropriety_spectrum: eigenvalue outside [0,1]");
      l = 0.0;
    } else if (l > 1.0) {
      if (l > 1.0 + clamp_tol)
        throw std::runtime_error("impropriety_spectrum: eigenvalue outside [0,1]");
      l = 1.0;
    }
    out.coeffs(j) = l;
    out.squared(j) = l * l;
  }
  return out;
}

}  // namespace

Eigen::MatrixXd gamma_matrix(const AugmentedCovariance& c) {
  ProperImproperSplit split = split_proper_improper(c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(split.proper_part);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gamma_matrix: eigendecomposition failed");
  const Eigen::VectorXd& d = es.eigenvalues();  // ascending
  const double floor = c.n_dim * std::numeric_limits<double>::epsilon() *
                       std::max(d(d.size() - 1), 0.0);
  if (!(d(0) > floor))
    throw std::runtime_error("gamma_matrix: proper part not positive definite");
  Eigen::MatrixXd w =
      es.eigenvectors() * d.cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();
  Eigen::MatrixXd gamma = w * split.improper_part * w;
  return 0.5 * (gamma + gamma.transpose());
}

ImproprietySpectrum impropriety_spectrum(const Eigen::MatrixXd& gamma) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0 || gamma.rows() == 0)
    throw std::invalid_argument("impropriety_spectrum: need a square 2N x 2N matrix");
  const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("impropriety_spectrum: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("impropriety_spectrum: eigendecomposition failed");
  return spectrum_from_paired_eigs(es.eigenvalues());
}

GlrtStat glrt_statistic(const ImproprietySpectrum& spec) {
  GlrtStat out;
  double acc = 0.0;
  for (int i = 0; i < spec.squared.size(); ++i) {
    const double r = spec.squared(i);
    if (r >= 1.0) {
      out.saturated = true;
      out.T = 0.0;
      out.T_prime = std::numeric_limits<double>::infinity();
      return out;
    }
    acc -= std::log1p(-r);  // stable for r near 0
  }
  out.T_prime = acc;
  out.T = std::exp(-acc);
  return out;
}

RoyStat roy_statistic(const ImproprietySpectrum& spec) {
  RoyStat out;
  if (spec.squared.size() == 0)
    throw std::invalid_argument("roy_statistic: empty spectrum");
  out.r1 = spec.squared(0);
  if (out.r1 <= 0.0) {
    out.W = -std::numeric_limits<double>::infinity();
    out.saturated = true;
  } else if (out.r1 >= 1.0) {
    out.W = std::numeric_limits<double>::infinity();
    out.saturated = true;
  } else {
    out.W = std::log(out.r1) - std::log1p(-out.r1);
  }
  return out;
}

ImproprietySpectrum population_spectrum(const AugmentedCovariance& c) {
  return impropriety_spectrum(gamma_matrix(c));
}

ImproprietySpectrum sample_spectrum(const AugmentedSample& sample) {
  return impropriety_spectrum(gamma_matrix(sample_covariance(sample)));
}

}  // namespace improp
