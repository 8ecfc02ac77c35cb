#include "improprietest/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace improp {

ModelSpec ModelSpec::proper(int N, int M) {
  ModelSpec s;
  s.variant = ModelVariant::proper_null;
  s.n_dim = N;
  s.m_obs = M;
  s.validate();
  return s;
}

ModelSpec ModelSpec::equi(int N, int M, double theta) {
  ModelSpec s;
  s.variant = ModelVariant::equi_correlated;
  s.n_dim = N;
  s.m_obs = M;
  s.theta = theta;
  s.validate();
  return s;
}

ModelSpec ModelSpec::spiked(int N, int M, double theta) {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(N);
  if (N > 0) e1(0) = 1.0;
  return spiked_dir(N, M, theta, std::move(e1));
}

ModelSpec ModelSpec::spiked_dir(int N, int M, double theta,
                                Eigen::VectorXd phi) {
  ModelSpec s;
  s.variant = ModelVariant::spiked;
  s.n_dim = N;
  s.m_obs = M;
  s.theta = theta;
  s.phi = std::move(phi);
  s.validate();
  return s;
}

ModelSpec ModelSpec::mixed(int N, int M, double theta, std::vector<double> p) {
  ModelSpec s;
  s.variant = ModelVariant::mixed_pca;
  s.n_dim = N;
  s.m_obs = M;
  s.theta = theta;
  s.p_fractions = std::move(p);
  s.validate();
  return s;
}

void ModelSpec::validate() const {
  if (n_dim < 1 || m_obs < 1)
    throw std::invalid_argument("ModelSpec: N and M must be positive");
  if (variant == ModelVariant::proper_null) return;
  if (!(theta > 0.0)) throw std::invalid_argument("ModelSpec: theta must be positive");
  if (variant == ModelVariant::spiked) {
    if (phi.size() != n_dim)
      throw std::invalid_argument("ModelSpec: phi must have length N");
    if (std::fabs(phi.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("ModelSpec: phi must have unit norm");
  }
  if (variant == ModelVariant::mixed_pca) {
    if (p_fractions.empty() ||
        static_cast<int>(p_fractions.size()) > n_dim)
      throw std::invalid_argument("ModelSpec: need 1..N variance fractions");
    double sum = 0.0;
    for (std::size_t k = 0; k < p_fractions.size(); ++k) {
      if (p_fractions[k] < 0.0)
        throw std::invalid_argument("ModelSpec: negative variance fraction");
      if (k > 0 && p_fractions[k] > p_fractions[k - 1] + 1e-12)
        throw std::invalid_argument("ModelSpec: fractions must be nonincreasing");
      sum += p_fractions[k];
    }
    if (std::fabs(sum - 1.0) > 1e-10)
      throw std::invalid_argument("ModelSpec: fractions must sum to 1");
    if (!(p_fractions[0] > 0.0))
      throw std::invalid_argument("ModelSpec: leading fraction must be positive");
  }
}

AugmentedSample generate(const ModelSpec& spec, RngStream& rng) {
  spec.validate();
  const int n = spec.n_dim, m = spec.m_obs;
  Eigen::MatrixXd data(m, 2 * n);
  const double root_theta = std::sqrt(spec.theta);
  switch (spec.variant) {
    case ModelVariant::proper_null:
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < 2 * n; ++j) data(i, j) = rng.normal();
      break;
    case ModelVariant::equi_correlated:
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) data(i, j) = rng.normal();          // s
        for (int j = 0; j < n; ++j) data(i, n + j) = rng.normal();      // t
        for (int j = 0; j < n; ++j) {
          double q = root_theta * rng.normal();
          data(i, j) += q;
          data(i, n + j) += q;
        }
      }
      break;
    case ModelVariant::spiked:
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) data(i, j) = rng.normal();
        for (int j = 0; j < n; ++j) data(i, n + j) = rng.normal();
        double w = root_theta * rng.normal();
        for (int j = 0; j < n; ++j) {
          data(i, j) += w * spec.phi(j);
          data(i, n + j) += w * spec.phi(j);
        }
      }
      break;
    case ModelVariant::mixed_pca: {
      const int npc = static_cast<int>(spec.p_fractions.size());
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) data(i, j) = rng.normal();
        for (int j = 0; j < n; ++j) data(i, n + j) = rng.normal();
        for (int k = 0; k < npc; ++k)
          data(i, n + k) +=
              std::sqrt(2.0 * spec.theta * spec.p_fractions[k]) * rng.normal();
      }
      break;
    }
  }
  return AugmentedSample(n, std::move(data));
}

AugmentedCovariance population_covariance(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n_dim;
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  switch (spec.variant) {
    case ModelVariant::proper_null:
      return AugmentedCovariance::from_blocks(eye, Eigen::MatrixXd::Zero(n, n),
                                              eye);
    case ModelVariant::equi_correlated:
      return AugmentedCovariance::from_blocks((1.0 + spec.theta) * eye,
                                              spec.theta * eye,
                                              (1.0 + spec.theta) * eye);
    case ModelVariant::spiked: {
      Eigen::MatrixXd outer = spec.theta * spec.phi * spec.phi.transpose();
      return AugmentedCovariance::from_blocks(eye + outer, outer, eye + outer);
    }
    case ModelVariant::mixed_pca: {
      Eigen::MatrixXd vv = eye;
      for (std::size_t k = 0; k < spec.p_fractions.size(); ++k)
        vv(k, k) += 2.0 * spec.theta * spec.p_fractions[k];
      return AugmentedCovariance::from_blocks(eye, Eigen::MatrixXd::Zero(n, n),
                                              vv);
    }
  }
  throw std::logic_error("population_covariance: unknown variant");
}

PopulationTruth population_truth(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n_dim;
  PopulationTruth out;
  out.lambdas = Eigen::VectorXd::Zero(n);
  switch (spec.variant) {
    case ModelVariant::proper_null:
      break;
    case ModelVariant::equi_correlated:
      out.lambdas.setConstant(spec.theta / (1.0 + spec.theta));
      break;
    case ModelVariant::spiked:
      out.lambdas(0) = spec.theta / (1.0 + spec.theta);
      break;
    case ModelVariant::mixed_pca:
      for (std::size_t k = 0; k < spec.p_fractions.size(); ++k) {
        double tp = spec.theta * spec.p_fractions[k];
        out.lambdas(static_cast<int>(k)) = tp / (1.0 + tp);
      }
      std::sort(out.lambdas.data(), out.lambdas.data() + n, std::greater<>());
      break;
  }
  out.lambda_sq = out.lambdas.cwiseProduct(out.lambdas);
  return out;
}

double theta_for_lambda(double target_lambda_sq, ModelVariant variant,
                        double p1) {
  if (variant == ModelVariant::proper_null)
    throw std::invalid_argument("theta_for_lambda: proper model has no theta");
  if (!(target_lambda_sq > 0.0 && target_lambda_sq < 1.0 - 1e-9))
    throw std::domain_error("theta_for_lambda: target must be in (0, 1 - 1e-9)");
  if (!(p1 > 0.0 && p1 <= 1.0))
    throw std::domain_error("theta_for_lambda: p1 must be in (0, 1]");
  double lambda = std::sqrt(target_lambda_sq);
  double scale = (variant == ModelVariant::mixed_pca) ? p1 : 1.0;
  return lambda / (scale * (1.0 - lambda));
}

}  // namespace improp
