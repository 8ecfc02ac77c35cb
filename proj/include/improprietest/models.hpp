#pragma once

#include <Eigen/Dense>
#include <vector>

#include "improprietest/augmented.hpp"
#include "improprietest/rng.hpp"

namespace improp {

enum class ModelVariant { proper_null, equi_correlated, spiked, mixed_pca };

struct ModelSpec {
  ModelVariant variant = ModelVariant::proper_null;
  int n_dim = 0;
  int m_obs = 0;
  double theta = 0.0;
  Eigen::VectorXd phi;             // spiked: unit direction
  std::vector<double> p_fractions; // mixed: explained-variance fractions

  static ModelSpec proper(int N, int M);
  static ModelSpec equi(int N, int M, double theta);
  static ModelSpec spiked(int N, int M, double theta);  // phi = e1
  static ModelSpec spiked_dir(int N, int M, double theta, Eigen::VectorXd phi);
  static ModelSpec mixed(int N, int M, double theta, std::vector<double> p);

  void validate() const;
};

struct PopulationTruth {
  Eigen::VectorXd lambdas;    // descending, length N
  Eigen::VectorXd lambda_sq;  // element squares
};

AugmentedSample generate(const ModelSpec& spec, RngStream& rng);
AugmentedCovariance population_covariance(const ModelSpec& spec);
PopulationTruth population_truth(const ModelSpec& spec);

// invert lambda(theta) so power sweeps can be parameterized by lambda^2;
// p1 is the leading variance fraction (mixed variant only)
double theta_for_lambda(double target_lambda_sq, ModelVariant variant,
                        double p1 = 1.0);

}  // namespace improp
