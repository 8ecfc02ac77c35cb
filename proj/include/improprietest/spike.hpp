#pragma once

#include <stdexcept>

namespace improp {

// Phase transition of the largest squared coefficient under a rank-one spike.
struct SpikeMap {
  double gamma;
  double rho_c;   // detection threshold 1/(gamma - 1)
  double edge_c;  // bulk edge 4(gamma - 1)/gamma^2
  explicit SpikeMap(double gamma_ratio) : gamma(gamma_ratio) {
    if (!(gamma_ratio > 1.0))
      throw std::domain_error("SpikeMap: gamma must exceed 1");
    rho_c = 1.0 / (gamma_ratio - 1.0);
    edge_c = 4.0 * (gamma_ratio - 1.0) / (gamma_ratio * gamma_ratio);
  }
};

struct SpikeLimit {
  bool above_threshold;
  double limit;  // a.s. limit of r1
};

inline SpikeLimit spike_map(const SpikeMap& map, double lambda_sq) {
  if (!(lambda_sq >= 0.0 && lambda_sq <= 1.0))
    throw std::domain_error("spike_map: lambda^2 must be in [0, 1]");
  if (lambda_sq <= map.rho_c) return {false, map.edge_c};
  double g = map.gamma;
  double w = (g - 1.0) / g + 1.0 / (g * lambda_sq);
  return {true, lambda_sq * w * w};
}

}  // namespace improp
