#pragma once

// Seeded random streams for the Monte-Carlo machinery. Every sampler in
// the library takes an explicit RngStream; parallel code derives one
// independent stream per replicate from a master seed, so results do not
// depend on the worker count.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace improp {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(mix_seed(seed)) {}

  // Independent substream `index` of a master seed (replicate streams).
  static RngStream derived(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    std::uint64_t t = splitmix64(s);
    return RngStream(t ^ splitmix64(s));
  }

  // uniform on the open interval (0, 1)
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal (Marsaglia polar, one value cached)
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
  }

  // Gamma(shape, scale 1) by Marsaglia-Tsang, with the a < 1 boost.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
    if (shape < 1.0)
      return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Beta(a, b) = G_a / (G_a + G_b)
  double beta(double a, double b) {
    double ga = gamma(a);
    double gb = gamma(b);
    return ga / (ga + gb);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  static std::uint64_t mix_seed(std::uint64_t seed) {
    return splitmix64(seed);  // decorrelate adjacent raw seeds
  }

  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace improp
