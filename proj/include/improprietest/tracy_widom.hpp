#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace improp {

// CDF of the beta=1 Tracy-Widom law, backed by a tabulated grid with
// monotone cubic (Fritsch-Carlson) interpolation.  The table ships as a
// plain-text asset; its checksum is pinned here and verified at load.
class Tw1Table {
 public:
  static constexpr std::uint64_t kChecksumV1 = 0x966C79D2B7AD4465ull;
  static constexpr const char* kAssetName = "tw1_cdf_beta1_v1.txt";

  // parse + verify a table file (throws std::runtime_error on checksum or
  // format trouble)
  static Tw1Table load_file(const std::string& path);
  // the copy shipped under the asset directory, loaded once
  static const Tw1Table& builtin();

  double cdf(double x) const;       // clamped to the grid's end values outside
  double quantile(double p) const;  // domain error outside (cdf(min), cdf(max))

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  double cdf_min() const { return f_.front(); }
  double cdf_max() const { return f_.back(); }
  std::size_t size() const { return x_.size(); }

 private:
  Tw1Table() = default;
  std::vector<double> x_, f_, d_;  // grid, CDF values, interpolant slopes
};

double tw1_cdf(double x);
double tw1_quantile(double prob);

}  // namespace improp
