#include "improprietest/tracy_widom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace improp {

namespace {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

Tw1Table Tw1Table::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("tw1 table: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  if (fnv1a64(bytes) != kChecksumV1)
    throw std::runtime_error("tw1 table: checksum mismatch for " + path);

  Tw1Table t;
  std::istringstream lines(bytes);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double x, f;
    if (!(row >> x >> f))
      throw std::runtime_error("tw1 table: malformed row: " + line);
    t.x_.push_back(x);
    t.f_.push_back(f);
  }
  if (t.x_.size() < 4) throw std::runtime_error("tw1 table: too few rows");
  for (std::size_t i = 1; i < t.x_.size(); ++i) {
    if (t.x_[i] <= t.x_[i - 1])
      throw std::runtime_error("tw1 table: grid not increasing");
    if (t.f_[i] < t.f_[i - 1])
      throw std::runtime_error("tw1 table: CDF not monotone");
  }

  // Fritsch-Carlson slopes: monotone by construction
  const std::size_t n = t.x_.size();
  t.d_.resize(n);
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = t.x_[i + 1] - t.x_[i];
    delta[i] = (t.f_[i + 1] - t.f_[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      t.d_[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      t.d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    // one-sided three-point estimate, clamped for monotonicity
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::fabs(d) > 3.0 * std::fabs(d0))
      return 3.0 * d0;
    return d;
  };
  t.d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  t.d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return t;
}

const Tw1Table& Tw1Table::builtin() {
  static const Tw1Table table =
      load_file(std::string(IMPROPRIETEST_ASSET_DIR) + "/" + kAssetName);
  return table;
}

double Tw1Table::cdf(double x) const {
  if (std::isnan(x)) throw std::domain_error("tw1_cdf: NaN argument");
  if (x <= x_.front()) return f_.front();
  if (x >= x_.back()) return f_.back();
  std::size_t hi =
      std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  std::size_t lo = hi - 1;
  double h = x_[hi] - x_[lo];
  double s = (x - x_[lo]) / h;
  double s2 = s * s, s3 = s2 * s;
  double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  double v = h00 * f_[lo] + h10 * h * d_[lo] + h01 * f_[hi] + h11 * h * d_[hi];
  return std::min(1.0, std::max(0.0, v));
}

double Tw1Table::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("tw1_quantile: prob must be in (0, 1)");
  if (p < f_.front() || p > f_.back())
    throw std::domain_error("tw1_quantile: prob outside tabulated range");
  double lo = x_.front(), hi = x_.back();
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double tw1_cdf(double x) { return Tw1Table::builtin().cdf(x); }
double tw1_quantile(double prob) { return Tw1Table::builtin().quantile(prob); }

}  // namespace improp
