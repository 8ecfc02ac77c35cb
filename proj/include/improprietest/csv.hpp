#pragma once

#include <string>

#include "improprietest/augmented.hpp"

namespace improp {

// One observation per line. Either 2N real columns (u_1..u_N, v_1..v_N) or
// N complex columns like "3.1+2.7i" / "1-0.5j" / "2i" / "4". A first line
// that fails to parse numerically is treated as a header and skipped.
AugmentedSample load_csv(const std::string& path);

// Parse one complex token; used by the loader and exposed for tests.
std::complex<double> parse_complex(const std::string& token);

void save_csv(const std::string& path, const AugmentedSample& sample,
              bool complex_layout = false);

}  // namespace improp
