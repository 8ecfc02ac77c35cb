#include "improprietest/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace improp {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& token, double* out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return false;
  *out = v;
  return true;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trimmed(cell));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool is_complex_token(const std::string& t) {
  if (t.empty()) return false;
  char last = t.back();
  if (last == 'i' || last == 'j' || last == 'I' || last == 'J') return true;
  // a+bi split sign not after an exponent marker
  for (std::size_t k = 1; k + 1 < t.size(); ++k)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E')
      return false;  // real numbers never carry an interior sign like that
  return false;
}

}  // namespace

std::complex<double> parse_complex(const std::string& raw) {
  std::string t = trimmed(raw);
  if (t.empty()) throw std::invalid_argument("empty complex token");

  char last = t.back();
  bool has_unit = (last == 'i' || last == 'j' || last == 'I' || last == 'J');

  if (!has_unit) {
    double re;
    if (!parse_real(t, &re))
      throw std::invalid_argument("bad numeric token: '" + raw + "'");
    return {re, 0.0};
  }

  // strip the unit, then find the sign separating real and imaginary parts:
  // the last '+' or '-' that is not the leading sign and not part of an
  // exponent ("1e-3+2i")
  std::string body = t.substr(0, t.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }

  double re = 0.0, im = 0.0;
  if (cut == std::string::npos) {
    // pure imaginary: "2i", "-i", "+1.5e2j", "i"
    std::string imtok = body;
    if (imtok.empty() || imtok == "+")
      im = 1.0;
    else if (imtok == "-")
      im = -1.0;
    else if (!parse_real(imtok, &im))
      throw std::invalid_argument("bad complex token: '" + raw + "'");
  } else {
    std::string retok = body.substr(0, cut);
    std::string imtok = body.substr(cut);  // keeps the sign
    if (!parse_real(retok, &re))
      throw std::invalid_argument("bad complex token: '" + raw + "'");
    if (imtok == "+")
      im = 1.0;
    else if (imtok == "-")
      im = -1.0;
    else if (!parse_real(imtok, &im))
      throw std::invalid_argument("bad complex token: '" + raw + "'");
  }
  return {re, im};
}

AugmentedSample load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  bool skipped_header = false;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    auto cells = split_line(t);
    if (first) {
      first = false;
      // header sniff: a line where no cell parses as real or complex
      bool any_numeric = false;
      for (const auto& c : cells) {
        double v;
        if (parse_real(c, &v)) { any_numeric = true; break; }
        try { parse_complex(c); any_numeric = true; break; } catch (...) {}
      }
      if (!any_numeric) { skipped_header = true; continue; }
    }
    rows.push_back(std::move(cells));
  }
  (void)skipped_header;
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  const std::size_t cols = rows[0].size();
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r].size() != cols)
      throw std::runtime_error(path + ": ragged row " + std::to_string(r + 1) +
                               " (" + std::to_string(rows[r].size()) + " vs " +
                               std::to_string(cols) + " columns)");

  // column layout: complex if any cell anywhere carries an i/j unit (a
  // complex column may still contain pure-real entries on some rows)
  bool complex_layout = false;
  for (const auto& row : rows) {
    for (const auto& c : row)
      if (is_complex_token(c)) { complex_layout = true; break; }
    if (complex_layout) break;
  }

  const int m = static_cast<int>(rows.size());
  if (complex_layout) {
    const int n = static_cast<int>(cols);
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic> z(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        try {
          z(i, j) = parse_complex(rows[i][j]);
        } catch (const std::exception& e) {
          throw std::runtime_error(path + ": row " + std::to_string(i + 1) +
                                   ", column " + std::to_string(j + 1) + ": " +
                                   e.what());
        }
      }
    return AugmentedSample::from_complex(z);
  }

  if (cols % 2 != 0)
    throw std::runtime_error(path + ": real layout needs an even column " +
                             "count (2N), got " + std::to_string(cols));
  const int n2 = static_cast<int>(cols);
  Eigen::MatrixXd data(m, n2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n2; ++j) {
      double v;
      if (!parse_real(rows[i][j], &v))
        throw std::runtime_error(path + ": row " + std::to_string(i + 1) +
                                 ", column " + std::to_string(j + 1) +
                                 ": bad numeric token '" + rows[i][j] + "'");
      data(i, j) = v;
    }
  return AugmentedSample(n2 / 2, std::move(data));
}

void save_csv(const std::string& path, const AugmentedSample& sample,
              bool complex_layout) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[64];
  const int n = sample.n_dim;
  for (int i = 0; i < sample.m_obs; ++i) {
    if (complex_layout) {
      for (int j = 0; j < n; ++j) {
        double re = sample.data(i, j), im = sample.data(i, n + j);
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", re, im);
        out << (j ? "," : "") << buf;
      }
    } else {
      for (int j = 0; j < 2 * n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", sample.data(i, j));
        out << (j ? "," : "") << buf;
      }
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace improp
