#pragma once

#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "csalg/coefficients.hpp"

namespace testsupport {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(CSALG_DATA_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(CSALG_GOLDEN_DIR) + "/" + name; }

// numeric value of an element of Q(zeta_N), zeta_N = exp(2 pi i / N)
inline std::complex<double> numeric(const csalg::CycloScalar& x) {
  std::complex<double> r = 0;
  int n = x.field() ? x.field()->conductor() : 1;
  for (auto& [e, c] : x.coeffs()) r += c.get_d() * std::polar(1.0, 2 * M_PI * e / n);
  return r;
}

inline bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) { return std::abs(a - b) < tol; }

}  // namespace testsupport
