#pragma once

#include <map>
#include <optional>
#include <vector>

#include "csalg/coefficients.hpp"

namespace csalg::linalg {

using Vec = std::vector<CycloScalar>;
using Mat = std::vector<Vec>;  // row major

struct Echelon {
  Mat rows;                 // reduced row echelon form, pivots equal 1
  std::vector<int> pivots;  // pivot column of each row
};

Echelon rref(Mat m, int ncols);
int rank(const Mat& m, int ncols);
// basis of {x : m x = 0}; each vector scaled so that its first nonzero entry is 1
std::vector<Vec> null_space(const Mat& m, int ncols);
std::optional<Mat> inverse(const Mat& m);
Mat multiply(const Mat& a, const Mat& b);
Vec apply(const Mat& a, const Vec& x);
Mat identity(int n);
bool is_zero(const Vec& v);

// Incremental sparse Gaussian elimination over Q(zeta_N).
class SparseSystem {
 public:
  using Row = std::map<int, CycloScalar>;

  explicit SparseSystem(int ncols) : ncols_(ncols) {}
  int ncols() const { return ncols_; }
  // returns false when the row was already in the span
  bool add_row(Row row);
  int rank() const { return static_cast<int>(pivots_.size()); }
  std::vector<Row> null_space() const;

 private:
  int ncols_;
  std::map<int, Row> pivots_;  // pivot column -> row with leading 1
};

}  // namespace csalg::linalg
