#include "csalg/linalg.hpp"

#include "csalg/errors.hpp"

namespace csalg::linalg {

Echelon rref(Mat m, int ncols) {
  Echelon e;
  int r = 0;
  int nrows = static_cast<int>(m.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int piv = r;
    while (piv < nrows && m[piv][c].is_zero()) ++piv;
    if (piv == nrows) continue;
    std::swap(m[piv], m[r]);
    CycloScalar inv = m[r][c].inverse();
    for (int k = c; k < ncols; ++k) m[r][k] *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      CycloScalar f = m[i][c];
      for (int k = c; k < ncols; ++k)
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

int rank(const Mat& m, int ncols) { return static_cast<int>(rref(m, ncols).pivots.size()); }

std::vector<Vec> null_space(const Mat& m, int ncols) {
  Echelon e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(ncols);
    v[f] = CycloScalar(1);
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    for (auto& x : v)
      if (!x.is_zero()) {
        CycloScalar inv = x.inverse();
        for (auto& y : v) y *= inv;
        break;
      }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Mat> inverse(const Mat& m) {
  int n = static_cast<int>(m.size());
  Mat aug(n, Vec(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = CycloScalar(1);
  }
  Echelon e = rref(aug, n);
  if (int(e.pivots.size()) < n) return std::nullopt;
  // rref only reduced the left block; finish the right block
  Echelon full = rref(aug, 2 * n);
  Mat inv(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = full.rows[i][n + j];
  return inv;
}

Mat multiply(const Mat& a, const Mat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat r(n, Vec(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

Vec apply(const Mat& a, const Vec& x) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero() && !x[j].is_zero()) r[i] += a[i][j] * x[j];
  return r;
}

Mat identity(int n) {
  Mat r(n, Vec(n));
  for (int i = 0; i < n; ++i) r[i][i] = CycloScalar(1);
  return r;
}

bool is_zero(const Vec& v) {
  for (auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool SparseSystem::add_row(Row row) {
  for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
  while (!row.empty()) {
    auto lead = row.begin();
    auto p = pivots_.find(lead->first);
    if (p == pivots_.end()) {
      CycloScalar inv = lead->second.inverse();
      for (auto& [c, v] : row) v *= inv;
      int col = lead->first;
      pivots_.emplace(col, std::move(row));
      return true;
    }
    CycloScalar f = lead->second;
    for (auto& [c, v] : p->second) {
      auto [slot, fresh] = row.try_emplace(c, -(f * v));
      if (!fresh) {
        slot->second -= f * v;
        if (slot->second.is_zero()) row.erase(slot);
      }
    }
  }
  return false;
}

std::vector<SparseSystem::Row> SparseSystem::null_space() const {
  // back substitution into reduced form, highest pivot first
  std::map<int, Row> red;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Row row = it->second;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [c, v] : row) {
        if (c == it->first) continue;
        auto p = red.find(c);
        if (p == red.end()) continue;
        CycloScalar f = v;
        for (auto& [c2, v2] : p->second) {
          auto [slot, fresh] = row.try_emplace(c2, -(f * v2));
          if (!fresh) {
            slot->second -= f * v2;
            if (slot->second.is_zero()) row.erase(slot);
          }
        }
        changed = true;
        break;
      }
    }
    red.emplace(it->first, std::move(row));
  }
  std::vector<Row> out;
  for (int f = 0; f < ncols_; ++f) {
    if (red.count(f)) continue;
    Row v;
    v[f] = CycloScalar(1);
    for (auto& [p, row] : red) {
      auto it = row.find(f);
      if (it != row.end()) v[p] = -it->second;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace csalg::linalg
