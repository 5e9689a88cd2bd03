#include "csalg/centroid.hpp"

#include <algorithm>
#include <numeric>

#include "csalg/errors.hpp"

namespace csalg {

namespace {

using linalg::SparseSystem;
using linalg::Vec;

Rational abs_q(const FracExponent& e) {
  Rational r = e.to_rational();
  return r < 0 ? Rational(-r) : r;
}

// every element D^(j) b_k (x) t^e with |e| <= W and j <= cap
std::vector<WindowElem> window(const LoopAlgebra& L, const Rational& W, int cap) {
  std::vector<WindowElem> out;
  for (int k = 0; k < int(L.basis.size()); ++k) {
    Rational r(L.basis[k].residue, L.order);
    r.canonicalize();
    mpz_class lo, hi;
    Rational a = -W - r, b = W - r;
    mpz_cdiv_q(lo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    for (long i = lo.get_si(); i <= hi.get_si(); ++i) {
      FracExponent e = FracExponent(L.basis[k].residue, L.order) + FracExponent(i);
      for (int j = 0; j <= cap; ++j) out.push_back({k, j, e});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

ConfElt to_conf(const LoopAlgebra& L, const WindowElem& x) {
  ConfElt r;
  const Vec& v = L.basis.at(x.vec).coords;
  for (size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero()) r.add_term(TermKey{int(g), x.dpow, x.exp}, v[g]);
  return r.with_level(L.order);
}

LoopCoords loop_coords(const LoopAlgebra& L, const ConfElt& x) {
  int n = L.algebra().size();
  std::map<std::pair<int, FracExponent>, Vec> parts;
  for (auto& [k, c] : x.terms()) {
    auto& v = parts[{k.dpow, k.exp}];
    if (v.empty()) v.resize(n);
    v[k.gen] += c;
  }
  LoopCoords out;
  for (auto& [key, v] : parts) {
    Vec e = L.eigen_coords(v);
    for (int k = 0; k < n; ++k) {
      if (e[k].is_zero()) continue;
      if (!L.in_coset(k, key.second))
        throw DomainError("element is not in the loop algebra (" + L.basis[k].label + " at t^" + key.second.str() + ")");
      out[{k, key.first, key.second}] += e[k];
    }
  }
  return out;
}

LoopCoords CentroidSolution::apply(const WindowElem& x) const {
  auto it = columns.find(x);
  if (it == columns.end()) throw DomainError("element outside the interior window");
  return it->second;
}

std::vector<CentroidSolution> centroid_basis(const LoopAlgebra& L, const Rational& W, const Rational& Wi,
                                             const CentroidOptions& opt) {
  if (Wi < 0) throw DomainError("interior window must be non-negative");
  if (W < Wi + 1)
    throw DomainError("window " + W.get_str() + " too small for interior " + Wi.get_str() + " (need W >= W' + 1)");
  if (opt.interior_dpow > opt.dpow_cap) throw DomainError("interior D-power exceeds the window cap");
  const AlgebraDef& A = L.algebra();

  std::vector<WindowElem> cod = window(L, W, opt.dpow_cap);
  std::map<WindowElem, int> idx;
  for (int i = 0; i < int(cod.size()); ++i) idx[cod[i]] = i;
  int N = int(cod.size());
  auto inside = [](const WindowElem& e, const Rational& w, int cap) { return e.dpow <= cap && abs_q(e.exp) <= w; };
  Rational Wd = Wi + 1;
  std::vector<char> in_domain(N), in_interior(N);
  for (int i = 0; i < N; ++i) {
    in_domain[i] = inside(cod[i], Wd, opt.dpow_cap);
    in_interior[i] = inside(cod[i], Wi, opt.interior_dpow);
  }
  auto parity = [&](int i) { return L.basis[cod[i].vec].parity; };

  // unknown chi[z][y]: y in the domain, z in the codomain, same parity
  std::vector<int> unknown(size_t(N) * N, -1);
  std::vector<std::pair<int, int>> unknowns;
  for (int y = 0; y < N; ++y) {
    if (!in_domain[y]) continue;
    for (int z = 0; z < N; ++z) {
      if (parity(z) != parity(y)) continue;
      unknown[size_t(z) * N + y] = int(unknowns.size());
      unknowns.emplace_back(z, y);
    }
  }
  auto var = [&](int z, int y) { return unknown[size_t(z) * N + y]; };

  // multipliers a = b_k (x) t^e, |e| <= 1
  std::vector<WindowElem> mult;
  for (auto& e : window(L, 1, 0)) mult.push_back(e);

  using Row = SparseSystem::Row;
  std::vector<Row> rows;
  for (auto& a : mult) {
    ConfElt ca = to_conf(L, a);
    // products of a with every codomain element, by n
    std::vector<std::map<int, LoopCoords>> prod(N);
    int max_n = -1;
    for (int x = 0; x < N; ++x) {
      LambdaPoly p = lambda_bracket(A, ca, to_conf(L, cod[x]));
      for (auto& [n, c] : p.coeffs()) {
        prod[x][n] = loop_coords(L, c);
        max_n = std::max(max_n, n);
      }
    }
    for (int x = 0; x < N; ++x) {
      if (!in_interior[x]) continue;
      for (int n = 0; n <= max_n; ++n) {
        // left side chi(a_(n) x) needs a_(n) x inside the domain
        std::vector<std::pair<int, CycloScalar>> lhs;
        bool ok = true;
        if (auto it = prod[x].find(n); it != prod[x].end()) {
          for (auto& [e, c] : it->second) {
            auto j = idx.find(e);
            if (j == idx.end() || !in_domain[j->second]) {
              ok = false;
              break;
            }
            lhs.emplace_back(j->second, c);
          }
        }
        if (!ok) continue;
        std::map<WindowElem, Row> eq;
        for (auto& [y, c] : lhs)
          for (int z = 0; z < N; ++z) {
            int v = var(z, y);
            if (v >= 0) eq[cod[z]][v] += c;
          }
        for (int xp = 0; xp < N; ++xp) {
          int v = var(xp, x);
          if (v < 0) continue;
          auto it = prod[xp].find(n);
          if (it == prod[xp].end()) continue;
          for (auto& [z, c] : it->second) eq[z][v] -= c;
        }
        for (auto& [z, row] : eq) {
          for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
    }
  }

  // independent blocks of unknowns
  int U = int(unknowns.size());
  UnionFind uf(U);
  for (auto& r : rows)
    for (auto& [v, c] : r) uf.unite(v, r.begin()->first);
  std::map<int, std::vector<int>> comp_vars;
  for (int v = 0; v < U; ++v) comp_vars[uf.find(v)].push_back(v);
  std::map<int, std::vector<const Row*>> comp_rows;
  for (auto& r : rows) comp_rows[uf.find(r.begin()->first)].push_back(&r);

  // null vectors restricted to interior sources, then a basis of their span
  std::vector<Row> projected;
  for (auto& [root, vars] : comp_vars) {
    bool touches_interior = false;
    for (int v : vars) touches_interior |= bool(in_interior[unknowns[v].second]);
    if (!touches_interior) continue;
    std::map<int, int> local;
    for (int i = 0; i < int(vars.size()); ++i) local[vars[i]] = i;
    SparseSystem sys(int(vars.size()));
    for (const Row* r : comp_rows[root]) {
      Row lr;
      for (auto& [v, c] : *r) lr[local[v]] = c;
      sys.add_row(std::move(lr));
    }
    for (auto& ns : sys.null_space()) {
      Row p;
      for (auto& [i, c] : ns)
        if (in_interior[unknowns[vars[i]].second]) p[vars[i]] = c;
      if (!p.empty()) projected.push_back(std::move(p));
    }
  }
  SparseSystem span(U);
  std::vector<Row> basis;
  for (auto& p : projected)
    if (span.add_row(p)) basis.push_back(p);

  std::vector<CentroidSolution> out;
  for (auto& b : basis) {
    CentroidSolution s;
    for (int y = 0; y < N; ++y)
      if (in_interior[y]) s.columns[cod[y]];
    for (auto& [v, c] : b) s.columns[cod[unknowns[v].second]][cod[unknowns[v].first]] = c;
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<LaurentElt> is_scalar_action(const CentroidSolution& chi) {
  std::optional<LaurentElt> r;
  for (auto& [y, img] : chi.columns) {
    LaurentElt cand;
    for (auto& [z, c] : img) {
      if (z.vec != y.vec || z.dpow != y.dpow) return std::nullopt;
      cand += LaurentElt::monomial(c, z.exp - y.exp);
    }
    if (!r) {
      r = cand;
    } else if (!(*r == cand)) {
      return std::nullopt;
    }
  }
  return r;
}

CentroidSolution scalar_action(const LoopAlgebra& L, const LaurentElt& r, const Rational& Wi, const CentroidOptions& opt) {
  CentroidSolution s;
  for (auto& y : window(L, Wi, opt.interior_dpow)) {
    LoopCoords& img = s.columns[y];
    for (auto& [q, c] : r.terms()) img[{y.vec, y.dpow, y.exp + q}] += c;
  }
  return s;
}

}  // namespace csalg
