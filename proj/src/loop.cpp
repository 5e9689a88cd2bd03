#include "csalg/loop.hpp"

#include <algorithm>
#include <set>

#include "csalg/errors.hpp"

namespace csalg {

namespace {

using linalg::Mat;
using linalg::Vec;

std::int64_t floor_q(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

std::int64_t ceil_q(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

std::string coef_prefix(const CycloScalar& c) {
  if (c == CycloScalar(1)) return "";
  if (c == CycloScalar(-1)) return "-";
  std::string s = c.str();
  if (s.find(' ') != std::string::npos) return "(" + s + ")*";
  return s + "*";
}

template <class Items>
std::string join_terms(const Items& items) {
  // items: vector of (coefficient, symbol)
  if (items.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [c, sym] : items) {
    if (first) {
      out += coef_prefix(c) + sym;
      first = false;
    } else if (c.leading_negative()) {
      out += " - " + coef_prefix(-c) + sym;
    } else {
      out += " + " + coef_prefix(c) + sym;
    }
  }
  return out;
}

Mat sigma_matrix(const GenMorphism& sigma) {
  const AlgebraDef& A = sigma.algebra();
  int n = A.size();
  Mat M(n, Vec(n));
  for (int j = 0; j < n; ++j) {
    for (auto& [k, c] : sigma.image(j).terms()) {
      if (k.dpow != 0 || !k.exp.is_zero())
        throw DomainError("twist must send every generator into V (x) 1; " + A.generators()[j].name + " does not");
      M[k.gen][j] = c;
    }
  }
  return M;
}

Mat minus_scalar(Mat M, const CycloScalar& x) {
  for (size_t i = 0; i < M.size(); ++i) M[i][i] -= x;
  return M;
}

Mat columns(const Mat& M, const std::vector<int>& cols) {
  Mat r(M.size(), Vec(cols.size()));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r[i][j] = M[i][cols[j]];
  return r;
}

int leading_index(const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return static_cast<int>(i);
  return -1;
}

std::string vector_label(const AlgebraDef& A, const Vec& v) {
  std::vector<std::pair<CycloScalar, std::string>> items;
  for (size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero()) items.emplace_back(v[g], A.generators()[g].name);
  if (items.size() == 1 && items[0].first == CycloScalar(1)) return items[0].second;
  return "(" + join_terms(items) + ")";
}

ConfElt vector_elt(const LoopAlgebra& L, int k) {
  ConfElt x;
  const Vec& v = L.basis.at(k).coords;
  for (size_t g = 0; g < v.size(); ++g)
    if (!v[g].is_zero()) x.add_term(TermKey{int(g), 0, {}}, v[g]);
  return x;
}

FracExponent to_exponent(const Rational& q) {
  return FracExponent(mpz_class(q.get_num()).get_si(), mpz_class(q.get_den()).get_si());
}

void check_coset(const LoopAlgebra& L, int k, const FracExponent& mu) {
  if (k < 0 || k >= int(L.basis.size())) throw DomainError("mode vector index out of range");
  if (!L.in_coset(k, mu))
    throw DomainError("mode " + mu.str() + " of " + L.basis[k].label + " is not in " + std::to_string(L.basis[k].residue) +
                      "/" + std::to_string(L.order) + " + Z");
}

}  // namespace

std::vector<int> LoopAlgebra::residue_basis(int i) const {
  std::vector<int> r;
  for (size_t k = 0; k < basis.size(); ++k)
    if (basis[k].residue == i) r.push_back(int(k));
  return r;
}

linalg::Vec LoopAlgebra::eigen_coords(const linalg::Vec& v) const {
  if (Pinv.empty()) throw DomainError("loop algebra has no inverse eigenbasis matrix");
  return linalg::apply(Pinv, v);
}

std::optional<int> LoopAlgebra::find_label(const std::string& label) const {
  for (size_t k = 0; k < basis.size(); ++k)
    if (basis[k].label == label) return int(k);
  return std::nullopt;
}

bool LoopAlgebra::in_coset(int k, const FracExponent& mu) const {
  FracExponent d = mu - FracExponent(basis.at(k).residue, order);
  return d.is_integer();
}

LoopAlgebra eigenspaces(const GenMorphism& sigma, int m) { return eigenspaces(sigma.algebra_ptr(), sigma, m); }

LoopAlgebra eigenspaces(std::shared_ptr<const AlgebraDef> A, const GenMorphism& sigma, int m) {
  if (m <= 0) throw DomainError("order must be positive");
  if (!(sigma.algebra() == *A)) throw DomainError("twist is defined on a different algebra");
  if (sigma.level() != 1) throw DomainError("twist must be defined over k (level 1)");
  LoopAlgebra L;
  L.base = A;
  L.order = m;
  L.sigma = sigma_matrix(sigma);
  int n = A->size();

  Mat pw = linalg::identity(n);
  for (int i = 0; i < m; ++i) pw = linalg::multiply(L.sigma, pw);
  if (pw != linalg::identity(n)) throw DomainError("sigma^" + std::to_string(m) + " is not the identity");

  CycloScalar xi = root_of_unity(m, A->field());
  // generators grouped by parity and weight
  std::map<std::pair<int, std::string>, std::vector<int>> groups;
  for (int g = 0; g < n; ++g) {
    auto& info = A->generators()[g];
    groups[{int(info.parity), info.weight ? info.weight->get_str() : "?"}].push_back(g);
  }

  int total = 0;
  for (int i = 0; i < m; ++i) {
    Mat N = minus_scalar(L.sigma, xi.pow(i));
    std::vector<Vec> full = linalg::null_space(N, n);
    std::vector<std::pair<Vec, std::optional<Rational>>> chosen;
    std::vector<std::pair<Vec, std::optional<Rational>>> refined;
    for (auto& [key, cols] : groups) {
      for (Vec& w : linalg::null_space(columns(N, cols), int(cols.size()))) {
        Vec v(n);
        for (size_t j = 0; j < cols.size(); ++j) v[cols[j]] = w[j];
        refined.emplace_back(std::move(v), A->generators()[cols[0]].weight);
      }
    }
    if (refined.size() == full.size()) {
      chosen = std::move(refined);
    } else {
      for (auto& v : full) chosen.emplace_back(v, std::nullopt);
    }
    std::stable_sort(chosen.begin(), chosen.end(),
                     [](auto& a, auto& b) { return leading_index(a.first) < leading_index(b.first); });
    for (auto& [v, w] : chosen) {
      EigenVector e;
      e.residue = i;
      e.parity = A->parity(leading_index(v));
      e.weight = w;
      e.label = vector_label(*A, v);
      e.coords = std::move(v);
      L.basis.push_back(std::move(e));
    }
    total += int(full.size());
  }
  if (total != n) throw DomainError("sigma is not diagonalizable with " + std::to_string(m) + "-th root of unity eigenvalues");

  L.P.assign(n, Vec(n));
  for (int k = 0; k < n; ++k)
    for (int g = 0; g < n; ++g) L.P[g][k] = L.basis[k].coords[g];
  auto inv = linalg::inverse(L.P);
  if (!inv) throw DomainError("eigenvectors do not span V");
  L.Pinv = std::move(*inv);
  return L;
}

bool loop_membership(const LoopAlgebra& L, const ConfElt& x) {
  int n = L.algebra().size();
  std::map<std::pair<int, FracExponent>, Vec> parts;
  for (auto& [k, c] : to_hat_basis(x)) {
    auto& v = parts[{k.dpow, k.exp}];
    if (v.empty()) v.resize(n);
    v[k.gen] += c;
  }
  CycloScalar xi = L.xi();
  for (auto& [key, v] : parts) {
    FracExponent mq = key.second * L.order;
    if (!mq.is_integer()) return false;
    std::int64_t i = mq.num() % L.order;
    if (i < 0) i += L.order;
    Vec img = linalg::apply(minus_scalar(L.sigma, xi.pow(long(i))), v);
    if (!linalg::is_zero(img)) return false;
  }
  return true;
}

ClosureReport check_loop_closure(const LoopAlgebra& L) {
  ClosureReport rep;
  const AlgebraDef& A = L.algebra();
  std::vector<std::pair<ConfElt, std::string>> elems;
  for (size_t k = 0; k < L.basis.size(); ++k)
    for (int a = -1; a <= 1; ++a)
      for (int d = 0; d <= 1; ++d) {
        FracExponent mu = FracExponent(L.basis[k].residue, L.order) + FracExponent(a);
        ConfElt x = (LaurentElt::t(mu) * partial_A(vector_elt(L, int(k)), d)).with_level(L.order);
        elems.emplace_back(std::move(x), (d ? "D" : "") + L.basis[k].label + " t^{" + mu.str() + "}");
      }
  for (auto& [x, nx] : elems)
    for (auto& [y, ny] : elems) {
      LambdaPoly p = lambda_bracket(A, x, y);
      for (auto& [n, c] : p.coeffs()) {
        ++rep.products;
        if (!loop_membership(L, c)) {
          rep.closed = false;
          rep.failures.push_back(nx + " (" + std::to_string(n) + ") " + ny);
        }
      }
    }
  return rep;
}

SplitReport split_check(const LoopAlgebra& L, const Rational& W) {
  SplitReport rep;
  int n = L.algebra().size();
  std::int64_t jmax = floor_q(W * L.order);
  for (std::int64_t j = -jmax; j <= jmax; ++j) {
    FracExponent q(j, L.order);
    // balanced basis (b (x) t^{r_b/m}) (x) t^{q - r_b/m} lands on b (x) t^q
    Mat img;
    for (auto& b : L.basis) {
      FracExponent e = q - FracExponent(b.residue, L.order);
      if (!(e * L.order).is_integer()) continue;
      img.push_back(b.coords);
    }
    rep.targets += n;
    rep.domain_size += int(img.size());
    linalg::Echelon ech = linalg::rref(img, n);
    int r = int(ech.pivots.size());
    rep.rank += r;
    if (r < int(img.size())) rep.injective = false;
    if (r < n) {
      rep.surjective = false;
      for (int g = 0; g < n; ++g) {
        Mat test = ech.rows;
        Vec unit(n);
        unit[g] = CycloScalar(1);
        test.push_back(unit);
        if (linalg::rank(test, n) > r) rep.unreached.emplace_back(g, q);
      }
    }
  }
  return rep;
}

AlgElt AlgElt::mode(const LoopAlgebra& L, int k, const FracExponent& mu, const CycloScalar& c) {
  check_coset(L, k, mu);
  AlgElt x;
  x.add_term(ModeKey{k, mu}, c);
  return x;
}

CycloScalar AlgElt::coeff(int k, const FracExponent& mu) const {
  auto it = terms_.find(ModeKey{k, mu});
  return it == terms_.end() ? CycloScalar() : it->second;
}

void AlgElt::add_term(const ModeKey& k, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgElt operator+(const AlgElt& a, const AlgElt& b) {
  AlgElt r = a;
  for (auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

AlgElt operator-(const AlgElt& a, const AlgElt& b) {
  AlgElt r = a;
  for (auto& [k, c] : b.terms_) r.add_term(k, -c);
  return r;
}

AlgElt operator*(const CycloScalar& c, const AlgElt& x) {
  AlgElt r;
  for (auto& [k, v] : x.terms_) r.add_term(k, c * v);
  return r;
}

std::string to_string(const LoopAlgebra& L, const AlgElt& x) {
  std::vector<std::pair<CycloScalar, std::string>> items;
  for (auto& [k, c] : x.terms()) items.emplace_back(c, L.basis.at(k.vec).label + "[" + k.mode.str() + "]");
  return join_terms(items);
}

AlgElt alg_reduce(const LoopAlgebra& L, const std::map<RawKey, CycloScalar>& raw) {
  AlgElt r;
  for (auto& [k, c] : raw) {
    check_coset(L, k.vec, k.mode);
    Rational f = binomial(k.mode, k.dpow);
    if (k.dpow % 2) f = -f;
    r.add_term(ModeKey{k.vec, k.mode - FracExponent(k.dpow)}, c * CycloScalar(f));
  }
  return r;
}

AlgElt alg_bracket(const LoopAlgebra& L, const AlgElt& a, const AlgElt& b) {
  const AlgebraDef& A = L.algebra();
  int n = A.size();
  std::map<std::pair<int, int>, LambdaPoly> cache;
  std::map<RawKey, CycloScalar> raw;
  for (auto& [ka, ca] : a.terms()) {
    check_coset(L, ka.vec, ka.mode);
    for (auto& [kb, cb] : b.terms()) {
      check_coset(L, kb.vec, kb.mode);
      auto it = cache.find({ka.vec, kb.vec});
      if (it == cache.end())
        it = cache.emplace(std::pair{ka.vec, kb.vec}, lambda_bracket(A, vector_elt(L, ka.vec), vector_elt(L, kb.vec))).first;
      CycloScalar cab = ca * cb;
      for (auto& [j, cj] : it->second.coeffs()) {
        Rational bin = binomial(ka.mode, j);
        if (bin == 0) continue;
        std::map<int, Vec> by_dpow;
        for (auto& [t, c] : cj.terms()) {
          if (!t.exp.is_zero()) throw DomainError("structure constants must not involve t");
          auto& v = by_dpow[t.dpow];
          if (v.empty()) v.resize(n);
          v[t.gen] += c;
        }
        FracExponent mode = ka.mode + kb.mode - FracExponent(j);
        for (auto& [d, v] : by_dpow) {
          Vec e = L.eigen_coords(v);
          for (int k = 0; k < n; ++k) {
            if (e[k].is_zero()) continue;
            CycloScalar& slot = raw[RawKey{k, d, mode}];
            slot += CycloScalar(bin) * cab * e[k];
          }
        }
      }
    }
  }
  for (auto it = raw.begin(); it != raw.end();) it = it->second.is_zero() ? raw.erase(it) : std::next(it);
  return alg_reduce(L, raw);
}

Rational fractional_part(const Rational& q) { return q - Rational(floor_q(q)); }

L0Spectrum l0_spectrum(const LoopAlgebra& L, Parity parity, const Rational& W) {
  const AlgebraDef& A = L.algebra();
  int n = A.size();
  auto gL = A.find("L");
  if (!gL) throw DomainError("algebra has no generator named L");
  Vec eL(n);
  eL[*gL] = CycloScalar(1);
  if (linalg::apply(L.sigma, eL) != eL) throw DomainError("sigma does not fix L");
  Vec cL = L.eigen_coords(eL);
  AlgElt L1;
  for (int k = 0; k < n; ++k)
    if (!cL[k].is_zero()) L1 = L1 + AlgElt::mode(L, k, FracExponent(1), cL[k]);

  // modes of the chosen parity, grouped by nu
  std::map<FracExponent, std::vector<int>> blocks;
  for (int k = 0; k < n; ++k) {
    if (L.basis[k].parity != parity) continue;
    Rational r(L.basis[k].residue, L.order);
    r.canonicalize();
    for (std::int64_t i = ceil_q(-W - r); i <= floor_q(W - r); ++i) blocks[to_exponent(r + Rational(i))].push_back(k);
  }

  std::set<Rational> eig;
  for (auto& [nu, ks] : blocks) {
    size_t s = ks.size();
    Mat B(s, Vec(s));
    for (size_t c = 0; c < s; ++c) {
      AlgElt y = alg_bracket(L, L1, AlgElt::mode(L, ks[c], nu));
      for (auto& [k, v] : y.terms()) {
        auto pos = std::find(ks.begin(), ks.end(), k.vec);
        if (k.mode != nu || pos == ks.end()) throw DomainError("[L_1, x] leaves the mode block of " + nu.str());
        B[pos - ks.begin()][c] = v;
      }
    }
    bool upper = true, lower = true;
    for (size_t i = 0; i < s; ++i)
      for (size_t j = 0; j < s; ++j) {
        if (i > j && !B[i][j].is_zero()) upper = false;
        if (i < j && !B[i][j].is_zero()) lower = false;
      }
    if (!upper && !lower) throw DomainError("L_1 block at mode " + nu.str() + " is not triangular");
    for (size_t i = 0; i < s; ++i) eig.insert(B[i][i].rational_value());
  }
  L0Spectrum out;
  std::set<Rational> fr;
  for (auto& e : eig) {
    out.eigenvalues.push_back(e);
    fr.insert(fractional_part(e));
  }
  out.fractional_parts.assign(fr.begin(), fr.end());
  return out;
}

}  // namespace csalg
