#include "csalg/morphisms.hpp"

#include <bit>

#include "csalg/builtin.hpp"
#include "csalg/errors.hpp"

namespace csalg {

LaurentMat2 to_laurent(const ScalarMat2& x) {
  LaurentMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = LaurentElt(x.m[i][j]);
  return r;
}

LaurentMat2 derivative(const LaurentMat2& y) {
  LaurentMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = delta_t(y.m[i][j]);
  return r;
}

namespace {

template <class T>
std::string mat_string(const Mat2<T>& x) {
  std::string s;
  for (int i = 0; i < 2; ++i) {
    if (i) s += ";";
    for (int j = 0; j < 2; ++j) {
      if (j) s += ",";
      s += x.m[i][j].str();
    }
  }
  return s;
}

}  // namespace

std::string to_string(const ScalarMat2& x) { return mat_string(x); }
std::string to_string(const LaurentMat2& y) { return mat_string(y); }

// --------------------------------------------------------------- GenMorphism

GenMorphism::GenMorphism(std::shared_ptr<const AlgebraDef> A, std::vector<ConfElt> images, std::string name)
    : A_(std::move(A)), images_(std::move(images)), name_(std::move(name)) {
  if (!A_) throw DomainError("morphism without algebra");
  if (int(images_.size()) != A_->size()) throw DomainError("morphism must give an image for every generator");
  for (int g = 0; g < A_->size(); ++g) {
    if (!images_[g].is_zero() && parity_of(*A_, images_[g]) != A_->parity(g))
      throw DomainError("image of " + A_->generators()[g].name + " has the wrong parity");
    level_ = static_cast<int>(lcm64(level_, images_[g].level()));
  }
  for (auto& x : images_) x = x.with_level(level_);
}

bool GenMorphism::is_identity() const {
  for (int g = 0; g < A_->size(); ++g)
    if (!(images_[g] == ConfElt::generator(g))) return false;
  return true;
}

bool GenMorphism::images_in_V() const {
  for (auto& x : images_)
    if (x.max_dpow() > 0) return false;
  return true;
}

GenMorphism identity_morphism(std::shared_ptr<const AlgebraDef> A) {
  std::vector<ConfElt> im;
  for (int g = 0; g < A->size(); ++g) im.push_back(ConfElt::generator(g));
  return GenMorphism(A, im, "id");
}

ConfElt extend_apply(const GenMorphism& phi, const ConfElt& x) {
  ConfElt r = ConfElt().with_level(static_cast<int>(lcm64(phi.level(), x.level())));
  for (auto& [k, c] : to_hat_basis(x)) {
    const ConfElt& img = phi.image(k.gen);
    ConfElt shifted = LaurentElt::monomial(c, k.exp) * img;
    r += apply_partial_divided(shifted, k.dpow);
  }
  return r;
}

LambdaPoly extend_apply(const GenMorphism& phi, const LambdaPoly& p) {
  LambdaPoly r;
  for (auto& [n, x] : p.coeffs()) r.add(n, extend_apply(phi, x));
  return r;
}

// ------------------------------------------------------------ matrix helpers

std::vector<std::vector<LaurentElt>> representing_matrix(const GenMorphism& phi) {
  if (!phi.images_in_V()) throw DomainError("morphism images are not in V (x) S");
  int n = phi.algebra().size();
  std::vector<std::vector<LaurentElt>> m(n, std::vector<LaurentElt>(n));
  for (int j = 0; j < n; ++j)
    for (auto& [k, c] : phi.image(j).terms()) m[k.gen][j].add_term(k.exp, c);
  return m;
}

LaurentElt determinant(const std::vector<std::vector<LaurentElt>>& m) {
  // sum over permutations, built row by row over subsets of used columns
  int n = static_cast<int>(m.size());
  if (n == 0) return LaurentElt(1);
  if (n > 20) throw DomainError("matrix too large for subset expansion");
  std::vector<LaurentElt> f(std::size_t(1) << n);
  f[0] = LaurentElt(1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (f[mask].is_zero()) continue;
    int row = std::popcount(mask);
    if (row == n) continue;
    for (int c = 0; c < n; ++c) {
      if (mask & (1u << c) || m[row][c].is_zero()) continue;
      bool neg = std::popcount(mask >> (c + 1)) & 1;
      LaurentElt term = f[mask] * m[row][c];
      if (neg)
        f[mask | (1u << c)] -= term;
      else
        f[mask | (1u << c)] += term;
    }
  }
  return f[(1u << n) - 1];
}

namespace {

std::vector<std::vector<LaurentElt>> minor_of(const std::vector<std::vector<LaurentElt>>& m, int skip_r, int skip_c) {
  std::vector<std::vector<LaurentElt>> r;
  for (size_t i = 0; i < m.size(); ++i) {
    if (int(i) == skip_r) continue;
    std::vector<LaurentElt> row;
    for (size_t j = 0; j < m.size(); ++j)
      if (int(j) != skip_c) row.push_back(m[i][j]);
    r.push_back(std::move(row));
  }
  return r;
}

}  // namespace

// ----------------------------------------------------------------- check_hom

HomReport check_hom(const GenMorphism& phi) {
  HomReport rep;
  const AlgebraDef& A = phi.algebra();
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b) {
      LambdaPoly lhs = extend_apply(phi, *A.entry(a, b));
      LambdaPoly rhs = lambda_bracket(A, phi.image(a), phi.image(b));
      if (!(lhs == rhs)) {
        rep.homomorphism = false;
        rep.failures.emplace_back(a, b);
        rep.messages.push_back("bracket not preserved on pair (" + A.generators()[a].name + ", " +
                               A.generators()[b].name + ")");
      }
    }
  if (phi.images_in_V()) {
    LaurentElt d = determinant(representing_matrix(phi));
    rep.determinant = d;
    rep.invertible = d.is_unit();
  }
  return rep;
}

GenMorphism compose(const GenMorphism& phi, const GenMorphism& psi) {
  if (!(phi.algebra() == psi.algebra())) throw DomainError("composing morphisms of different algebras");
  std::vector<ConfElt> im;
  for (auto& x : psi.images()) im.push_back(extend_apply(phi, x));
  return GenMorphism(phi.algebra_ptr(), im);
}

GenMorphism invert(const GenMorphism& phi) {
  auto m = representing_matrix(phi);
  LaurentElt d = determinant(m);
  if (!d.is_unit()) throw DomainError("morphism is not invertible: determinant " + d.str());
  LaurentElt dinv = d.inverse();
  int n = static_cast<int>(m.size());
  std::vector<ConfElt> im(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // (M^{-1})_{ij} = (-1)^{i+j} det(minor_{ji}) / det
      LaurentElt c = determinant(minor_of(m, j, i)) * dinv;
      if ((i + j) % 2) c = -c;
      im[j] += c * ConfElt::generator(i);
    }
  return GenMorphism(phi.algebra_ptr(), im);
}

std::optional<int> order_of(const GenMorphism& phi, int max_order) {
  GenMorphism p = phi;
  for (int k = 1; k <= max_order; ++k) {
    if (p.is_identity()) return k;
    if (k < max_order) p = compose(phi, p);
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ families

std::shared_ptr<const AlgebraDef> shared_n2() {
  static auto a = std::make_shared<const AlgebraDef>(make_n2());
  return a;
}

std::shared_ptr<const AlgebraDef> shared_n4() {
  static auto a = std::make_shared<const AlgebraDef>(make_n4());
  return a;
}

GenMorphism n2_theta(const LaurentElt& s, std::shared_ptr<const AlgebraDef> A) {
  if (!s.is_unit()) throw DomainError("theta_s needs a unit s = alpha t^q, got " + s.str());
  int L = A->index_of("L"), J = A->index_of("J"), Gp = A->index_of("G+"), Gm = A->index_of("G-");
  FracExponent q = s.terms().begin()->first;
  std::vector<ConfElt> im(A->size());
  im[L] = ConfElt::generator(L) + ConfElt::generator(J, CycloScalar(q.to_rational()), FracExponent(-1));
  im[J] = ConfElt::generator(J);
  im[Gp] = s * ConfElt::generator(Gp);
  im[Gm] = s.inverse() * ConfElt::generator(Gm);
  return GenMorphism(A, im, "theta(" + s.str() + ")");
}

GenMorphism n2_omega(std::shared_ptr<const AlgebraDef> A) {
  int L = A->index_of("L"), J = A->index_of("J"), Gp = A->index_of("G+"), Gm = A->index_of("G-");
  std::vector<ConfElt> im(A->size());
  im[L] = ConfElt::generator(L);
  im[J] = ConfElt::generator(J, -1);
  im[Gp] = ConfElt::generator(Gm);
  im[Gm] = ConfElt::generator(Gp);
  return GenMorphism(A, im, "omega");
}

namespace {

// M = sum_s m_s J^s for traceless M
ConfElt j_span(const AlgebraDef& A, const LaurentMat2& M) {
  if (!(M(0, 0) + M(1, 1)).is_zero()) throw DomainError("matrix is not traceless");
  const CycloScalar i = root_of_unity(4, A.field());
  ConfElt r;
  r += (M(0, 1) + M(1, 0)) * ConfElt::generator(A.index_of("J1"));
  r += (LaurentElt(i) * (M(0, 1) - M(1, 0))) * ConfElt::generator(A.index_of("J2"));
  r += (M(0, 0) - M(1, 1)) * ConfElt::generator(A.index_of("J3"));
  return r;
}

}  // namespace

GenMorphism n4_auto(const LaurentMat2& Y, const ScalarMat2& X, std::shared_ptr<const AlgebraDef> A) {
  const CyclotomicField& f = A->field();
  if (f.conductor() % 4 != 0) throw ConductorMismatch("N=4 automorphisms need 4 | conductor");
  if (!(Y.det() == LaurentElt(1))) throw DomainError("det Y = " + Y.det().str() + ", expected 1");
  if (!(X.det() == CycloScalar(1))) throw DomainError("det X = " + X.det().str() + ", expected 1");
  const CycloScalar i = root_of_unity(4, f);
  const CycloScalar half(Rational(1, 2));
  ScalarMat2 Js[3];
  Js[0].m = {{{0, half}, {half, 0}}};
  Js[1].m = {{{0, -half * i}, {half * i, 0}}};
  Js[2].m = {{{half, 0}, {0, -half}}};
  LaurentMat2 Omega;
  Omega.m = {{{LaurentElt(0), LaurentElt(1)}, {LaurentElt(-1), LaurentElt(0)}}};

  LaurentMat2 Yinv = Y.adjugate();
  LaurentMat2 YinvT = Yinv.transpose();
  const int L = A->index_of("L");
  const int J[3] = {A->index_of("J1"), A->index_of("J2"), A->index_of("J3")};
  const int G[2] = {A->index_of("G1"), A->index_of("G2")};
  const int Gb[2] = {A->index_of("Gbar1"), A->index_of("Gbar2")};

  std::vector<ConfElt> im(A->size());
  im[L] = ConfElt::generator(L) + j_span(*A, derivative(Y) * Yinv);
  for (int s = 0; s < 3; ++s) im[J[s]] = j_span(*A, Y * to_laurent(Js[s]) * Yinv);

  // In the coordinates (v, Omega w) the odd part is (Y^{-1})^T (x) X.
  const LaurentElt c(X(0, 0)), d(X(0, 1)), e(X(1, 0)), fx(X(1, 1));
  LaurentMat2 YOmega = Y * Omega;
  LaurentMat2 YinvTOmega = YinvT * Omega;
  for (int a = 0; a < 2; ++a) {
    ConfElt g, gb;
    for (int b = 0; b < 2; ++b) {
      g += (c * YinvT(b, a)) * ConfElt::generator(G[b]);
      g += (-e * YOmega(b, a)) * ConfElt::generator(Gb[b]);
      gb += (d * YinvTOmega(b, a)) * ConfElt::generator(G[b]);
      gb += (fx * Y(b, a)) * ConfElt::generator(Gb[b]);
    }
    im[G[a]] = g;
    im[Gb[a]] = gb;
  }
  return GenMorphism(A, im, "n4_auto");
}

}  // namespace csalg
