#include "csalg/cohomology.hpp"

#include <set>

namespace csalg {

namespace {

std::string zeta_str(const FracExponent& a) {
  return "zeta_" + std::to_string(a.den()) + "^" + std::to_string(a.num());
}

}  // namespace

N2AutElt::N2AutElt(LaurentElt s_, int eps_) : s(std::move(s_)), eps(eps_ & 1) {
  if (!s.is_unit()) throw DomainError("N=2 automorphism needs a unit of S, got " + s.str());
}

N2AutElt N2AutElt::inverse() const { return {eps ? s : s.inverse(), eps}; }

N2AutElt N2AutElt::galois(long g, int m) const { return {galois_act(g, s, m, field_of(s)), eps}; }

GenMorphism N2AutElt::realize(std::shared_ptr<const AlgebraDef> A) const {
  GenMorphism th = n2_theta(s, A);
  return eps ? compose(th, n2_omega(A)) : th;
}

std::string N2AutElt::str() const { return "(" + s.str() + ", " + std::to_string(eps) + ")"; }

N2AutElt operator*(const N2AutElt& a, const N2AutElt& b) {
  return {a.s * (a.eps ? b.s.inverse() : b.s), a.eps ^ b.eps};
}

N4AutElt::N4AutElt(LaurentMat2 Y, ScalarMat2 X) : Y_(std::move(Y)), X_(std::move(X)) {
  if (!(X_.det() == CycloScalar(1))) throw DomainError("X must have determinant 1");
  if (!(Y_.det() == LaurentElt(1))) throw DomainError("Y must have determinant 1");
  for (int i = 0; i < 4; ++i) {
    const CycloScalar& c = X_(i / 2, i % 2);
    if (c.is_zero()) continue;
    if (c.leading_negative()) {
      X_ = -X_;
      Y_ = -Y_;
    }
    break;
  }
}

N4AutElt N4AutElt::inverse() const { return {Y_.adjugate(), X_.adjugate()}; }

N4AutElt N4AutElt::galois(long g, int m) const {
  LaurentMat2 Y;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) Y(i, j) = galois_act(g, Y_(i, j), m, field_of(Y_(i, j)));
  return {Y, X_};
}

GenMorphism N4AutElt::realize(std::shared_ptr<const AlgebraDef> A) const { return n4_auto(Y_, X_, A); }

std::string N4AutElt::str() const { return "(" + to_string(Y_) + " | " + to_string(X_) + ")"; }

N4AutElt operator*(const N4AutElt& a, const N4AutElt& b) { return {a.Y_ * b.Y_, a.X_ * b.X_}; }

int n2_component(const Cocycle<N2AutElt>& u) { return u.m == 1 ? 0 : u(1).eps; }

std::string RootPair::str() const { return "{" + zeta_str(a) + ", " + zeta_str(b) + "}"; }

RootPair n4_invariant(const ScalarMat2& X, const CyclotomicField& f) {
  if (!(X.det() == CycloScalar(1))) throw DomainError("matrix must have determinant 1");
  int N = f.conductor();
  ScalarMat2 I = ScalarMat2::identity(), P = X;
  bool finite = false;
  for (int n = 1; n <= N && !finite; ++n) {
    if (P == I || P == -I) finite = true;
    P = P * X;
  }
  if (!finite) throw DomainError("matrix " + to_string(X) + " has no finite order up to " + std::to_string(N) + " in PGL2");
  CycloScalar tr = X(0, 0) + X(1, 1);
  CycloScalar target = tr * tr - CycloScalar(2);  // rho + rho^{-1}
  for (int k = 0; k < N; ++k) {
    if (!(CycloScalar::zeta_power(f, k) + CycloScalar::zeta_power(f, -k) == target)) continue;
    FracExponent a(k, N), b((N - k) % N, N);
    if (b < a) std::swap(a, b);
    return {a, b};
  }
  throw ConductorMismatch("eigenvalue ratio of " + to_string(X) + " is not in Q(zeta_" + std::to_string(N) + ")");
}

std::vector<RootPair> pgl2_classes(int n, const CyclotomicField& f) {
  if (n <= 0) throw DomainError("order must be positive");
  if (f.conductor() % (2 * n) != 0)
    throw ConductorMismatch("pgl2-classes " + std::to_string(n) + " needs 2n | conductor, conductor is " +
                            std::to_string(f.conductor()));
  // diag(lambda, lambda^{-1}) with lambda^{2n} = 1 covers every class of order dividing n
  std::set<RootPair> out;
  for (int j = 0; j < 2 * n; ++j) {
    ScalarMat2 X;
    X(0, 0) = CycloScalar::zeta_power(f, long(j) * (f.conductor() / (2 * n)));
    X(1, 1) = X(0, 0).inverse();
    out.insert(n4_invariant(X, f));
  }
  return {out.begin(), out.end()};
}

}  // namespace csalg
