#pragma once

#include <string>
#include <vector>

#include "csalg/errors.hpp"
#include "csalg/morphisms.hpp"

namespace csalg {

// (s, eps) <-> theta_s o omega^eps; eps acts on the unit group by inversion.
struct N2AutElt {
  LaurentElt s = LaurentElt(1);
  int eps = 0;

  N2AutElt() = default;
  N2AutElt(LaurentElt s_, int eps_);

  static N2AutElt identity() { return {}; }
  N2AutElt inverse() const;
  N2AutElt galois(long g, int m) const;
  GenMorphism realize(std::shared_ptr<const AlgebraDef> A = shared_n2()) const;
  std::string str() const;

  friend N2AutElt operator*(const N2AutElt& a, const N2AutElt& b);
  friend bool operator==(const N2AutElt& a, const N2AutElt& b) { return a.eps == b.eps && a.s == b.s; }
};

// class of (Y, X) in SL2(S) x SL2(k) / <(-I,-I)>
class N4AutElt {
 public:
  N4AutElt() : N4AutElt(LaurentMat2::identity(), ScalarMat2::identity()) {}
  N4AutElt(LaurentMat2 Y, ScalarMat2 X);

  static N4AutElt identity() { return {}; }
  const LaurentMat2& Y() const { return Y_; }
  const ScalarMat2& X() const { return X_; }
  N4AutElt inverse() const;
  N4AutElt galois(long g, int m) const;
  GenMorphism realize(std::shared_ptr<const AlgebraDef> A = shared_n4()) const;
  std::string str() const;

  friend N4AutElt operator*(const N4AutElt& a, const N4AutElt& b);
  friend bool operator==(const N4AutElt& a, const N4AutElt& b) { return a.Y_ == b.Y_ && a.X_ == b.X_; }

 private:
  LaurentMat2 Y_;
  ScalarMat2 X_;
};

// u : Z/m -> G, values[i] = u(i)
template <class G>
struct Cocycle {
  int m = 1;
  std::vector<G> values;

  const G& operator()(long n) const { return values.at(((n % m) + m) % m); }
};

template <class G>
Cocycle<G> trivial_cocycle(int m) {
  return Cocycle<G>{m, std::vector<G>(m, G::identity())};
}

template <class G>
bool check_cocycle(const Cocycle<G>& u) {
  if (u.m <= 0 || int(u.values.size()) != u.m) return false;
  if (!(u.values[0] == G::identity())) return false;
  for (int a = 0; a < u.m; ++a)
    for (int b = 0; b < u.m; ++b)
      if (!(u((a + b) % u.m) == u(a) * u(b).galois(a, u.m))) return false;
  return true;
}

// u(n) = g . ^1 g ... ^(n-1) g, which is g^n when g is defined over k
template <class G>
Cocycle<G> cocycle_of(const G& g, int m) {
  if (m <= 0) throw DomainError("modulus must be positive");
  Cocycle<G> u{m, {G::identity()}};
  G acc = G::identity();
  for (int n = 1; n <= m; ++n) {
    acc = acc * g.galois(n - 1, m);
    if (n < m) u.values.push_back(acc);
  }
  if (!(acc == G::identity())) throw DomainError("element does not define a cocycle of order " + std::to_string(m));
  return u;
}

// b(gamma) = g^{-1} u(gamma) ^gamma g
template <class G>
Cocycle<G> coboundary(const Cocycle<G>& u, const G& g) {
  Cocycle<G> b{u.m, {}};
  G gi = g.inverse();
  for (int i = 0; i < u.m; ++i) b.values.push_back(gi * u(i) * g.galois(i, u.m));
  return b;
}

int n2_component(const Cocycle<N2AutElt>& u);

// unordered pair {rho, rho^{-1}}, rho = exp(2 pi i a)
struct RootPair {
  FracExponent a, b;  // in [0,1), a <= b
  std::string str() const;
  friend bool operator==(const RootPair&, const RootPair&) = default;
  friend auto operator<=>(const RootPair&, const RootPair&) = default;
};

// rho = lambda^2 for the eigenvalues lambda^{+-1} of X
RootPair n4_invariant(const ScalarMat2& X, const CyclotomicField& f = CyclotomicField::standard());
std::vector<RootPair> pgl2_classes(int n, const CyclotomicField& f = CyclotomicField::standard());

}  // namespace csalg
