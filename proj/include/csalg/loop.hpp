#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csalg/linalg.hpp"
#include "csalg/morphisms.hpp"

namespace csalg {

struct EigenVector {
  int residue = 0;          // sigma acts by xi_m^residue
  linalg::Vec coords;       // over the generators of the base algebra
  Parity parity = Parity::Even;
  std::optional<Rational> weight;
  std::string label;
};

// L(A, sigma) through its V-level data.
struct LoopAlgebra {
  std::shared_ptr<const AlgebraDef> base;
  int order = 1;
  linalg::Mat sigma;  // column j holds sigma(v_j)
  std::vector<EigenVector> basis;
  linalg::Mat P, Pinv;  // P has the eigenvectors as columns

  int level() const { return order; }
  const AlgebraDef& algebra() const { return *base; }
  CycloScalar xi() const { return root_of_unity(order, base->field()); }
  std::vector<int> residue_basis(int i) const;
  // eigen coordinates of a vector of generator coordinates
  linalg::Vec eigen_coords(const linalg::Vec& v) const;
  std::optional<int> find_label(const std::string& label) const;
  // whether mu lies in the coset residue(k)/m + Z
  bool in_coset(int k, const FracExponent& mu) const;
};

LoopAlgebra eigenspaces(std::shared_ptr<const AlgebraDef> A, const GenMorphism& sigma, int m);
LoopAlgebra eigenspaces(const GenMorphism& sigma, int m);

bool loop_membership(const LoopAlgebra& L, const ConfElt& x);

struct ClosureReport {
  bool closed = true;
  int products = 0;  // n-products checked
  std::vector<std::string> failures;
};

// n-products of b_k (x) t^{mu}, D_A b_k (x) t^{mu} for modes mu in residue/m + {-1, 0, 1}
ClosureReport check_loop_closure(const LoopAlgebra& L);

struct SplitReport {
  bool surjective = true;
  bool injective = true;
  int targets = 0;       // basis vectors v (x) t^q inside the window
  int domain_size = 0;   // balanced basis vectors mapping into the window
  int rank = 0;
  std::vector<std::pair<int, FracExponent>> unreached;  // (generator, q)
  bool bijective() const { return surjective && injective; }
};

// multiplication map L (x)_R S_m -> A (x) S_m on exponents |q| <= W
SplitReport split_check(const LoopAlgebra& L, const Rational& W);

struct ModeKey {
  int vec = 0;  // index into LoopAlgebra::basis
  FracExponent mode;
  friend bool operator==(const ModeKey&, const ModeKey&) = default;
  friend auto operator<=>(const ModeKey&, const ModeKey&) = default;
};

// Element of Alg(A, sigma): sum of c * b_mu.
class AlgElt {
 public:
  using Terms = std::map<ModeKey, CycloScalar>;

  AlgElt() = default;
  static AlgElt mode(const LoopAlgebra& L, int k, const FracExponent& mu, const CycloScalar& c = CycloScalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  CycloScalar coeff(int k, const FracExponent& mu) const;
  void add_term(const ModeKey& k, const CycloScalar& c);

  friend AlgElt operator+(const AlgElt& a, const AlgElt& b);
  friend AlgElt operator-(const AlgElt& a, const AlgElt& b);
  friend AlgElt operator*(const CycloScalar& c, const AlgElt& x);
  friend bool operator==(const AlgElt& a, const AlgElt& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

std::string to_string(const LoopAlgebra& L, const AlgElt& x);

struct RawKey {
  int vec = 0;
  int dpow = 0;
  FracExponent mode;
  friend auto operator<=>(const RawKey&, const RawKey&) = default;
  friend bool operator==(const RawKey&, const RawKey&) = default;
};

// (D^(j) v)_mu = (-1)^j C(mu, j) v_{mu-j}
AlgElt alg_reduce(const LoopAlgebra& L, const std::map<RawKey, CycloScalar>& raw);
AlgElt alg_bracket(const LoopAlgebra& L, const AlgElt& a, const AlgElt& b);

struct L0Spectrum {
  std::vector<Rational> eigenvalues;
  std::vector<Rational> fractional_parts;
};

Rational fractional_part(const Rational& q);

// eigenvalues of x -> [L_1, x] on the modes |nu| <= W of the given parity
L0Spectrum l0_spectrum(const LoopAlgebra& L, Parity parity, const Rational& W);

}  // namespace csalg
