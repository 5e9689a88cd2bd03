#pragma once

#include <map>
#include <optional>
#include <vector>

#include "csalg/loop.hpp"

namespace csalg {

// D_A^(dpow) b_vec (x) t^exp in L(A, sigma)
struct WindowElem {
  int vec = 0;
  int dpow = 0;
  FracExponent exp;
  friend bool operator==(const WindowElem&, const WindowElem&) = default;
  friend auto operator<=>(const WindowElem&, const WindowElem&) = default;
};

using LoopCoords = std::map<WindowElem, CycloScalar>;

ConfElt to_conf(const LoopAlgebra& L, const WindowElem& x);
// throws DomainError when x is not in L(A, sigma)
LoopCoords loop_coords(const LoopAlgebra& L, const ConfElt& x);

// chi restricted to the interior: source -> image
struct CentroidSolution {
  std::map<WindowElem, LoopCoords> columns;
  LoopCoords apply(const WindowElem& x) const;
};

struct CentroidOptions {
  int interior_dpow = 1;  // D_A powers of interior elements
  int dpow_cap = 2;       // D_A powers of domain and codomain elements
};

// chi is an even map from the domain window (|exp| <= W'+1) into the codomain
// window (|exp| <= W). Constraints chi(a_(n) x) = a_(n) chi(x) for a = b (x) t^e
// with |e| <= 1, x interior (|exp| <= W') and every n, whenever a_(n) x stays in
// the domain. Solutions are returned restricted to the interior.
std::vector<CentroidSolution> centroid_basis(const LoopAlgebra& L, const Rational& W, const Rational& W_interior,
                                             const CentroidOptions& opt = {});

// r with chi(x) = x r for every interior x
std::optional<LaurentElt> is_scalar_action(const CentroidSolution& chi);

// multiplication by r on the interior window
CentroidSolution scalar_action(const LoopAlgebra& L, const LaurentElt& r, const Rational& W_interior,
                               const CentroidOptions& opt = {});

}  // namespace csalg
