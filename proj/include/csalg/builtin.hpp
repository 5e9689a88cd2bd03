#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "csalg/conformal.hpp"

namespace csalg {

// Structure constants of a finite dimensional Lie algebra: [e_a, e_b] = sum_c c[{a,b,c}] e_c.
struct StructureConstants {
  std::vector<std::string> names;
  std::map<std::tuple<int, int, int>, CycloScalar> c;
};

StructureConstants sl2_constants();  // basis e, h, f

// Current algebra: [a_lambda b] = [a, b], all generators even of weight 1.
AlgebraDef make_current(const std::string& name, const StructureConstants& g,
                        const CyclotomicField& f = CyclotomicField::standard());

// Generators L, J, G+, G-.
AlgebraDef make_n2(const CyclotomicField& f = CyclotomicField::standard());
// Generators L, J1, J2, J3, G1, G2, Gbar1, Gbar2; needs 4 | conductor.
AlgebraDef make_n4(const CyclotomicField& f = CyclotomicField::standard());

namespace n4 {
inline constexpr int L = 0, J1 = 1, J2 = 2, J3 = 3, G1 = 4, G2 = 5, Gbar1 = 6, Gbar2 = 7;
}
namespace n2 {
inline constexpr int L = 0, J = 1, Gp = 2, Gm = 3;
}

}  // namespace csalg
