#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "csalg/loop.hpp"
#include "csalg/morphisms.hpp"

namespace csalg {

// Algebra files (.csa):
//   algebra NAME
//   cyclotomic N
//   generator NAME parity=even|odd [weight=p/q]
//   bracket A B = EXPR
// EXPR is a sum of products of rationals, zeta^k, D^(j), x^(n), t^{p/q},
// generators and parenthesised sums. Pairs given in neither orientation are zero.
AlgebraDef parse_algebra(const std::string& text, const CyclotomicField& engine = CyclotomicField::standard());
std::string print_algebra(const AlgebraDef& A);

// Morphism files (.csm):
//   morphism NAME on ALGEBRA level m
//   image GEN = EXPR
GenMorphism parse_morphism(const std::string& text, std::shared_ptr<const AlgebraDef> A);
std::string print_morphism(const GenMorphism& phi);

ConfElt parse_element(const AlgebraDef& A, const std::string& text);
LambdaPoly parse_lambda(const AlgebraDef& A, const std::string& text);
std::string print_element(const AlgebraDef& A, const ConfElt& x);
std::string print_lambda(const AlgebraDef& A, const LambdaPoly& p);

CycloScalar parse_scalar(const std::string& text, const CyclotomicField& f = CyclotomicField::standard());
LaurentElt parse_laurent(const std::string& text, const CyclotomicField& f = CyclotomicField::standard());
// "a,b;c,d"
ScalarMat2 parse_scalar_matrix(const std::string& text, const CyclotomicField& f = CyclotomicField::standard());
LaurentMat2 parse_laurent_matrix(const std::string& text, const CyclotomicField& f = CyclotomicField::standard());

// "L[2] (G+ + G-)[1/2]" -> (basis index, mode)
std::vector<std::pair<int, FracExponent>> parse_modes(const LoopAlgebra& L, const std::string& text);

}  // namespace csalg
