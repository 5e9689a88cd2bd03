#include <doctest.h>

#include <set>

#include "csalg/builtin.hpp"
#include "csalg/centroid.hpp"
#include "csalg/errors.hpp"
#include "support.hpp"

using namespace csalg;

namespace {

LaurentElt t(long p, long q = 1) { return LaurentElt::t(FracExponent(p, q)); }

std::set<std::string> r_values(const std::vector<CentroidSolution>& sols) {
  std::set<std::string> out;
  for (auto& s : sols) {
    auto r = is_scalar_action(s);
    out.insert(r ? r->str() : "not scalar");
  }
  return out;
}

}  // namespace

TEST_SUITE("centroid") {
  TEST_CASE("window coordinates round trip") {
    LoopAlgebra L = eigenspaces(n2_omega(), 2);
    for (std::size_t k = 0; k < L.basis.size(); ++k)
      for (int d = 0; d <= 2; ++d) {
        WindowElem w{int(k), d, FracExponent(2 + L.basis[k].residue, 2)};
        LoopCoords c = loop_coords(L, to_conf(L, w));
        CHECK(c == LoopCoords{{w, CycloScalar(1)}});
      }
    CHECK_THROWS_AS(loop_coords(L, ConfElt::generator(n2::J, 1, FracExponent(1))), DomainError);
  }

  TEST_CASE("untwisted N=2 centroid is spanned by t^-1, 1, t") {
    LoopAlgebra L = eigenspaces(identity_morphism(shared_n2()), 1);
    auto sols = centroid_basis(L, Rational(3), Rational(1));
    CHECK(sols.size() == 3);
    CHECK(r_values(sols) == std::set<std::string>{"t^{-1}", "1", "t^{1}"});
  }

  TEST_CASE("omega twisted centroid") {
    LoopAlgebra L = eigenspaces(n2_omega(), 2);
    auto sols = centroid_basis(L, Rational(3), Rational(1));
    CHECK(sols.size() == 3);
    CHECK(r_values(sols) == std::set<std::string>{"t^{-1}", "1", "t^{1}"});
  }

  TEST_CASE("multiplication by t moves L (x) 1 to L (x) t") {
    LoopAlgebra L = eigenspaces(identity_morphism(shared_n2()), 1);
    int l = *L.find_label("L");
    int hits = 0;
    for (auto& s : centroid_basis(L, Rational(3), Rational(1))) {
      auto r = is_scalar_action(s);
      REQUIRE(r.has_value());
      if (!(*r == t(1))) continue;
      ++hits;
      for (int k = 0; k <= 1; ++k) {
        // D^(k) (L (x) t) expanded in the window basis
        LoopCoords want = loop_coords(L, t(1) * ConfElt::generator(0, 1, FracExponent(0), k));
        CHECK(s.apply({l, k, FracExponent(0)}) == want);
        CHECK(want.count({l, k, FracExponent(1)}) == 1);
      }
    }
    CHECK(hits == 1);
  }

  TEST_CASE("scalar actions are distinct and linear") {
    LoopAlgebra L = eigenspaces(identity_morphism(shared_n2()), 1);
    std::vector<LaurentElt> rs = {t(-1), LaurentElt(1), t(1), t(1) + LaurentElt(2)};
    for (std::size_t a = 0; a < rs.size(); ++a) {
      CentroidSolution chi = scalar_action(L, rs[a], Rational(1));
      REQUIRE(is_scalar_action(chi).has_value());
      CHECK(*is_scalar_action(chi) == rs[a]);
      for (std::size_t b = 0; b < a; ++b) CHECK_FALSE(chi.columns == scalar_action(L, rs[b], Rational(1)).columns);
    }
  }

  TEST_CASE("a corrupted action is not scalar") {
    LoopAlgebra L = eigenspaces(identity_morphism(shared_n2()), 1);
    CentroidSolution chi = scalar_action(L, t(1), Rational(1));
    auto& col = chi.columns.begin()->second;
    col.begin()->second += CycloScalar(1);
    CHECK_FALSE(is_scalar_action(chi).has_value());
    CentroidSolution chi2 = scalar_action(L, t(1), Rational(1));
    std::prev(chi2.columns.end())->second[{0, 0, FracExponent(3)}] = CycloScalar(5);
    CHECK_FALSE(is_scalar_action(chi2).has_value());
  }
}
