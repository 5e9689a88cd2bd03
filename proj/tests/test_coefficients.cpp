#include <doctest.h>

#include "csalg/coefficients.hpp"
#include "csalg/errors.hpp"
#include "support.hpp"

using namespace csalg;
using testsupport::close;
using testsupport::numeric;

namespace {

CycloScalar random_scalar(std::mt19937_64& rng, const CyclotomicField& f) {
  CycloScalar x;
  int terms = 1 + int(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    Rational c(long(rng() % 11) - 5, 1 + long(rng() % 4));
    c.canonicalize();
    x += CycloScalar(c) * CycloScalar::zeta_power(f, long(rng() % f.conductor()));
  }
  return x;
}

LaurentElt random_laurent(std::mt19937_64& rng, int m) {
  LaurentElt x;
  int terms = 1 + int(rng() % 3);
  for (int i = 0; i < terms; ++i)
    x += LaurentElt::monomial(CycloScalar(long(rng() % 7) - 3), FracExponent(long(rng() % 9) - 4, m));
  return x.with_level(m);
}

}  // namespace

TEST_SUITE("coefficients") {
  TEST_CASE("fractional exponents normalise and round down") {
    FracExponent a(2, 4), b(-3, 2);
    CHECK(a == FracExponent(1, 2));
    CHECK(a.den() == 2);
    CHECK(b.floor() == -2);
    CHECK(b.frac() == FracExponent(1, 2));
    CHECK(a + b == FracExponent(-1));
    CHECK((a * 4).is_integer());
    CHECK(FracExponent(-1, 3) < FracExponent(0));
    CHECK(FracExponent(5, -10) == FracExponent(-1, 2));
  }

  TEST_CASE("cyclotomic arithmetic agrees with complex numbers") {
    std::mt19937_64 rng(7);
    for (int N : {1, 4, 8, 12, 24}) {
      auto& f = CyclotomicField::get(N);
      for (int k = 0; k < 30; ++k) {
        CycloScalar a = random_scalar(rng, f), b = random_scalar(rng, f);
        CHECK(close(numeric(a + b), numeric(a) + numeric(b)));
        CHECK(close(numeric(a * b), numeric(a) * numeric(b)));
        CHECK(close(numeric(a - b), numeric(a) - numeric(b)));
        if (!b.is_zero()) {
          CHECK(close(numeric(a / b), numeric(a) / numeric(b)));
          CHECK(b * b.inverse() == CycloScalar(1));
        }
      }
    }
  }

  TEST_CASE("roots of unity") {
    auto& f = CyclotomicField::standard();
    CHECK(f.conductor() == 24);
    CHECK(f.degree() == 8);
    CHECK(CycloScalar::zeta_power(f, 12) == CycloScalar(-1));
    CHECK(CycloScalar::zeta_power(f, 24) == CycloScalar(1));
    CycloScalar i = root_of_unity(4, f);
    CHECK(i * i == CycloScalar(-1));
    CHECK(root_of_unity(3, f).pow(3) == CycloScalar(1));
    CHECK_FALSE(root_of_unity(3, f) == CycloScalar(1));
    CHECK_THROWS_AS(root_of_unity(5, f), ConductorMismatch);
    // 1 + zeta_3 + zeta_3^2 = 0
    CycloScalar w = root_of_unity(3, f);
    CHECK((CycloScalar(1) + w + w * w).is_zero());
    CHECK(w.str().find("zeta") != std::string::npos);
  }

  TEST_CASE("rationals stay rational") {
    CycloScalar q(Rational(3, 4));
    CHECK(q.is_rational());
    CHECK(q.rational_value() == Rational(3, 4));
    CHECK(q.str() == "3/4");
    CHECK_THROWS_AS(root_of_unity(4).rational_value(), DomainError);
  }

  TEST_CASE("embedding between cyclotomic fields") {
    auto& f4 = CyclotomicField::get(4);
    auto& f24 = CyclotomicField::get(24);
    CycloScalar i4 = CycloScalar::zeta_power(f4, 1);
    CHECK(embed(i4, f24) == CycloScalar::zeta_power(f24, 6));
    CHECK(close(numeric(embed(i4 + CycloScalar(2), f24)), numeric(i4) + 2.0));
    CHECK_THROWS_AS(embed(CycloScalar::zeta_power(CyclotomicField::get(5), 1), f24), ConductorMismatch);
  }

  TEST_CASE("generalised binomials") {
    CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(binomial(Rational(-1), 3) == Rational(-1));
    CHECK(binomial(Rational(5), 2) == Rational(10));
    CHECK(binomial(Rational(2), 3) == Rational(0));
    CHECK(binomial(FracExponent(7, 3), 0) == Rational(1));
  }

  TEST_CASE("Laurent polynomials") {
    LaurentElt t = LaurentElt::t(FracExponent(1));
    LaurentElt h = LaurentElt::t(FracExponent(1, 2));
    CHECK(h * h == t);
    CHECK(h.level() == 2);
    CHECK((t + LaurentElt(1)) * (t - LaurentElt(1)) == t * t - LaurentElt(1));
    LaurentElt u = LaurentElt::monomial(CycloScalar(3), FracExponent(-2, 3));
    CHECK(u.is_unit());
    CHECK(u * u.inverse() == LaurentElt(1));
    CHECK_THROWS_AS((t + LaurentElt(1)).inverse(), DomainError);
    CHECK(h.str() == "t^{1/2}");
    CHECK((LaurentElt(2) - t).str() == "2 - t^{1}");
  }

  TEST_CASE("derivation and divided powers") {
    LaurentElt h = LaurentElt::t(FracExponent(1, 2));
    CHECK(delta_t(h) == LaurentElt::monomial(CycloScalar(Rational(1, 2)), FracExponent(-1, 2)));
    CHECK(delta_t_divided(LaurentElt::t(FracExponent(3)), 2) == LaurentElt::monomial(CycloScalar(3), FracExponent(1)));
    CHECK(delta_t(LaurentElt(5)).is_zero());
    std::mt19937_64 rng(11);
    for (int k = 0; k < 40; ++k) {
      LaurentElt a = random_laurent(rng, 2), b = random_laurent(rng, 3);
      CHECK(delta_t(a * b) == delta_t(a) * b + a * delta_t(b));
      // delta^(2) = delta^2 / 2
      CHECK(delta_t_divided(a, 2) * LaurentElt(2) == delta_t(delta_t(a)));
    }
  }

  TEST_CASE("Galois action on S_m") {
    auto& f = CyclotomicField::standard();
    LaurentElt h = LaurentElt::t(FracExponent(1, 2));
    CHECK(galois_act(1, h, 2, f) == -h);
    CHECK(galois_act(2, h, 2, f) == h);
    CHECK(galois_act(1, LaurentElt::t(FracExponent(1)), 4, f) == LaurentElt::t(FracExponent(1)));
    LaurentElt q = LaurentElt::t(FracExponent(1, 4));
    CHECK(galois_act(1, q, 4, f) == LaurentElt::monomial(root_of_unity(4, f), FracExponent(1, 4)));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
      LaurentElt a = random_laurent(rng, 4), b = random_laurent(rng, 4);
      long g1 = long(rng() % 4), g2 = long(rng() % 4);
      CHECK(galois_act(g1, a * b, 4, f) == galois_act(g1, a, 4, f) * galois_act(g1, b, 4, f));
      CHECK(galois_act(g1, galois_act(g2, a, 4, f), 4, f) == galois_act(g1 + g2, a, 4, f));
      CHECK(galois_act(g1, delta_t(a), 4, f) == delta_t(galois_act(g1, a, 4, f)));
    }
    CHECK_THROWS_AS(galois_act(1, LaurentElt::t(FracExponent(1, 3)), 2, f), DomainError);
  }
}
