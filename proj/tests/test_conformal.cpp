#include <doctest.h>

#include "csalg/builtin.hpp"
#include "csalg/conformal.hpp"
#include "csalg/errors.hpp"
#include "support.hpp"

using namespace csalg;

namespace {

// (a (x) t^q)_(n)(b (x) t^r) = sum_j (a_(n+j) b) (x) C(q,j) t^{q-j+r}, read straight off the table
LambdaPoly oracle_bracket(const AlgebraDef& A, int a, FracExponent q, int b, FracExponent r) {
  LambdaPoly out;
  const LambdaPoly& e = *A.entry(a, b);
  for (int n = 0; n <= e.degree(); ++n) {
    ConfElt acc;
    for (int j = 0; n + j <= e.degree(); ++j) {
      Rational c = binomial(q, j);
      if (c == 0) continue;
      ConfElt c_nj = e.coeff(n + j);
      for (auto& [k, v] : c_nj.terms())
        acc.add_term({k.gen, k.dpow, q - FracExponent(j) + r}, v * CycloScalar(c));
    }
    out.add(n, acc);
  }
  return out;
}

ConfElt random_elt(std::mt19937_64& rng, int ngens, int m) {
  ConfElt x;
  for (int i = 0; i < 3; ++i)
    x.add_term({int(rng() % ngens), int(rng() % 3), FracExponent(long(rng() % 9) - 4, m)}, CycloScalar(long(rng() % 5) - 2));
  return x;
}

}  // namespace

TEST_SUITE("conformal") {
  TEST_CASE("Virasoro modes by hand") {
    AlgebraDef A = make_n2();
    using namespace n2;
    for (int qn = -3; qn <= 3; ++qn)
      for (int rn = -3; rn <= 3; ++rn) {
        FracExponent q(qn, 2), r(rn, 2);
        LambdaPoly p = lambda_bracket(A, ConfElt::generator(L, 1, q), ConfElt::generator(L, 1, r));
        // 0-product: D L t^{q+r} + 2 q L t^{q+r-1}, 1-product: 2 L t^{q+r}
        ConfElt c0 = ConfElt::generator(L, 1, q + r, 1) + ConfElt::generator(L, CycloScalar(2 * q.to_rational()), q + r - FracExponent(1));
        ConfElt c1 = ConfElt::generator(L, 2, q + r);
        CHECK(p.coeff(0) == c0);
        CHECK(p.coeff(1) == c1);
        CHECK(p.degree() == 1);
      }
  }

  TEST_CASE("base-change bracket matches the table oracle") {
    for (const AlgebraDef& A : {make_n2(), make_n4()}) {
      for (int a = 0; a < A.size(); ++a)
        for (int b = 0; b < A.size(); ++b)
          for (auto [q, r] : {std::pair{FracExponent(0), FracExponent(0)}, {FracExponent(3, 2), FracExponent(-1)},
                              {FracExponent(-5, 4), FracExponent(1, 4)}, {FracExponent(2), FracExponent(7, 3)}}) {
            INFO(A.generators()[a].name, " ", A.generators()[b].name);
            CHECK(lambda_bracket(A, ConfElt::generator(a, 1, q), ConfElt::generator(b, 1, r)) == oracle_bracket(A, a, q, b, r));
          }
    }
  }

  TEST_CASE("N2 table entries") {
    AlgebraDef A = make_n2();
    using namespace n2;
    CHECK(n_product(A, ConfElt::generator(Gp), ConfElt::generator(Gm), 1) == ConfElt::generator(J));
    CHECK(n_product(A, ConfElt::generator(Gm), ConfElt::generator(Gp), 1) == ConfElt::generator(J, -1));
    CHECK(n_product(A, ConfElt::generator(J), ConfElt::generator(J), 0).is_zero());
    CHECK(n_product(A, ConfElt::generator(J), ConfElt::generator(Gm), 0) == ConfElt::generator(Gm, -1));
  }

  TEST_CASE("D hat and the hat basis") {
    ConfElt x = ConfElt::generator(0, 1, FracExponent(3, 2));
    ConfElt dx = apply_partial(x);
    CHECK(dx == ConfElt::generator(0, 1, FracExponent(3, 2), 1) + ConfElt::generator(0, CycloScalar(Rational(3, 2)), FracExponent(1, 2)));
    // D L t^q = Dhat(L t^q) - q L t^{q-1}
    HatCoords h = to_hat_basis(ConfElt::generator(0, 1, FracExponent(3, 2), 1));
    HatCoords want;
    want[{0, 1, FracExponent(3, 2)}] = CycloScalar(1);
    want[{0, 0, FracExponent(1, 2)}] = CycloScalar(Rational(-3, 2));
    CHECK(h == want);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
      ConfElt y = random_elt(rng, 4, 2);
      CHECK(from_hat_basis(to_hat_basis(y)) == y);
      // divided powers: Dhat^(2) = Dhat^2 / 2
      CHECK(CycloScalar(2) * apply_partial_divided(y, 2) == apply_partial(apply_partial(y)));
    }
  }

  TEST_CASE("sesquilinearity on random elements") {
    AlgebraDef A = make_n2();
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
      ConfElt x = random_elt(rng, 2, 2), y = random_elt(rng, 2, 2);
      LambdaPoly p = lambda_bracket(A, x, y), dp = lambda_bracket(A, apply_partial(x), y);
      for (int m = 0; m <= p.degree() + 1; ++m)
        CHECK(dp.coeff(m) == (m > 0 ? CycloScalar(-m) * p.coeff(m - 1) : ConfElt()));
    }
  }

  TEST_CASE("built-in algebras satisfy the axioms") {
    for (const AlgebraDef& A : {make_n2(), make_n4(), make_current("sl2", sl2_constants())}) {
      AxiomReport r = check_axioms(A);
      CHECK(r.ok());
      CHECK(r.pairs_checked == std::size_t(A.size() * A.size()));
      CHECK(r.triples_checked == std::size_t(A.size() * A.size() * A.size()));
    }
  }

  TEST_CASE("skew flip is an involution") {
    AlgebraDef A = make_n4();
    for (auto& [ab, p] : A.table()) {
      bool odd = A.parity(ab.first) == Parity::Odd && A.parity(ab.second) == Parity::Odd;
      CHECK(skew_flip(skew_flip(p, odd), odd) == p);
    }
  }

  TEST_CASE("a corrupted entry is reported") {
    using namespace n4;
    AlgebraDef A = make_n4();
    LambdaPoly p = *A.entry(G1, Gbar1);
    LambdaPoly bad;
    for (auto& [n, c] : p.coeffs()) bad.add(n, c);
    bad.add(0, ConfElt::generator(L));  // 2 L -> 3 L
    A.set_bracket(G1, Gbar1, bad);
    AxiomReport r = check_axioms(A);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.cs4);
    CHECK(std::find(r.cs4_failures.begin(), r.cs4_failures.end(), std::pair{G1, Gbar1}) != r.cs4_failures.end());

    AlgebraDef V = make_n2();
    LambdaPoly ll;
    ll.add(0, ConfElt::generator(n2::L, 1, {}, 1));
    ll.add(1, ConfElt::generator(n2::L, 3));
    V.set_bracket(n2::L, n2::L, ll);
    AxiomReport rv = check_axioms(V);
    CHECK_FALSE(rv.cs4);
  }

  TEST_CASE("completion from one orientation") {
    AlgebraDef A = make_n2();
    AlgebraDef raw("N2", A.generators());
    for (auto& [ab, p] : A.table())
      if (ab.first <= ab.second) raw.set_bracket(ab.first, ab.second, p);
    CHECK(complete_table_cs4(raw) == A);
    AlgebraDef partial("N2", A.generators());
    partial.set_bracket(0, 0, *A.entry(0, 0));
    CHECK_THROWS_AS(complete_table_cs4(partial), DomainError);
    raw.set_bracket(n2::J, n2::L, LambdaPoly());
    CHECK_THROWS_AS(complete_table_cs4(raw), Cs4Inconsistency);
  }
}
