#include "csalg/builtin.hpp"

#include "csalg/errors.hpp"

namespace csalg {

namespace {

ConfElt gen(int g, const CycloScalar& c = CycloScalar(1), int dpow = 0) { return ConfElt::generator(g, c, {}, dpow); }

// (D + k lambda) v  as a lambda polynomial
LambdaPoly primary(int v, const Rational& k) {
  LambdaPoly p;
  p.add(0, gen(v, 1, 1));
  p.add(1, gen(v, CycloScalar(k)));
  return p;
}

}  // namespace

StructureConstants sl2_constants() {
  StructureConstants s;
  s.names = {"e", "h", "f"};
  s.c[{0, 2, 1}] = CycloScalar(1);   // [e,f] = h
  s.c[{1, 0, 0}] = CycloScalar(2);   // [h,e] = 2e
  s.c[{1, 2, 2}] = CycloScalar(-2);  // [h,f] = -2f
  return s;
}

AlgebraDef make_current(const std::string& name, const StructureConstants& g, const CyclotomicField& f) {
  std::vector<GeneratorInfo> gens;
  for (auto& n : g.names) gens.push_back({n, Parity::Even, Rational(1)});
  AlgebraDef A(name, gens, f);
  int n = A.size();
  std::map<std::pair<int, int>, ConfElt> br;
  for (auto& [abc, v] : g.c) {
    auto [a, b, c] = abc;
    br[{a, b}] += gen(c, v);
    br[{b, a}] -= gen(c, v);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      LambdaPoly p;
      auto it = br.find({a, b});
      if (it != br.end()) p.add(0, it->second);
      A.set_bracket(a, b, p);
    }
  return complete_table_cs4(A);
}

AlgebraDef make_n2(const CyclotomicField& f) {
  using namespace n2;
  AlgebraDef A("N2",
               {{"L", Parity::Even, Rational(2)},
                {"J", Parity::Even, Rational(1)},
                {"G+", Parity::Odd, Rational(3, 2)},
                {"G-", Parity::Odd, Rational(3, 2)}},
               f);
  A.set_bracket(L, L, primary(L, 2));
  A.set_bracket(L, J, primary(J, 1));
  A.set_bracket(L, Gp, primary(Gp, Rational(3, 2)));
  A.set_bracket(L, Gm, primary(Gm, Rational(3, 2)));
  A.set_bracket(J, J, LambdaPoly());
  LambdaPoly jp, jm;
  jp.add(0, gen(Gp));
  jm.add(0, gen(Gm, -1));
  A.set_bracket(J, Gp, jp);
  A.set_bracket(J, Gm, jm);
  A.set_bracket(Gp, Gp, LambdaPoly());
  A.set_bracket(Gm, Gm, LambdaPoly());
  // L + 1/2 (D + 2 lambda) J
  LambdaPoly pm;
  pm.add(0, gen(L) + gen(J, Rational(1, 2), 1));
  pm.add(1, gen(J));
  A.set_bracket(Gp, Gm, pm);
  return complete_table_cs4(A);
}

AlgebraDef make_n4(const CyclotomicField& f) {
  if (f.conductor() % 4 != 0) throw ConductorMismatch("the N=4 algebra needs i, i.e. 4 | conductor");
  using namespace n4;
  CycloScalar i = root_of_unity(4, f);
  CycloScalar half(Rational(1, 2));
  // Pauli matrices sigma[s][a][b]
  CycloScalar sigma[3][2][2] = {{{0, 1}, {1, 0}}, {{0, -i}, {i, 0}}, {{1, 0}, {0, -1}}};
  AlgebraDef A("N4",
               {{"L", Parity::Even, Rational(2)},
                {"J1", Parity::Even, Rational(1)},
                {"J2", Parity::Even, Rational(1)},
                {"J3", Parity::Even, Rational(1)},
                {"G1", Parity::Odd, Rational(3, 2)},
                {"G2", Parity::Odd, Rational(3, 2)},
                {"Gbar1", Parity::Odd, Rational(3, 2)},
                {"Gbar2", Parity::Odd, Rational(3, 2)}},
               f);
  const int J[3] = {J1, J2, J3};
  const int G[2] = {G1, G2};
  const int Gb[2] = {Gbar1, Gbar2};

  A.set_bracket(L, L, primary(L, 2));
  for (int s = 0; s < 3; ++s) A.set_bracket(L, J[s], primary(J[s], 1));
  for (int a = 0; a < 2; ++a) {
    A.set_bracket(L, G[a], primary(G[a], Rational(3, 2)));
    A.set_bracket(L, Gb[a], primary(Gb[a], Rational(3, 2)));
  }
  // [J^m, J^n] as 2x2 matrices, expanded back in the J basis
  auto mat = [&](int s, int r, int c) { return half * sigma[s][r][c]; };
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      CycloScalar comm[2][2];
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          for (int k = 0; k < 2; ++k) comm[r][c] += mat(m, r, k) * mat(n, k, c) - mat(n, r, k) * mat(m, k, c);
      // M = sum x_s J^s: x3 = M11 - M22, x1 = M12 + M21, x2 = i (M12 - M21)
      ConfElt x = gen(J[0], comm[0][1] + comm[1][0]) + gen(J[1], i * (comm[0][1] - comm[1][0])) +
                  gen(J[2], comm[0][0] - comm[1][1]);
      LambdaPoly p;
      p.add(0, x);
      A.set_bracket(J[m], J[n], p);
    }
  for (int s = 0; s < 3; ++s)
    for (int a = 0; a < 2; ++a) {
      ConfElt g, gb;
      for (int b = 0; b < 2; ++b) {
        g += gen(G[b], -half * sigma[s][a][b]);
        gb += gen(Gb[b], half * sigma[s][b][a]);
      }
      LambdaPoly pg, pgb;
      pg.add(0, g);
      pgb.add(0, gb);
      A.set_bracket(J[s], G[a], pg);
      A.set_bracket(J[s], Gb[a], pgb);
    }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      A.set_bracket(G[a], G[b], LambdaPoly());
      A.set_bracket(Gb[a], Gb[b], LambdaPoly());
      // 2 delta_ab L - 2 (D + 2 lambda) sum_s sigma^s_ab J^s
      LambdaPoly p;
      ConfElt c0, c1;
      if (a == b) c0 += gen(L, 2);
      for (int s = 0; s < 3; ++s) {
        c0 += gen(J[s], CycloScalar(-2) * sigma[s][a][b], 1);
        c1 += gen(J[s], CycloScalar(-4) * sigma[s][a][b]);
      }
      p.add(0, c0);
      p.add(1, c1);
      A.set_bracket(G[a], Gb[b], p);
    }
  return complete_table_cs4(A);
}

}  // namespace csalg
