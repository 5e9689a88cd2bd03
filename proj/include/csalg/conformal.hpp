#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csalg/coefficients.hpp"

namespace csalg {

enum class Parity { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) { return Parity((int(a) + int(b)) & 1); }
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct GeneratorInfo {
  std::string name;
  Parity parity = Parity::Even;
  std::optional<Rational> weight;

  friend bool operator==(const GeneratorInfo&, const GeneratorInfo&) = default;
};

// One basis monomial  D^(dpow) gen (x) t^exp.
struct TermKey {
  int gen = 0;
  int dpow = 0;
  FracExponent exp;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

// Element of A (x) S_m, expanded as sum of c * D^(j) v (x) t^q.
class ConfElt {
 public:
  using Terms = std::map<TermKey, CycloScalar>;

  ConfElt() = default;
  static ConfElt generator(int gen, const CycloScalar& c = CycloScalar(1), const FracExponent& q = {}, int dpow = 0);

  int level() const { return level_; }
  ConfElt with_level(int m) const;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_dpow() const;
  CycloScalar coeff(const TermKey& k) const;

  void add_term(const TermKey& k, const CycloScalar& c);
  void add_scaled(const ConfElt& o, const CycloScalar& c);

  ConfElt operator-() const;
  friend ConfElt operator+(const ConfElt& a, const ConfElt& b);
  friend ConfElt operator-(const ConfElt& a, const ConfElt& b);
  friend ConfElt operator*(const CycloScalar& c, const ConfElt& x);
  // multiplication in the S_m slot
  friend ConfElt operator*(const LaurentElt& r, const ConfElt& x);
  ConfElt& operator+=(const ConfElt& o) {
    add_scaled(o, CycloScalar(1));
    return *this;
  }
  ConfElt& operator-=(const ConfElt& o) {
    add_scaled(o, CycloScalar(-1));
    return *this;
  }

  friend bool operator==(const ConfElt& a, const ConfElt& b) { return a.terms_ == b.terms_; }

 private:
  int level_ = 1;
  Terms terms_;
};

// sum of lambda^(n) * c_n, i.e. the n-products c_n = a_(n) b.
class LambdaPoly {
 public:
  using Coeffs = std::map<int, ConfElt>;

  LambdaPoly() = default;
  const Coeffs& coeffs() const { return c_; }
  ConfElt coeff(int n) const;
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
  void add(int n, const ConfElt& x, const CycloScalar& scale = CycloScalar(1));
  void set(int n, ConfElt x);

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.c_ == b.c_; }

 private:
  Coeffs c_;
};

class AlgebraDef {
 public:
  using Table = std::map<std::pair<int, int>, LambdaPoly>;

  AlgebraDef() = default;
  AlgebraDef(std::string name, std::vector<GeneratorInfo> gens, const CyclotomicField& f = CyclotomicField::standard());

  const std::string& name() const { return name_; }
  const CyclotomicField& field() const { return *field_; }
  const std::vector<GeneratorInfo>& generators() const { return gens_; }
  int size() const { return static_cast<int>(gens_.size()); }
  Parity parity(int g) const { return gens_.at(g).parity; }
  std::optional<int> find(const std::string& name) const;
  int index_of(const std::string& name) const;  // throws DomainError

  // entries live at level 1 with every exponent zero
  void set_bracket(int a, int b, LambdaPoly p);
  const LambdaPoly* entry(int a, int b) const;
  const Table& table() const { return table_; }
  bool is_complete() const;

  int max_lambda_degree() const;
  int max_dpow() const;

  friend bool operator==(const AlgebraDef& a, const AlgebraDef& b);

 private:
  std::string name_;
  const CyclotomicField* field_ = &CyclotomicField::standard();
  std::vector<GeneratorInfo> gens_;
  Table table_;
};

// Parity of a homogeneous element; throws on a mixed element, Even for zero.
Parity parity_of(const AlgebraDef& A, const ConfElt& x);

// [a lambda b] from [b lambda a]; odd_pair when both a and b are odd
LambdaPoly skew_flip(const LambdaPoly& ba, bool odd_pair);

// Fills every missing orientation from its partner via skew-symmetry and checks
// that orientations given twice agree.
AlgebraDef complete_table_cs4(AlgebraDef raw);

LambdaPoly lambda_bracket(const AlgebraDef& A, const ConfElt& x, const ConfElt& y);
ConfElt n_product(const AlgebraDef& A, const ConfElt& x, const ConfElt& y, int n);

// D_A^(j) acting on the A slot only
ConfElt partial_A(const ConfElt& x, int j = 1);
// D_hat = D_A (x) 1 + 1 (x) delta_t
ConfElt apply_partial(const ConfElt& x);
ConfElt apply_partial_divided(const ConfElt& x, int l);

// Coordinates in the basis D_hat^(l) (v (x) t^q); TermKey::dpow holds l.
using HatCoords = std::map<TermKey, CycloScalar>;
HatCoords to_hat_basis(const ConfElt& x);
ConfElt from_hat_basis(const HatCoords& h);

struct AxiomReport {
  bool cs0 = true, cs1 = true, cs2 = true, cs3 = true, cs4 = true, cs5 = true;
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::vector<std::pair<int, int>> cs4_failures;
  std::vector<std::array<int, 3>> cs5_failures;
  std::vector<std::string> messages;

  bool ok() const { return cs0 && cs1 && cs2 && cs3 && cs4 && cs5; }
};

struct AxiomOptions {
  std::uint64_t seed = 20240601;
  int spot_checks = 24;
};

AxiomReport check_axioms(const AlgebraDef& A, const AxiomOptions& opt = {});

// Bound on n-product indices beyond which every Jacobi term vanishes.
int cs5_bound(const AlgebraDef& A);

}  // namespace csalg
