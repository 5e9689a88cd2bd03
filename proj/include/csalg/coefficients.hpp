#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace csalg {

using Rational = mpq_class;

// Exact normalized rational used for exponents of t and for modes.
class FracExponent {
 public:
  FracExponent() = default;
  FracExponent(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  Rational to_rational() const { return Rational(num_, den_); }

  FracExponent operator-() const { return {-num_, den_}; }
  friend FracExponent operator+(const FracExponent& a, const FracExponent& b);
  friend FracExponent operator-(const FracExponent& a, const FracExponent& b) { return a + (-b); }
  friend FracExponent operator*(const FracExponent& a, std::int64_t k);
  FracExponent& operator+=(const FracExponent& o) { return *this = *this + o; }
  FracExponent& operator-=(const FracExponent& o) { return *this = *this - o; }

  friend bool operator==(const FracExponent&, const FracExponent&) = default;
  friend std::strong_ordering operator<=>(const FracExponent& a, const FracExponent& b);

  // floor and fractional part in [0,1)
  std::int64_t floor() const;
  FracExponent frac() const { return *this - FracExponent(floor()); }

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Q(zeta_N) with reduction data modulo the N-th cyclotomic polynomial.
// Instances are interned and live for the whole process.
class CyclotomicField {
 public:
  using Sparse = std::vector<std::pair<int, Rational>>;

  static const CyclotomicField& get(int conductor);
  static const CyclotomicField& standard();  // conductor 24

  int conductor() const { return n_; }
  int degree() const { return phi_; }
  // zeta^e reduced to the power basis 1, zeta, ..., zeta^(phi-1)
  const Sparse& power(long e) const;

  CyclotomicField(const CyclotomicField&) = delete;
  CyclotomicField& operator=(const CyclotomicField&) = delete;

 private:
  explicit CyclotomicField(int n);
  int n_;
  int phi_;
  std::vector<Sparse> powers_;
};

// Element of Q(zeta_N). Rationals carry no field and combine with any field.
class CycloScalar {
 public:
  using Sparse = CyclotomicField::Sparse;

  CycloScalar() = default;
  CycloScalar(long v);
  CycloScalar(const Rational& v);
  CycloScalar(const CyclotomicField& f, Sparse coeffs);

  static CycloScalar zeta_power(const CyclotomicField& f, long e);

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const;
  Rational rational_value() const;  // throws DomainError if not rational
  const CyclotomicField* field() const { return field_; }
  const Sparse& coeffs() const { return c_; }

  CycloScalar operator-() const;
  friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) { return a * b.inverse(); }
  CycloScalar& operator+=(const CycloScalar& o) { return *this = *this + o; }
  CycloScalar& operator-=(const CycloScalar& o) { return *this = *this - o; }
  CycloScalar& operator*=(const CycloScalar& o) { return *this = *this * o; }

  CycloScalar inverse() const;
  CycloScalar pow(long e) const;

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);
  // total order used only for canonical choices
  friend std::strong_ordering compare(const CycloScalar& a, const CycloScalar& b);

  // true when the leading (lowest exponent) coefficient is negative
  bool leading_negative() const { return !c_.empty() && sgn(c_.front().second) < 0; }
  std::string str() const;

 private:
  const CyclotomicField* field_ = nullptr;
  Sparse c_;
};

// xi_m = zeta_N^(N/m); requires m | N.
CycloScalar root_of_unity(int m, const CyclotomicField& f = CyclotomicField::standard());

// Generalized binomial coefficient C(q, j) for rational q.
Rational binomial(const Rational& q, int j);
Rational binomial(const FracExponent& q, int j);

// S_m = k[t^{1/m}, t^{-1/m}].
class LaurentElt {
 public:
  using Terms = std::map<FracExponent, CycloScalar>;

  LaurentElt() = default;
  LaurentElt(const CycloScalar& c);
  LaurentElt(long c) : LaurentElt(CycloScalar(c)) {}
  static LaurentElt monomial(const CycloScalar& c, const FracExponent& q);
  static LaurentElt t(const FracExponent& q) { return monomial(CycloScalar(1), q); }

  int level() const { return level_; }
  LaurentElt with_level(int m) const;  // m must be a multiple of every denominator
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  CycloScalar coeff(const FracExponent& q) const;
  bool is_unit() const { return terms_.size() == 1; }  // units of S_m are monomials
  LaurentElt inverse() const;                           // only for units

  LaurentElt operator-() const;
  friend LaurentElt operator+(const LaurentElt& a, const LaurentElt& b);
  friend LaurentElt operator-(const LaurentElt& a, const LaurentElt& b) { return a + (-b); }
  friend LaurentElt operator*(const LaurentElt& a, const LaurentElt& b);
  LaurentElt& operator+=(const LaurentElt& o) { return *this = *this + o; }
  LaurentElt& operator-=(const LaurentElt& o) { return *this = *this - o; }
  LaurentElt& operator*=(const LaurentElt& o) { return *this = *this * o; }

  friend bool operator==(const LaurentElt& a, const LaurentElt& b) { return a.terms_ == b.terms_; }

  void add_term(const FracExponent& q, const CycloScalar& c);
  std::string str() const;

 private:
  int level_ = 1;
  Terms terms_;
};

LaurentElt delta_t(const LaurentElt& x);
// divided power delta_t^(j)
LaurentElt delta_t_divided(const LaurentElt& x, int j);
// t^{p/m} -> xi_m^{g p} t^{p/m}, with m the level of x (or the given modulus)
// field of the first irrational coefficient, the standard field otherwise
const CyclotomicField& field_of(const LaurentElt& x);
// Q(zeta_n) -> Q(zeta_N) for n | N
CycloScalar embed(const CycloScalar& x, const CyclotomicField& target);

LaurentElt galois_act(long g, const LaurentElt& x);
LaurentElt galois_act(long g, const LaurentElt& x, int modulus, const CyclotomicField& f = CyclotomicField::standard());
// ring substitution t -> t^{-1}
LaurentElt invert_variable(const LaurentElt& x);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace csalg
