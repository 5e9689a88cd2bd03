#include "csalg/coefficients.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "csalg/errors.hpp"

namespace csalg {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError("exponent overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

FracExponent make_frac(i128 n, i128 d) {
  if (d == 0) throw DomainError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return FracExponent(narrow(n), narrow(d));
}

}  // namespace

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

// ---------------------------------------------------------------- FracExponent

FracExponent::FracExponent(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

FracExponent operator+(const FracExponent& a, const FracExponent& b) {
  if (a.den_ == b.den_) return make_frac(i128(a.num_) + b.num_, a.den_);
  return make_frac(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

FracExponent operator*(const FracExponent& a, std::int64_t k) { return make_frac(i128(a.num_) * k, a.den_); }

std::strong_ordering operator<=>(const FracExponent& a, const FracExponent& b) {
  i128 l = i128(a.num_) * b.den_;
  i128 r = i128(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t FracExponent::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string FracExponent::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

// ------------------------------------------------------------ CyclotomicField

namespace {

using Poly = std::vector<mpz_class>;  // coefficient of x^i at index i

Poly poly_div_exact(Poly num, const Poly& den) {
  // den monic
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  Poly q(nn - dn + 1);
  for (int i = nn; i >= dn; --i) {
    mpz_class c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  return q;
}

Poly cyclotomic_poly(int n) {
  static std::map<int, Poly> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Poly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  memo[n] = p;
  return p;
}

std::mutex& field_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

CyclotomicField::CyclotomicField(int n) : n_(n) {
  Poly phi_poly;
  {
    phi_poly = cyclotomic_poly(n);
  }
  phi_ = static_cast<int>(phi_poly.size()) - 1;
  std::vector<Rational> cur(phi_);
  cur[0] = 1;
  powers_.reserve(n);
  for (int e = 0; e < n; ++e) {
    Sparse s;
    for (int k = 0; k < phi_; ++k)
      if (cur[k] != 0) s.emplace_back(k, cur[k]);
    powers_.push_back(std::move(s));
    // multiply by x and reduce with x^phi = -sum a_i x^i
    Rational top = cur[phi_ - 1];
    for (int k = phi_ - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (top != 0)
      for (int k = 0; k < phi_; ++k) cur[k] -= top * Rational(phi_poly[k]);
  }
}

const CyclotomicField& CyclotomicField::get(int conductor) {
  if (conductor < 1) throw DomainError("conductor must be positive");
  static std::map<int, std::unique_ptr<CyclotomicField>> registry;
  std::lock_guard<std::mutex> lock(field_mutex());
  auto it = registry.find(conductor);
  if (it == registry.end())
    it = registry.emplace(conductor, std::unique_ptr<CyclotomicField>(new CyclotomicField(conductor))).first;
  return *it->second;
}

const CyclotomicField& CyclotomicField::standard() {
  static const CyclotomicField& f = get(24);
  return f;
}

const CyclotomicField::Sparse& CyclotomicField::power(long e) const {
  long r = e % n_;
  if (r < 0) r += n_;
  return powers_[r];
}

// ---------------------------------------------------------------- CycloScalar

namespace {

const CyclotomicField* join(const CyclotomicField* a, const CyclotomicField* b) {
  if (!a) return b;
  if (!b) return a;
  if (a != b) throw ConductorMismatch("scalars from different cyclotomic fields");
  return a;
}

}  // namespace

CycloScalar::CycloScalar(long v) {
  if (v != 0) c_.emplace_back(0, Rational(v));
}

CycloScalar::CycloScalar(const Rational& v) {
  if (v == 0) return;
  c_.emplace_back(0, v);
  c_.back().second.canonicalize();
}

CycloScalar::CycloScalar(const CyclotomicField& f, Sparse coeffs) : field_(&f) {
  std::map<int, Rational> acc;
  for (auto& [e, c] : coeffs) {
    if (e < 0 || e >= f.degree()) {
      for (auto& [k, r] : f.power(e)) acc[k] += c * r;
    } else {
      acc[e] += c;
    }
  }
  for (auto& [e, c] : acc)
    if (c != 0) c_.emplace_back(e, c);
  if (is_rational()) field_ = nullptr;
}

CycloScalar CycloScalar::zeta_power(const CyclotomicField& f, long e) {
  CycloScalar r;
  r.field_ = &f;
  r.c_ = f.power(e);
  if (r.is_rational()) r.field_ = nullptr;
  return r;
}

bool CycloScalar::is_rational() const { return c_.empty() || (c_.size() == 1 && c_[0].first == 0); }

Rational CycloScalar::rational_value() const {
  if (!is_rational()) throw DomainError("scalar " + str() + " is not rational");
  return c_.empty() ? Rational(0) : c_[0].second;
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

CycloScalar operator+(const CycloScalar& a, const CycloScalar& b) {
  if (b.c_.empty()) return a;
  if (a.c_.empty()) return b;
  CycloScalar r;
  r.field_ = join(a.field_, b.field_);
  auto i = a.c_.begin();
  auto j = b.c_.begin();
  while (i != a.c_.end() || j != b.c_.end()) {
    if (j == b.c_.end() || (i != a.c_.end() && i->first < j->first)) {
      r.c_.push_back(*i++);
    } else if (i == a.c_.end() || j->first < i->first) {
      r.c_.push_back(*j++);
    } else {
      Rational s = i->second + j->second;
      if (s != 0) r.c_.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  if (r.is_rational()) r.field_ = nullptr;
  return r;
}

CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) { return a + (-b); }

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  if (a.is_rational()) {
    CycloScalar r = b;
    for (auto& [e, c] : r.c_) c *= a.c_[0].second;
    return r;
  }
  if (b.is_rational()) return b * a;
  const CyclotomicField* f = join(a.field_, b.field_);
  int phi = f->degree();
  std::vector<Rational> acc(phi);
  for (auto& [e1, c1] : a.c_) {
    for (auto& [e2, c2] : b.c_) {
      int e = e1 + e2;
      if (e < phi) {
        acc[e] += c1 * c2;
      } else {
        Rational p = c1 * c2;
        for (auto& [k, r] : f->power(e)) acc[k] += p * r;
      }
    }
  }
  CycloScalar r;
  r.field_ = f;
  for (int k = 0; k < phi; ++k)
    if (acc[k] != 0) r.c_.emplace_back(k, std::move(acc[k]));
  if (r.is_rational()) r.field_ = nullptr;
  return r;
}

CycloScalar CycloScalar::inverse() const {
  if (c_.empty()) throw DomainError("division by zero");
  if (is_rational()) return CycloScalar(Rational(1) / c_[0].second);
  // solve (this * y) = 1 with y in the power basis
  const CyclotomicField& f = *field_;
  int phi = f.degree();
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1));
  for (int k = 0; k < phi; ++k) {
    CycloScalar col = *this * zeta_power(f, k);
    for (auto& [e, c] : col.c_) m[e][k] = c;
  }
  m[0][phi] = 1;
  for (int col = 0, row = 0; col < phi; ++col, ++row) {
    int piv = row;
    while (piv < phi && m[piv][col] == 0) ++piv;
    if (piv == phi) throw DomainError("singular multiplication matrix");
    std::swap(m[piv], m[row]);
    Rational inv = 1 / m[row][col];
    for (int k = col; k <= phi; ++k) m[row][k] *= inv;
    for (int r = 0; r < phi; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational fct = m[r][col];
      for (int k = col; k <= phi; ++k) m[r][k] -= fct * m[row][k];
    }
  }
  Sparse y;
  for (int k = 0; k < phi; ++k)
    if (m[k][phi] != 0) y.emplace_back(k, m[k][phi]);
  return CycloScalar(f, std::move(y));
}

CycloScalar CycloScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloScalar base = *this, r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.c_.size() != b.c_.size()) return false;
  if (!a.is_rational() && !b.is_rational() && a.field_ != b.field_) throw ConductorMismatch("comparing scalars from different fields");
  return a.c_ == b.c_;
}

std::strong_ordering compare(const CycloScalar& a, const CycloScalar& b) {
  size_t n = std::min(a.c_.size(), b.c_.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.c_[i].first != b.c_[i].first) return a.c_[i].first <=> b.c_[i].first;
    int c = cmp(a.c_[i].second, b.c_[i].second);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.c_.size() <=> b.c_.size();
}

std::string CycloScalar::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : c_) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "zeta";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

CycloScalar root_of_unity(int m, const CyclotomicField& f) {
  if (m <= 0 || f.conductor() % m != 0)
    throw ConductorMismatch("order " + std::to_string(m) + " does not divide conductor " + std::to_string(f.conductor()));
  return CycloScalar::zeta_power(f, f.conductor() / m);
}

Rational binomial(const Rational& q, int j) {
  if (j < 0) return 0;
  Rational r = 1;
  for (int i = 0; i < j; ++i) {
    r *= (q - i);
    r /= (i + 1);
  }
  return r;
}

Rational binomial(const FracExponent& q, int j) { return binomial(q.to_rational(), j); }

// ---------------------------------------------------------------- LaurentElt

LaurentElt::LaurentElt(const CycloScalar& c) {
  if (!c.is_zero()) terms_.emplace(FracExponent(0), c);
}

LaurentElt LaurentElt::monomial(const CycloScalar& c, const FracExponent& q) {
  LaurentElt r;
  r.level_ = static_cast<int>(q.den());
  if (!c.is_zero()) r.terms_.emplace(q, c);
  return r;
}

LaurentElt LaurentElt::with_level(int m) const {
  if (m <= 0 || m % level_ != 0) {
    for (auto& [q, c] : terms_)
      if (m <= 0 || m % q.den() != 0) throw DomainError("exponent " + q.str() + " not in S_" + std::to_string(m));
  }
  LaurentElt r = *this;
  r.level_ = m;
  return r;
}

bool LaurentElt::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero()); }

CycloScalar LaurentElt::coeff(const FracExponent& q) const {
  auto it = terms_.find(q);
  return it == terms_.end() ? CycloScalar() : it->second;
}

LaurentElt LaurentElt::inverse() const {
  if (!is_unit()) throw DomainError("Laurent element " + str() + " is not a unit");
  auto& [q, c] = *terms_.begin();
  LaurentElt r = monomial(c.inverse(), -q);
  r.level_ = level_;
  return r;
}

LaurentElt LaurentElt::operator-() const {
  LaurentElt r = *this;
  for (auto& [q, c] : r.terms_) c = -c;
  return r;
}

void LaurentElt::add_term(const FracExponent& q, const CycloScalar& c) {
  if (c.is_zero()) return;
  if (level_ % q.den() != 0) level_ = static_cast<int>(lcm64(level_, q.den()));
  auto [it, fresh] = terms_.try_emplace(q, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentElt operator+(const LaurentElt& a, const LaurentElt& b) {
  LaurentElt r = a;
  r.level_ = static_cast<int>(lcm64(a.level_, b.level_));
  for (auto& [q, c] : b.terms_) r.add_term(q, c);
  return r;
}

LaurentElt operator*(const LaurentElt& a, const LaurentElt& b) {
  LaurentElt r;
  r.level_ = static_cast<int>(lcm64(a.level_, b.level_));
  for (auto& [qa, ca] : a.terms_)
    for (auto& [qb, cb] : b.terms_) r.add_term(qa + qb, ca * cb);
  return r;
}

std::string LaurentElt::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [q, c] : terms_) {
    bool neg = c.leading_negative();
    CycloScalar a = neg ? -c : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool one = a == CycloScalar(1);
    bool compound = a.coeffs().size() > 1;
    if (q.is_zero()) {
      os << (compound ? "(" + a.str() + ")" : a.str());
      continue;
    }
    if (!one) os << (compound ? "(" + a.str() + ")" : a.str()) << "*";
    os << "t^{" << q.str() << "}";
  }
  return os.str();
}

LaurentElt delta_t(const LaurentElt& x) {
  LaurentElt r = LaurentElt().with_level(x.level());
  for (auto& [q, c] : x.terms())
    if (!q.is_zero()) r.add_term(q - FracExponent(1), c * CycloScalar(q.to_rational()));
  return r;
}

LaurentElt delta_t_divided(const LaurentElt& x, int j) {
  LaurentElt r = LaurentElt().with_level(x.level());
  for (auto& [q, c] : x.terms()) r.add_term(q - FracExponent(j), c * CycloScalar(binomial(q, j)));
  return r;
}

const CyclotomicField& field_of(const LaurentElt& x) {
  for (auto& [q, c] : x.terms())
    if (c.field()) return *c.field();
  return CyclotomicField::standard();
}

CycloScalar embed(const CycloScalar& x, const CyclotomicField& target) {
  if (x.is_rational()) return x;
  int n = x.field()->conductor();
  if (target.conductor() % n != 0)
    throw ConductorMismatch("conductor " + std::to_string(n) + " does not divide " + std::to_string(target.conductor()));
  long k = target.conductor() / n;
  CycloScalar r;
  for (auto& [e, c] : x.coeffs()) r += CycloScalar::zeta_power(target, e * k) * CycloScalar(c);
  return r;
}

LaurentElt galois_act(long g, const LaurentElt& x) { return galois_act(g, x, x.level(), field_of(x)); }

LaurentElt galois_act(long g, const LaurentElt& x, int modulus, const CyclotomicField& f) {
  CycloScalar xi = root_of_unity(modulus, f);
  LaurentElt r = LaurentElt().with_level(modulus);
  for (auto& [q, c] : x.terms()) {
    if (modulus % q.den() != 0) throw DomainError("exponent " + q.str() + " not in S_" + std::to_string(modulus));
    std::int64_t p = (q * modulus).num();
    long e = static_cast<long>(((g % modulus) * (p % modulus)) % modulus);
    if (e < 0) e += modulus;
    r.add_term(q, c * xi.pow(e));
  }
  return r;
}

LaurentElt invert_variable(const LaurentElt& x) {
  LaurentElt r = LaurentElt().with_level(x.level());
  for (auto& [q, c] : x.terms()) r.add_term(-q, c);
  return r;
}

}  // namespace csalg
