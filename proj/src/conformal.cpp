#include "csalg/conformal.hpp"

#include <random>
#include <sstream>

#include "csalg/errors.hpp"

namespace csalg {

// ------------------------------------------------------------------- ConfElt

ConfElt ConfElt::generator(int gen, const CycloScalar& c, const FracExponent& q, int dpow) {
  ConfElt r;
  r.add_term({gen, dpow, q}, c);
  return r;
}

ConfElt ConfElt::with_level(int m) const {
  for (auto& [k, c] : terms_)
    if (m <= 0 || m % k.exp.den() != 0) throw DomainError("exponent " + k.exp.str() + " not in S_" + std::to_string(m));
  ConfElt r = *this;
  r.level_ = m;
  return r;
}

int ConfElt::max_dpow() const {
  int d = 0;
  for (auto& [k, c] : terms_) d = std::max(d, k.dpow);
  return d;
}

CycloScalar ConfElt::coeff(const TermKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? CycloScalar() : it->second;
}

void ConfElt::add_term(const TermKey& k, const CycloScalar& c) {
  if (c.is_zero()) return;
  if (level_ % k.exp.den() != 0) level_ = static_cast<int>(lcm64(level_, k.exp.den()));
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ConfElt::add_scaled(const ConfElt& o, const CycloScalar& c) {
  if (c.is_zero()) return;
  level_ = static_cast<int>(lcm64(level_, o.level_));
  bool one = c == CycloScalar(1);
  for (auto& [k, v] : o.terms_) add_term(k, one ? v : v * c);
}

ConfElt ConfElt::operator-() const {
  ConfElt r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

ConfElt operator+(const ConfElt& a, const ConfElt& b) {
  ConfElt r = a;
  r += b;
  return r;
}

ConfElt operator-(const ConfElt& a, const ConfElt& b) {
  ConfElt r = a;
  r -= b;
  return r;
}

ConfElt operator*(const CycloScalar& c, const ConfElt& x) {
  ConfElt r;
  r.level_ = x.level_;
  r.add_scaled(x, c);
  return r;
}

ConfElt operator*(const LaurentElt& s, const ConfElt& x) {
  ConfElt r;
  r.level_ = static_cast<int>(lcm64(x.level_, s.level()));
  for (auto& [q, cs] : s.terms())
    for (auto& [k, c] : x.terms_) r.add_term({k.gen, k.dpow, k.exp + q}, c * cs);
  return r;
}

// ---------------------------------------------------------------- LambdaPoly

ConfElt LambdaPoly::coeff(int n) const {
  auto it = c_.find(n);
  return it == c_.end() ? ConfElt() : it->second;
}

void LambdaPoly::add(int n, const ConfElt& x, const CycloScalar& scale) {
  ConfElt& slot = c_[n];
  slot.add_scaled(x, scale);
  if (slot.is_zero()) c_.erase(n);
}

void LambdaPoly::set(int n, ConfElt x) {
  if (x.is_zero())
    c_.erase(n);
  else
    c_[n] = std::move(x);
}

// ---------------------------------------------------------------- AlgebraDef

AlgebraDef::AlgebraDef(std::string name, std::vector<GeneratorInfo> gens, const CyclotomicField& f)
    : name_(std::move(name)), field_(&f), gens_(std::move(gens)) {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (gens_[i].name == gens_[j].name) throw DomainError("duplicate generator " + gens_[i].name);
}

std::optional<int> AlgebraDef::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

int AlgebraDef::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw DomainError("unknown generator " + name + " in algebra " + name_);
  return *i;
}

void AlgebraDef::set_bracket(int a, int b, LambdaPoly p) {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw DomainError("generator index out of range");
  for (auto& [n, x] : p.coeffs())
    for (auto& [k, c] : x.terms()) {
      if (!k.exp.is_zero()) throw DomainError("bracket table entries cannot carry powers of t");
      if (k.gen < 0 || k.gen >= size()) throw DomainError("generator index out of range");
    }
  table_[{a, b}] = std::move(p);
}

const LambdaPoly* AlgebraDef::entry(int a, int b) const {
  auto it = table_.find({a, b});
  return it == table_.end() ? nullptr : &it->second;
}

bool AlgebraDef::is_complete() const { return table_.size() == size_t(size()) * size_t(size()); }

int AlgebraDef::max_lambda_degree() const {
  int d = 0;
  for (auto& [ab, p] : table_) d = std::max(d, p.degree());
  return d;
}

int AlgebraDef::max_dpow() const {
  int d = 0;
  for (auto& [ab, p] : table_)
    for (auto& [n, x] : p.coeffs()) d = std::max(d, x.max_dpow());
  return d;
}

bool operator==(const AlgebraDef& a, const AlgebraDef& b) {
  return a.name_ == b.name_ && a.field_ == b.field_ && a.gens_ == b.gens_ && a.table_ == b.table_;
}

Parity parity_of(const AlgebraDef& A, const ConfElt& x) {
  std::optional<Parity> p;
  for (auto& [k, c] : x.terms()) {
    Parity q = A.parity(k.gen);
    if (p && *p != q) throw DomainError("element is not parity homogeneous");
    p = q;
  }
  return p.value_or(Parity::Even);
}

// ------------------------------------------------------------------- partials

ConfElt partial_A(const ConfElt& x, int j) {
  if (j == 0) return x;
  ConfElt r = ConfElt().with_level(x.level());
  for (auto& [k, c] : x.terms())
    r.add_term({k.gen, k.dpow + j, k.exp}, c * CycloScalar(binomial(Rational(k.dpow + j), j)));
  return r;
}

ConfElt apply_partial(const ConfElt& x) { return apply_partial_divided(x, 1); }

ConfElt apply_partial_divided(const ConfElt& x, int l) {
  if (l == 0) return x;
  ConfElt r = ConfElt().with_level(x.level());
  for (auto& [k, c] : x.terms())
    for (int i = 0; i <= l; ++i) {
      Rational b = binomial(Rational(k.dpow + i), i) * binomial(k.exp, l - i);
      if (b == 0) continue;
      r.add_term({k.gen, k.dpow + i, k.exp - FracExponent(l - i)}, c * CycloScalar(b));
    }
  return r;
}

HatCoords to_hat_basis(const ConfElt& x) {
  HatCoords out;
  std::map<int, ConfElt::Terms> by_level;
  for (auto& [k, c] : x.terms()) by_level[k.dpow][k] = c;
  while (!by_level.empty()) {
    auto top = std::prev(by_level.end());
    int j = top->first;
    ConfElt::Terms layer = std::move(top->second);
    by_level.erase(top);
    for (auto& [k, c] : layer) {
      if (c.is_zero()) continue;
      out[k] += c;
      for (int i = 0; i < j; ++i) {
        Rational b = binomial(k.exp, j - i);
        if (b == 0) continue;
        TermKey low{k.gen, i, k.exp - FracExponent(j - i)};
        CycloScalar& slot = by_level[i][low];
        slot -= c * CycloScalar(b);
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

ConfElt from_hat_basis(const HatCoords& h) {
  ConfElt r;
  for (auto& [k, c] : h) r.add_scaled(apply_partial_divided(ConfElt::generator(k.gen, c, k.exp), k.dpow), CycloScalar(1));
  return r;
}

// ------------------------------------------------------------------ brackets

namespace {

const LambdaPoly& table_entry(const AlgebraDef& A, int u, int v) {
  const LambdaPoly* p = A.entry(u, v);
  if (!p)
    throw DomainError("bracket table has no entry for (" + A.generators()[u].name + ", " + A.generators()[v].name + ")");
  return *p;
}

// [D^(j) u _lambda D^(k) v] inside A
LambdaPoly decorated_bracket(const AlgebraDef& A, int u, int j, int v, int k) {
  const LambdaPoly& base = table_entry(A, u, v);
  if (j == 0 && k == 0) return base;
  // (D + lambda)^(k) applied to the bracket
  LambdaPoly step;
  for (auto& [n, w] : base.coeffs())
    for (int i = 0; i <= k; ++i) step.add(n + k - i, partial_A(w, i), CycloScalar(binomial(Rational(n + k - i), k - i)));
  if (j == 0) return step;
  // times (-1)^j lambda^(j)
  LambdaPoly out;
  CycloScalar sign(j % 2 ? -1 : 1);
  for (auto& [n, w] : step.coeffs()) out.add(n + j, w, sign * CycloScalar(binomial(Rational(n + j), j)));
  return out;
}

}  // namespace

LambdaPoly lambda_bracket(const AlgebraDef& A, const ConfElt& x, const ConfElt& y) {
  std::map<int, ConfElt> acc;
  int level = static_cast<int>(lcm64(x.level(), y.level()));
  for (auto& [kx, cx] : x.terms()) {
    for (auto& [ky, cy] : y.terms()) {
      LambdaPoly d = decorated_bracket(A, kx.gen, kx.dpow, ky.gen, ky.dpow);
      CycloScalar c = cx * cy;
      for (auto& [N, w] : d.coeffs()) {
        for (int i = 0; i <= N; ++i) {
          Rational b = binomial(kx.exp, i);
          if (b == 0) continue;
          CycloScalar cb = c * CycloScalar(b);
          FracExponent shift = kx.exp + ky.exp - FracExponent(i);
          ConfElt& slot = acc[N - i];
          for (auto& [kw, cw] : w.terms()) slot.add_term({kw.gen, kw.dpow, kw.exp + shift}, cw * cb);
        }
      }
    }
  }
  LambdaPoly out;
  for (auto& [n, w] : acc)
    if (!w.is_zero()) out.set(n, w.with_level(level));
  return out;
}

ConfElt n_product(const AlgebraDef& A, const ConfElt& x, const ConfElt& y, int n) {
  if (n < 0) throw DomainError("n-products are indexed by n >= 0");
  return lambda_bracket(A, x, y).coeff(n).with_level(static_cast<int>(lcm64(x.level(), y.level())));
}

// ----------------------------------------------------------------------- CS4

LambdaPoly skew_flip(const LambdaPoly& ba, bool odd_pair) {
  LambdaPoly out;
  int deg = ba.degree();
  for (int n = 0; n <= deg; ++n) {
    ConfElt acc;
    for (int j = 0; n + j <= deg; ++j) {
      ConfElt c = ba.coeff(n + j);
      if (c.is_zero()) continue;
      acc.add_scaled(partial_A(c, j), CycloScalar((j + n) % 2 ? -1 : 1));
    }
    // -p(a,b) with p = -1 for two odd generators
    out.add(n, acc, CycloScalar(odd_pair ? 1 : -1));
  }
  return out;
}

namespace {

std::string pair_name(const AlgebraDef& A, int a, int b) {
  return "(" + A.generators()[a].name + ", " + A.generators()[b].name + ")";
}

}  // namespace

AlgebraDef complete_table_cs4(AlgebraDef raw) {
  AlgebraDef out = raw;
  int n = raw.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const LambdaPoly* ab = raw.entry(a, b);
      const LambdaPoly* ba = raw.entry(b, a);
      if (!ab && !ba) throw DomainError("no bracket given for pair " + pair_name(raw, a, b));
      if (!ba) continue;
      bool odd = raw.parity(a) == Parity::Odd && raw.parity(b) == Parity::Odd;
      LambdaPoly derived = skew_flip(*ba, odd);
      if (ab) {
        if (!(derived == *ab)) throw Cs4Inconsistency("skew-symmetry fails for pair " + pair_name(raw, a, b));
      } else {
        out.set_bracket(a, b, std::move(derived));
      }
    }
  }
  return out;
}

int cs5_bound(const AlgebraDef& A) { return A.max_lambda_degree() + A.max_dpow() + 2; }

// ------------------------------------------------------------- axiom checks

namespace {

ConfElt random_element(const AlgebraDef& A, std::mt19937_64& rng, Parity want) {
  std::vector<int> pool;
  for (int g = 0; g < A.size(); ++g)
    if (A.parity(g) == want) pool.push_back(g);
  ConfElt x;
  if (pool.empty()) return x;
  int terms = 1 + int(rng() % 2);
  for (int t = 0; t < terms; ++t) {
    int g = pool[rng() % pool.size()];
    int d = int(rng() % 3);
    FracExponent q(std::int64_t(rng() % 9) - 4, 1 + std::int64_t(rng() % 2));
    long c = long(rng() % 5) - 2;
    if (c == 0) c = 3;
    x.add_term({g, d, q}, CycloScalar(c));
  }
  return x;
}

LaurentElt random_laurent(std::mt19937_64& rng) {
  LaurentElt r;
  int terms = 1 + int(rng() % 2);
  for (int t = 0; t < terms; ++t) r.add_term(FracExponent(std::int64_t(rng() % 7) - 3, 1 + std::int64_t(rng() % 2)), CycloScalar(long(rng() % 4) + 1));
  return r;
}

}  // namespace

AxiomReport check_axioms(const AlgebraDef& A, const AxiomOptions& opt) {
  AxiomReport rep;
  int n = A.size();
  auto gname = [&](int g) { return A.generators()[g].name; };

  // CS0: finiteness and parity of every table entry
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const LambdaPoly* p = A.entry(a, b);
      if (!p) {
        rep.cs0 = false;
        rep.messages.push_back("CS0: missing entry " + pair_name(A, a, b));
        continue;
      }
      Parity want = A.parity(a) + A.parity(b);
      for (auto& [k, x] : p->coeffs())
        for (auto& [t, c] : x.terms())
          if (A.parity(t.gen) != want || !t.exp.is_zero()) {
            rep.cs0 = false;
            rep.messages.push_back("CS0: entry " + pair_name(A, a, b) + " has a term of wrong parity");
          }
    }
  if (!rep.cs0) return rep;

  // CS1-CS3 spot checks on A (x) S
  std::mt19937_64 rng(opt.seed);
  for (int s = 0; s < opt.spot_checks; ++s) {
    Parity pa = Parity(rng() % 2), pb = Parity(rng() % 2);
    ConfElt x = random_element(A, rng, pa);
    ConfElt y = random_element(A, rng, pb);
    LaurentElt r = random_laurent(rng);
    LambdaPoly xy = lambda_bracket(A, x, y);
    LambdaPoly dx_y = lambda_bracket(A, apply_partial(x), y);
    LambdaPoly x_dy = lambda_bracket(A, x, apply_partial(y));
    int top = std::max({xy.degree(), dx_y.degree(), x_dy.degree()}) + 1;
    for (int m = 0; m <= top; ++m) {
      ConfElt lhs1 = dx_y.coeff(m);
      ConfElt rhs1 = m > 0 ? CycloScalar(-m) * xy.coeff(m - 1) : ConfElt();
      ConfElt lhs2 = x_dy.coeff(m);
      ConfElt rhs2 = apply_partial(xy.coeff(m)) + (m > 0 ? CycloScalar(m) * xy.coeff(m - 1) : ConfElt());
      if (!(lhs1 == rhs1) || !(lhs2 == rhs2)) {
        if (rep.cs1) rep.messages.push_back("CS1: spot check " + std::to_string(s) + " failed");
        rep.cs1 = false;
      }
    }
    // CS2: D(r x) = r D x + delta(r) x
    if (!(apply_partial(r * x) == r * apply_partial(x) + delta_t(r) * x)) {
      if (rep.cs2) rep.messages.push_back("CS2: spot check " + std::to_string(s) + " failed");
      rep.cs2 = false;
    }
    // CS3: x_(n)(r y) = r (x_(n) y), (r x)_(n) y = sum_j delta^(j)(r) x_(n+j) y
    LambdaPoly x_ry = lambda_bracket(A, x, r * y);
    LambdaPoly rx_y = lambda_bracket(A, r * x, y);
    for (int m = 0; m <= top; ++m) {
      ConfElt want2;
      for (int j = 0; m + j <= top; ++j) want2 += delta_t_divided(r, j) * xy.coeff(m + j);
      if (!(x_ry.coeff(m) == r * xy.coeff(m)) || !(rx_y.coeff(m) == want2)) {
        if (rep.cs3) rep.messages.push_back("CS3: spot check " + std::to_string(s) + " failed");
        rep.cs3 = false;
      }
    }
  }

  // CS4 on every ordered pair
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++rep.pairs_checked;
      bool odd = A.parity(a) == Parity::Odd && A.parity(b) == Parity::Odd;
      if (!(skew_flip(*A.entry(b, a), odd) == *A.entry(a, b))) {
        rep.cs4 = false;
        rep.cs4_failures.emplace_back(a, b);
        rep.messages.push_back("CS4: skew-symmetry fails for " + pair_name(A, a, b));
      }
    }

  // CS5 on every ordered triple
  int bound = cs5_bound(A);
  for (int a = 0; a < n; ++a) {
    ConfElt ea = ConfElt::generator(a);
    for (int b = 0; b < n; ++b) {
      ConfElt eb = ConfElt::generator(b);
      CycloScalar pab((A.parity(a) == Parity::Odd && A.parity(b) == Parity::Odd) ? -1 : 1);
      const LambdaPoly& ab = *A.entry(a, b);
      for (int c = 0; c < n; ++c) {
        ++rep.triples_checked;
        ConfElt ec = ConfElt::generator(c);
        const LambdaPoly& bc = *A.entry(b, c);
        const LambdaPoly& ac = *A.entry(a, c);
        std::map<int, LambdaPoly> a_on_bc, b_on_ac, ab_on_c;
        for (auto& [k, x] : bc.coeffs()) a_on_bc[k] = lambda_bracket(A, ea, x);
        for (auto& [k, x] : ac.coeffs()) b_on_ac[k] = lambda_bracket(A, eb, x);
        for (auto& [k, x] : ab.coeffs()) ab_on_c[k] = lambda_bracket(A, x, ec);
        int top = bound;
        for (auto* m : {&a_on_bc, &b_on_ac, &ab_on_c})
          for (auto& [k, p] : *m) top = std::max(top, k + p.degree());
        bool failed = false;
        for (int m = 0; m <= top && !failed; ++m) {
          for (int nn = 0; nn <= top && !failed; ++nn) {
            ConfElt lhs = a_on_bc.count(nn) ? a_on_bc[nn].coeff(m) : ConfElt();
            ConfElt rhs = b_on_ac.count(m) ? pab * b_on_ac[m].coeff(nn) : ConfElt();
            for (int j = 0; j <= m; ++j) {
              auto it = ab_on_c.find(j);
              if (it == ab_on_c.end()) continue;
              rhs.add_scaled(it->second.coeff(m + nn - j), CycloScalar(binomial(Rational(m), j)));
            }
            if (!(lhs == rhs)) {
              failed = true;
              rep.cs5 = false;
              rep.cs5_failures.push_back({a, b, c});
              std::ostringstream os;
              os << "CS5: Jacobi identity fails on triple (" << gname(a) << ", " << gname(b) << ", " << gname(c)
                 << ") at m=" << m << ", n=" << nn;
              rep.messages.push_back(os.str());
            }
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace csalg
