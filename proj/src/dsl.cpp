#include "csalg/dsl.hpp"

#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "csalg/errors.hpp"

namespace csalg {

namespace {

// one product of symbols; gen < 0 means no generator
struct Mono {
  int gen = -1;
  int dpow = 0;
  int xpow = 0;
  FracExponent exp;
  friend bool operator==(const Mono&, const Mono&) = default;
  friend auto operator<=>(const Mono&, const Mono&) = default;
};

using Poly = std::map<Mono, CycloScalar>;

void add_to(Poly& p, const Mono& m, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool reserved(const std::string& s) { return s == "D" || s == "x" || s == "t" || s == "zeta"; }

class ExprParser {
 public:
  ExprParser(const std::string& s, int line, int col0, const AlgebraDef* A, const CyclotomicField& engine, int file_conductor)
      : s_(s), line_(line), col0_(col0), A_(A), engine_(engine), file_n_(file_conductor) {}

  Poly parse_all() {
    Poly p = sum();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  int start_col() const { return col0_ + 1; }

 private:
  const std::string& s_;
  size_t pos_ = 0;
  int line_;
  int col0_;
  const AlgebraDef* A_;
  const CyclotomicField& engine_;
  int file_n_;

  [[noreturn]] void fail(const std::string& msg, std::optional<size_t> at = std::nullopt) const {
    throw ParseError(msg, line_, col0_ + int(at.value_or(pos_)) + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer", start);
    return std::stol(s_.substr(start, pos_ - start));
  }

  Rational rational() {
    size_t start = pos_;
    long p = integer();
    long q = 1;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      q = integer();
      if (q <= 0) fail("bad denominator", start);
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  int divided_power() {
    // after D or x: optional ^(n)
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      expect('(');
      long n = integer();
      if (n < 0) fail("negative power");
      expect(')');
      return int(n);
    }
    return 1;
  }

  Poly sum() {
    Poly out;
    bool first = true;
    while (true) {
      char c = peek();
      CycloScalar sign(1);
      if (c == '+' || c == '-') {
        ++pos_;
        if (c == '-') sign = CycloScalar(-1);
      } else if (!first) {
        break;
      }
      first = false;
      for (auto& [m, v] : product()) add_to(out, m, sign * v);
    }
    return out;
  }

  bool starts_factor(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || is_ident_start(c); }

  Poly product() {
    Poly p = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = multiply(p, factor());
      } else if (starts_factor(c)) {
        p = multiply(p, factor());
      } else {
        break;
      }
    }
    return p;
  }

  Poly multiply(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a)
      for (auto& [mb, cb] : b) {
        if (ma.gen >= 0 && mb.gen >= 0) fail("product of two generators");
        Mono m{std::max(ma.gen, mb.gen), ma.dpow + mb.dpow, ma.xpow + mb.xpow, ma.exp + mb.exp};
        Rational f = binomial(Rational(m.dpow), ma.dpow) * binomial(Rational(m.xpow), ma.xpow);
        add_to(r, m, ca * cb * CycloScalar(f));
      }
    return r;
  }

  static Poly constant(const CycloScalar& c) {
    Poly p;
    add_to(p, Mono{}, c);
    return p;
  }

  Poly factor() {
    char c = peek();
    size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Poly p = sum();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(CycloScalar(rational()));
    if (!is_ident_start(c)) fail(c ? std::string("unexpected '") + c + "'" : "unexpected end of expression");
    while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (id == "zeta") {
      long k = 1;
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        k = integer();
      }
      return constant(CycloScalar::zeta_power(engine_, k * (engine_.conductor() / file_n_)));
    }
    if (id == "D" || id == "x") {
      int n = divided_power();
      Mono m;
      (id == "D" ? m.dpow : m.xpow) = n;
      Poly p;
      add_to(p, m, CycloScalar(1));
      return p;
    }
    if (id == "t") {
      Rational q = 1;
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        if (peek() == '{') {
          ++pos_;
          q = rational();
          expect('}');
        } else {
          q = rational();
        }
      }
      Mono m;
      m.exp = FracExponent(mpz_class(q.get_num()).get_si(), mpz_class(q.get_den()).get_si());
      Poly p;
      add_to(p, m, CycloScalar(1));
      return p;
    }
    if (!A_) fail("generators are not allowed here", start);
    std::optional<int> g;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      g = A_->find(id + s_[pos_]);
      if (g) ++pos_;
    }
    if (!g) g = A_->find(id);
    if (!g) fail("unknown generator '" + id + "'", start);
    Mono m;
    m.gen = *g;
    Poly p;
    add_to(p, m, CycloScalar(1));
    return p;
  }
};

struct Line {
  int number;
  std::string text;  // comment stripped
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  int n = 0;
  while (std::getline(in, s)) {
    ++n;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    auto h = s.find('#');
    if (h != std::string::npos) s.erase(h);
    out.push_back({n, s});
  }
  return out;
}

struct Token {
  std::string text;
  int col;  // 1-based
};

// whitespace tokens of s[from, to)
std::vector<Token> tokens(const std::string& s, size_t from = 0, size_t to = std::string::npos) {
  std::vector<Token> out;
  to = std::min(to, s.size());
  size_t i = from;
  while (i < to) {
    while (i < to && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= to) break;
    size_t j = i;
    while (j < to && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({s.substr(i, j - i), int(i) + 1});
    i = j;
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  size_t n = s.size();
  if (s.back() == '+' || s.back() == '-') --n;
  for (size_t i = 1; i < n; ++i)
    if (!is_ident_char(s[i])) return false;
  return n > 0 && !reserved(s);
}

Rational parse_rational_token(const Token& t, int line) {
  try {
    Rational r(t.text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a rational number, got '" + t.text + "'", line, t.col);
  }
}

FracExponent to_exp(const Rational& q) {
  return FracExponent(mpz_class(q.get_num()).get_si(), mpz_class(q.get_den()).get_si());
}

LambdaPoly poly_to_lambda(const AlgebraDef& A, const Poly& p, int line, int col, bool allow_t) {
  LambdaPoly out;
  int level = 1;
  for (auto& [m, c] : p) {
    if (m.gen < 0) throw ParseError("term without a generator", line, col);
    if (!allow_t && !m.exp.is_zero()) throw ParseError("brackets of generators cannot involve t", line, col);
    level = std::lcm(level, int(m.exp.den()));
  }
  std::map<int, ConfElt> by_n;
  for (auto& [m, c] : p) by_n[m.xpow].add_term(TermKey{m.gen, m.dpow, m.exp}, c);
  for (auto& [n, x] : by_n) out.add(n, x.with_level(level));
  (void)A;
  return out;
}

ConfElt poly_to_element(const AlgebraDef& A, const Poly& p, int line, int col) {
  for (auto& [m, c] : p)
    if (m.xpow != 0) throw ParseError("lambda is not allowed in an element", line, col);
  LambdaPoly l = poly_to_lambda(A, p, line, col, true);
  return l.coeff(0);
}

std::string coef_prefix(const CycloScalar& c) {
  if (c == CycloScalar(1)) return "";
  if (c == CycloScalar(-1)) return "-";
  std::string s = c.str();
  if (c.coeffs().size() > 1) s = "(" + s + ")";
  return s + "*";
}

std::string monomial(const AlgebraDef& A, int n, const TermKey& k) {
  std::string s;
  auto piece = [&](const std::string& p) {
    if (!s.empty()) s += " ";
    s += p;
  };
  if (k.dpow == 1) piece("D");
  if (k.dpow > 1) piece("D^(" + std::to_string(k.dpow) + ")");
  if (n == 1) piece("x");
  if (n > 1) piece("x^(" + std::to_string(n) + ")");
  piece(A.generators().at(k.gen).name);
  if (!k.exp.is_zero()) piece("t^{" + k.exp.str() + "}");
  return s;
}

std::string join(const std::vector<std::pair<CycloScalar, std::string>>& items) {
  if (items.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    const auto& [c, sym] = items[i];
    if (i == 0) {
      out += coef_prefix(c) + sym;
    } else if (c.leading_negative()) {
      out += " - " + coef_prefix(-c) + sym;
    } else {
      out += " + " + coef_prefix(c) + sym;
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Poly parse_expr(const std::string& text, const AlgebraDef* A, const CyclotomicField& f, int line = 1, int col0 = 0,
                int file_n = 0) {
  ExprParser p(text, line, col0, A, f, file_n ? file_n : f.conductor());
  return p.parse_all();
}

}  // namespace

// ------------------------------------------------------------------ algebras

AlgebraDef parse_algebra(const std::string& text, const CyclotomicField& engine) {
  std::string name;
  int file_n = engine.conductor();
  std::vector<GeneratorInfo> gens;
  std::optional<AlgebraDef> A;
  struct Given {
    LambdaPoly p;
    int line;
  };
  std::map<std::pair<int, int>, Given> given;
  int last_line = 1;

  for (auto& [ln, s] : split_lines(text)) {
    auto tok = tokens(s);
    if (tok.empty()) continue;
    last_line = ln;
    const std::string& kw = tok[0].text;
    if (kw == "algebra") {
      if (tok.size() != 2) throw ParseError("expected 'algebra NAME'", ln, tok[0].col);
      if (!name.empty()) throw ParseError("algebra name given twice", ln, tok[0].col);
      name = tok[1].text;
    } else if (kw == "cyclotomic") {
      if (tok.size() != 2) throw ParseError("expected 'cyclotomic N'", ln, tok[0].col);
      if (A) throw ParseError("cyclotomic must precede the brackets", ln, tok[0].col);
      Rational n = parse_rational_token(tok[1], ln);
      if (n.get_den() != 1 || n <= 0) throw ParseError("conductor must be a positive integer", ln, tok[1].col);
      file_n = int(n.get_num().get_si());
      if (engine.conductor() % file_n != 0)
        throw ConductorMismatch("file conductor " + std::to_string(file_n) + " does not divide engine conductor " +
                                std::to_string(engine.conductor()));
    } else if (kw == "generator") {
      if (A) throw ParseError("generator declared after a bracket", ln, tok[0].col);
      if (tok.size() < 3) throw ParseError("expected 'generator NAME parity=even|odd [weight=p/q]'", ln, tok[0].col);
      GeneratorInfo g;
      g.name = tok[1].text;
      if (!valid_name(g.name)) throw ParseError("invalid generator name '" + g.name + "'", ln, tok[1].col);
      for (auto& o : gens)
        if (o.name == g.name) throw ParseError("generator '" + g.name + "' declared twice", ln, tok[1].col);
      bool parity_set = false;
      for (size_t i = 2; i < tok.size(); ++i) {
        const std::string& o = tok[i].text;
        if (o == "parity=even" || o == "parity=odd") {
          g.parity = o == "parity=odd" ? Parity::Odd : Parity::Even;
          parity_set = true;
        } else if (o.rfind("weight=", 0) == 0) {
          g.weight = parse_rational_token({o.substr(7), tok[i].col + 7}, ln);
        } else {
          throw ParseError("unknown option '" + o + "'", ln, tok[i].col);
        }
      }
      if (!parity_set) throw ParseError("missing parity for '" + g.name + "'", ln, tok[1].col);
      gens.push_back(std::move(g));
    } else if (kw == "bracket") {
      if (name.empty()) throw ParseError("missing 'algebra NAME' line", ln, tok[0].col);
      if (gens.empty()) throw ParseError("bracket before any generator", ln, tok[0].col);
      if (!A) A.emplace(name, gens, engine);
      size_t eq = s.find('=');
      auto head = tokens(s, 0, eq);
      if (eq == std::string::npos || head.size() != 3)
        throw ParseError("expected 'bracket A B = EXPR'", ln, tok[0].col);
      int ab[2];
      for (int i = 0; i < 2; ++i) {
        auto g = A->find(head[i + 1].text);
        if (!g) throw ParseError("unknown generator '" + head[i + 1].text + "'", ln, head[i + 1].col);
        ab[i] = *g;
      }
      std::string rhs = s.substr(eq + 1);
      Poly p = parse_expr(rhs, &*A, engine, ln, int(eq + 1), file_n);
      int col = int(eq) + 2;
      LambdaPoly lp = poly_to_lambda(*A, p, ln, col, false);
      Parity want = A->parity(ab[0]) + A->parity(ab[1]);
      for (auto& [m, c] : p)
        if (A->parity(m.gen) != want)
          throw ParseError("parity mismatch: " + A->generators()[m.gen].name + " in [" + head[1].text + " " +
                               head[2].text + "] should be " + parity_name(want),
                           ln, col);
      std::pair key{ab[0], ab[1]};
      if (given.count(key)) throw ParseError("bracket given twice", ln, tok[0].col);
      bool odd_pair = A->parity(ab[0]) == Parity::Odd && A->parity(ab[1]) == Parity::Odd;
      if (ab[0] == ab[1] && !(skew_flip(lp, odd_pair) == lp))
        throw ParseError("skew-symmetry: bracket of " + head[1].text + " with itself is not skew-symmetric", ln, tok[0].col);
      if (auto it = given.find({ab[1], ab[0]}); it != given.end()) {
        if (!(skew_flip(it->second.p, odd_pair) == lp))
          throw ParseError("skew-symmetry: bracket disagrees with line " + std::to_string(it->second.line), ln, tok[0].col);
      }
      given.emplace(key, Given{std::move(lp), ln});
    } else {
      throw ParseError("unknown directive '" + kw + "'", ln, tok[0].col);
    }
  }
  if (name.empty()) throw ParseError("missing 'algebra NAME' line", 1, 1);
  if (gens.empty()) throw ParseError("algebra has no generators", last_line, 1);
  if (!A) A.emplace(name, gens, engine);
  int n = A->size();
  for (auto& [k, g] : given) A->set_bracket(k.first, k.second, g.p);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!given.count({a, b}) && !given.count({b, a})) A->set_bracket(a, b, LambdaPoly());
  return complete_table_cs4(std::move(*A));
}

std::string print_algebra(const AlgebraDef& A) {
  std::ostringstream os;
  os << "algebra " << A.name() << "\n";
  os << "cyclotomic " << A.field().conductor() << "\n";
  for (auto& g : A.generators()) {
    os << "generator " << g.name << " parity=" << parity_name(g.parity);
    if (g.weight) os << " weight=" << g.weight->get_str();
    os << "\n";
  }
  for (int a = 0; a < A.size(); ++a)
    for (int b = a; b < A.size(); ++b) {
      const LambdaPoly* p = A.entry(a, b);
      if (!p || p->is_zero()) continue;
      os << "bracket " << A.generators()[a].name << " " << A.generators()[b].name << " = " << print_lambda(A, *p) << "\n";
    }
  return os.str();
}

// ----------------------------------------------------------------- elements

ConfElt parse_element(const AlgebraDef& A, const std::string& text) {
  return poly_to_element(A, parse_expr(text, &A, A.field()), 1, 1);
}

LambdaPoly parse_lambda(const AlgebraDef& A, const std::string& text) {
  return poly_to_lambda(A, parse_expr(text, &A, A.field()), 1, 1, true);
}

std::string print_element(const AlgebraDef& A, const ConfElt& x) {
  std::vector<std::pair<CycloScalar, std::string>> items;
  for (auto& [k, c] : x.terms()) items.emplace_back(c, monomial(A, 0, k));
  return join(items);
}

std::string print_lambda(const AlgebraDef& A, const LambdaPoly& p) {
  std::vector<std::pair<CycloScalar, std::string>> items;
  for (auto& [n, x] : p.coeffs())
    for (auto& [k, c] : x.terms()) items.emplace_back(c, monomial(A, n, k));
  return join(items);
}

// ---------------------------------------------------------------- morphisms

GenMorphism parse_morphism(const std::string& text, std::shared_ptr<const AlgebraDef> A) {
  std::optional<std::string> name;
  int level = 1, header_line = 1;
  std::vector<std::optional<ConfElt>> images(A->size());
  for (auto& [ln, s] : split_lines(text)) {
    auto tok = tokens(s);
    if (tok.empty()) continue;
    if (tok[0].text == "morphism") {
      if (name) throw ParseError("morphism header given twice", ln, tok[0].col);
      if (tok.size() != 6 || tok[2].text != "on" || tok[4].text != "level")
        throw ParseError("expected 'morphism NAME on ALGEBRA level m'", ln, tok[0].col);
      name = tok[1].text;
      header_line = ln;
      if (tok[3].text != A->name())
        throw ParseError("morphism is on '" + tok[3].text + "' but the algebra is '" + A->name() + "'", ln, tok[3].col);
      Rational m = parse_rational_token(tok[5], ln);
      if (m.get_den() != 1 || m <= 0) throw ParseError("level must be a positive integer", ln, tok[5].col);
      level = int(m.get_num().get_si());
    } else if (tok[0].text == "image") {
      if (!name) throw ParseError("image before the morphism header", ln, tok[0].col);
      size_t eq = s.find('=');
      auto head = tokens(s, 0, eq);
      if (eq == std::string::npos || head.size() != 2) throw ParseError("expected 'image GEN = EXPR'", ln, tok[0].col);
      auto g = A->find(head[1].text);
      if (!g) throw ParseError("unknown generator '" + head[1].text + "'", ln, head[1].col);
      if (images[*g]) throw ParseError("image of '" + head[1].text + "' given twice", ln, head[1].col);
      int col = int(eq) + 2;
      ConfElt x = poly_to_element(*A, parse_expr(s.substr(eq + 1), &*A, A->field(), ln, int(eq + 1)), ln, col);
      for (auto& [k, c] : x.terms())
        if (level % k.exp.den() != 0)
          throw ParseError("exponent " + k.exp.str() + " is not in S_" + std::to_string(level), ln, col);
      Parity p;
      try {
        p = parity_of(*A, x);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), ln, col);
      }
      if (!x.is_zero() && p != A->parity(*g)) throw ParseError("image of '" + head[1].text + "' has the wrong parity", ln, col);
      images[*g] = x.with_level(level);
    } else {
      throw ParseError("unknown directive '" + tok[0].text + "'", ln, tok[0].col);
    }
  }
  if (!name) throw ParseError("missing morphism header", 1, 1);
  std::vector<ConfElt> imgs;
  for (int g = 0; g < A->size(); ++g) {
    if (!images[g]) throw ParseError("no image for generator '" + A->generators()[g].name + "'", header_line, 1);
    imgs.push_back(*images[g]);
  }
  return GenMorphism(A, std::move(imgs), *name);
}

std::string print_morphism(const GenMorphism& phi) {
  const AlgebraDef& A = phi.algebra();
  std::ostringstream os;
  os << "morphism " << (phi.name().empty() ? "phi" : phi.name()) << " on " << A.name() << " level " << phi.level() << "\n";
  for (int g = 0; g < A.size(); ++g)
    os << "image " << A.generators()[g].name << " = " << print_element(A, phi.image(g)) << "\n";
  return os.str();
}

// ------------------------------------------------------------------ scalars

CycloScalar parse_scalar(const std::string& text, const CyclotomicField& f) {
  CycloScalar r;
  for (auto& [m, c] : parse_expr(text, nullptr, f)) {
    if (m.dpow || m.xpow || !m.exp.is_zero()) throw ParseError("expected a scalar: '" + text + "'", 1, 1);
    r += c;
  }
  return r;
}

LaurentElt parse_laurent(const std::string& text, const CyclotomicField& f) {
  LaurentElt r;
  int level = 1;
  for (auto& [m, c] : parse_expr(text, nullptr, f)) {
    if (m.dpow || m.xpow) throw ParseError("expected a Laurent polynomial: '" + text + "'", 1, 1);
    r.add_term(m.exp, c);
    level = std::lcm(level, int(m.exp.den()));
  }
  return r.with_level(level);
}

namespace {

template <class T, class F>
Mat2<T> parse_matrix(const std::string& text, F entry) {
  Mat2<T> M;
  size_t semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
    throw ParseError("matrix must look like 'a,b;c,d'", 1, 1);
  std::string rows[2] = {text.substr(0, semi), text.substr(semi + 1)};
  for (int r = 0; r < 2; ++r) {
    size_t comma = rows[r].find(',');
    if (comma == std::string::npos || rows[r].find(',', comma + 1) != std::string::npos)
      throw ParseError("matrix must look like 'a,b;c,d'", 1, 1);
    M(r, 0) = entry(trim(rows[r].substr(0, comma)));
    M(r, 1) = entry(trim(rows[r].substr(comma + 1)));
  }
  return M;
}

}  // namespace

ScalarMat2 parse_scalar_matrix(const std::string& text, const CyclotomicField& f) {
  return parse_matrix<CycloScalar>(text, [&](const std::string& s) { return parse_scalar(s, f); });
}

LaurentMat2 parse_laurent_matrix(const std::string& text, const CyclotomicField& f) {
  return parse_matrix<LaurentElt>(text, [&](const std::string& s) { return parse_laurent(s, f); });
}

// -------------------------------------------------------------------- modes

std::vector<std::pair<int, FracExponent>> parse_modes(const LoopAlgebra& L, const std::string& text) {
  std::vector<std::pair<int, FracExponent>> out;
  size_t i = 0;
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    size_t start = i;
    if (text[i] == '(') {
      int depth = 0;
      for (; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')' && --depth == 0) {
          ++i;
          break;
        }
      }
    } else {
      while (i < text.size() && text[i] != '[' && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }
    std::string label = text.substr(start, i - start);
    if (i >= text.size() || text[i] != '[') throw ParseError("expected '[' after '" + label + "'", 1, int(i) + 1);
    size_t close = text.find(']', i);
    if (close == std::string::npos) throw ParseError("missing ']'", 1, int(i) + 1);
    std::string mu = trim(text.substr(i + 1, close - i - 1));
    auto k = L.find_label(label);
    if (!k) throw ParseError("no eigenbasis vector named '" + label + "'", 1, int(start) + 1);
    Rational q = parse_rational_token({mu, int(i) + 2}, 1);
    out.emplace_back(*k, to_exp(q));
    i = close + 1;
  }
  return out;
}

}  // namespace csalg
