#include "csalg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "csalg/centroid.hpp"
#include "csalg/cohomology.hpp"
#include "csalg/dsl.hpp"
#include "csalg/errors.hpp"

namespace csalg {

namespace {

using Json = nlohmann::ordered_json;

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// parse errors carry the file name in front
template <class F>
auto with_file(const std::string& path, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.col(), path);
  }
}

Rational parse_window(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    if (r < 0) throw DomainError("window must be non-negative: " + s);
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a rational window, got '" + s + "'", 1, 1);
  }
}

void require_names(const AlgebraDef& A, const std::vector<std::string>& names, const std::string& what) {
  bool ok = A.size() == int(names.size());
  for (int g = 0; ok && g < A.size(); ++g) ok = A.generators()[g].name == names[g];
  if (!ok) throw DomainError("--auto " + what + " needs the generators of " + what + " in the standard order");
}

GenMorphism make_auto(const std::string& spec, std::shared_ptr<const AlgebraDef> A, const CyclotomicField& f) {
  static const std::vector<std::string> n2_names = {"L", "J", "G+", "G-"};
  static const std::vector<std::string> n4_names = {"L", "J1", "J2", "J3", "G1", "G2", "Gbar1", "Gbar2"};
  if (spec == "id") {
    GenMorphism id = identity_morphism(A);
    id.set_name("id");
    return id;
  }
  if (spec == "omega") {
    require_names(*A, n2_names, "N2");
    return n2_omega(A);
  }
  if (spec.rfind("theta:", 0) == 0) {
    require_names(*A, n2_names, "N2");
    return n2_theta(parse_laurent(spec.substr(6), f), A);
  }
  if (spec.rfind("n4:", 0) == 0) {
    require_names(*A, n4_names, "N4");
    std::string body = spec.substr(3);
    LaurentMat2 Y = LaurentMat2::identity();
    size_t bar = body.find('|');
    if (bar != std::string::npos) {
      Y = parse_laurent_matrix(body.substr(0, bar), f);
      body = body.substr(bar + 1);
    }
    GenMorphism phi = n4_auto(Y, parse_scalar_matrix(body, f), A);
    phi.set_name(spec);
    return phi;
  }
  if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csm") {
    std::string text = read_file(spec);
    return with_file(spec, [&] { return parse_morphism(text, A); });
  }
  throw InputError("unknown --auto value '" + spec + "' (use id, omega, theta:S, n4:X, n4:Y|X or a .csm file)");
}

int twist_order(const GenMorphism& sigma, int given, int conductor) {
  if (given > 0) return given;
  auto m = order_of(sigma, conductor);
  if (!m) throw DomainError("twist has no finite order up to " + std::to_string(conductor) + "; pass --order");
  return *m;
}

std::string rationals(const std::vector<Rational>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "}";
}

Json rational_list(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (auto& q : v) j.push_back(q.get_str());
  return j;
}

struct Options {
  bool json = false;
  int conductor = 24;
  std::string file, second, third, auto_spec, window = "2", interior = "1", bracket, matrix;
  int n = -1, order = 0, pgl2_n = 0;
};

struct Result {
  std::string text;
  Json json;
  int code = 0;
};

Result cmd_check(const Options& o, const CyclotomicField& f) {
  std::string text = read_file(o.file);
  AlgebraDef A = with_file(o.file, [&] { return parse_algebra(text, f); });
  AxiomReport r = check_axioms(A);
  Result res;
  std::ostringstream os;
  os << "algebra " << A.name() << ": " << A.size() << " generators\n";
  const bool flags[6] = {r.cs0, r.cs1, r.cs2, r.cs3, r.cs4, r.cs5};
  Json ax = Json::object();
  for (int i = 0; i < 6; ++i) {
    std::string name = "CS" + std::to_string(i);
    os << name << " " << (flags[i] ? "ok" : "FAILED");
    if (i == 4) os << " (" << r.pairs_checked << " pairs)";
    if (i == 5) os << " (" << r.triples_checked << " triples)";
    os << "\n";
    ax[name] = flags[i];
  }
  for (auto& m : r.messages) os << m << "\n";
  res.text = os.str();
  res.json = {{"algebra", A.name()},       {"generators", A.size()}, {"axioms", ax},
              {"pairs", r.pairs_checked}, {"triples", r.triples_checked}, {"messages", r.messages},
              {"ok", r.ok()}};
  res.code = r.ok() ? 0 : 1;
  return res;
}

Result cmd_bracket(const Options& o, const CyclotomicField& f) {
  std::string text = read_file(o.file);
  AlgebraDef A = with_file(o.file, [&] { return parse_algebra(text, f); });
  ConfElt a = parse_element(A, o.second), b = parse_element(A, o.third);
  LambdaPoly p = lambda_bracket(A, a, b);
  Result res;
  if (o.n >= 0) {
    std::string r = print_element(A, p.coeff(o.n));
    res.text = r + "\n";
    res.json = {{"a", o.second}, {"b", o.third}, {"n", o.n}, {"result", r}};
    return res;
  }
  res.text = print_lambda(A, p) + "\n";
  Json prods = Json::array();
  for (auto& [n, c] : p.coeffs()) prods.push_back({{"n", n}, {"result", print_element(A, c)}});
  res.json = {{"a", o.second}, {"b", o.third}, {"lambda", print_lambda(A, p)}, {"products", prods}};
  return res;
}

Result cmd_hom(const Options& o, const CyclotomicField& f) {
  std::string text = read_file(o.file);
  auto A = std::make_shared<const AlgebraDef>(with_file(o.file, [&] { return parse_algebra(text, f); }));
  std::string mtext = read_file(o.second);
  GenMorphism phi = with_file(o.second, [&] { return parse_morphism(mtext, A); });
  HomReport r = check_hom(phi);
  Result res;
  std::ostringstream os;
  os << "morphism " << phi.name() << " on " << A->name() << "\n";
  os << "homomorphism: " << (r.homomorphism ? "yes" : "no") << "\n";
  Json fails = Json::array();
  for (auto& [a, b] : r.failures) {
    os << "fails on (" << A->generators()[a].name << ", " << A->generators()[b].name << ")\n";
    fails.push_back({A->generators()[a].name, A->generators()[b].name});
  }
  Json inv = nullptr, det = nullptr;
  if (r.invertible) {
    os << "invertible: " << (*r.invertible ? "yes" : "no") << "\n";
    inv = *r.invertible;
  } else {
    os << "invertible: undecided\n";
  }
  if (r.determinant) {
    os << "determinant: " << r.determinant->str() << "\n";
    det = r.determinant->str();
  }
  res.text = os.str();
  res.json = {{"morphism", phi.name()}, {"algebra", A->name()}, {"homomorphism", r.homomorphism},
              {"failures", fails},      {"invertible", inv},    {"determinant", det}};
  res.code = r.homomorphism ? 0 : 1;
  return res;
}

struct LoopSetup {
  std::shared_ptr<const AlgebraDef> A;
  GenMorphism sigma;
  LoopAlgebra L;
};

LoopSetup setup_loop(const Options& o, const CyclotomicField& f) {
  std::string text = read_file(o.file);
  auto A = std::make_shared<const AlgebraDef>(with_file(o.file, [&] { return parse_algebra(text, f); }));
  if (o.auto_spec.empty()) throw InputError("--auto is required");
  GenMorphism sigma = make_auto(o.auto_spec, A, f);
  int m = twist_order(sigma, o.order, f.conductor());
  LoopAlgebra L = eigenspaces(A, sigma, m);
  return {A, sigma, L};
}

Result cmd_loop(const Options& o, const CyclotomicField& f) {
  LoopSetup s = setup_loop(o, f);
  const LoopAlgebra& L = s.L;
  Rational W = parse_window(o.window);
  Result res;
  std::ostringstream os;
  os << "loop algebra of " << s.A->name() << " twisted by " << o.auto_spec << ", order " << L.order << "\n";
  Json spaces = Json::array();
  for (int i = 0; i < L.order; ++i) {
    Json labels = Json::array();
    os << "A_" << i << ":";
    bool first = true;
    for (int k : L.residue_basis(i)) {
      os << (first ? " " : ", ") << L.basis[k].label;
      first = false;
      labels.push_back(L.basis[k].label);
    }
    os << "\n";
    spaces.push_back({{"residue", i}, {"basis", labels}});
  }
  ClosureReport cl = check_loop_closure(L);
  os << "closure: " << (cl.closed ? "ok" : "FAILED") << " (" << cl.products << " products)\n";
  for (auto& m : cl.failures) os << "  not closed: " << m << "\n";
  SplitReport sp = split_check(L, W);
  os << "split window " << W.get_str() << ": " << (sp.bijective() ? "bijective" : "NOT bijective") << " (rank " << sp.rank
     << ", " << sp.targets << " targets, " << sp.domain_size << " sources)\n";
  Json unreached = Json::array();
  for (auto& [g, q] : sp.unreached) {
    std::string t = s.A->generators()[g].name + " t^{" + q.str() + "}";
    os << "  unreached: " << t << "\n";
    unreached.push_back(t);
  }
  Json spec = Json::object();
  for (Parity p : {Parity::Even, Parity::Odd}) {
    try {
      L0Spectrum l0 = l0_spectrum(L, p, W);
      os << "L0 " << parity_name(p) << ": fractional parts " << rationals(l0.fractional_parts) << ", eigenvalues "
         << rationals(l0.eigenvalues) << "\n";
      spec[parity_name(p)] = {{"fractional_parts", rational_list(l0.fractional_parts)},
                              {"eigenvalues", rational_list(l0.eigenvalues)}};
    } catch (const DomainError& e) {
      os << "L0 " << parity_name(p) << ": unavailable (" << e.what() << ")\n";
      spec[parity_name(p)] = nullptr;
    }
  }
  res.text = os.str();
  res.json = {{"algebra", s.A->name()},
              {"twist", o.auto_spec},
              {"order", L.order},
              {"eigenspaces", spaces},
              {"closure", {{"ok", cl.closed}, {"products", cl.products}, {"failures", cl.failures}}},
              {"split", {{"window", W.get_str()},
                         {"bijective", sp.bijective()},
                         {"surjective", sp.surjective},
                         {"injective", sp.injective},
                         {"rank", sp.rank},
                         {"targets", sp.targets},
                         {"unreached", unreached}}},
              {"l0", spec}};
  res.code = cl.closed && sp.bijective() ? 0 : 1;
  return res;
}

Result cmd_alg(const Options& o, const CyclotomicField& f) {
  LoopSetup s = setup_loop(o, f);
  auto modes = parse_modes(s.L, o.bracket);
  if (modes.size() != 2) throw ParseError("--bracket needs exactly two modes, e.g. \"L[2] L[-1]\"", 1, 1);
  AlgElt a = AlgElt::mode(s.L, modes[0].first, modes[0].second);
  AlgElt b = AlgElt::mode(s.L, modes[1].first, modes[1].second);
  std::string r = to_string(s.L, alg_bracket(s.L, a, b));
  Result res;
  res.text = r + "\n";
  res.json = {{"a", to_string(s.L, a)}, {"b", to_string(s.L, b)}, {"result", r}};
  return res;
}

Result cmd_classify(const Options& o, const CyclotomicField& f) {
  ScalarMat2 X = parse_scalar_matrix(o.matrix, f);
  RootPair r = n4_invariant(X, f);
  Result res;
  res.text = r.str() + "\n";
  auto zeta = [](const FracExponent& a) { return "zeta_" + std::to_string(a.den()) + "^" + std::to_string(a.num()); };
  res.json = {{"matrix", to_string(X)}, {"invariant", {zeta(r.a), zeta(r.b)}}};
  return res;
}

Result cmd_pgl2(const Options& o, const CyclotomicField& f) {
  auto classes = pgl2_classes(o.pgl2_n, f);
  Result res;
  std::ostringstream os;
  os << classes.size() << (classes.size() == 1 ? " class" : " classes") << "\n";
  Json list = Json::array();
  for (auto& c : classes) {
    os << c.str() << "\n";
    list.push_back(c.str());
  }
  res.text = os.str();
  res.json = {{"n", o.pgl2_n}, {"count", classes.size()}, {"classes", list}};
  return res;
}

Result cmd_centroid(const Options& o, const CyclotomicField& f) {
  LoopSetup s = setup_loop(o, f);
  Rational W = parse_window(o.window), Wi = parse_window(o.interior);
  auto sols = centroid_basis(s.L, W, Wi);
  Result res;
  std::ostringstream os;
  os << "centroid window " << W.get_str() << ", interior " << Wi.get_str() << ": " << sols.size()
     << (sols.size() == 1 ? " solution" : " solutions") << "\n";
  Json rs = Json::array();
  bool all = true;
  for (size_t i = 0; i < sols.size(); ++i) {
    auto r = is_scalar_action(sols[i]);
    if (r) {
      os << "r = " << r->str() << "\n";
      rs.push_back(r->str());
    } else {
      os << "solution " << i + 1 << ": not a scalar action\n";
      rs.push_back(nullptr);
      all = false;
    }
  }
  res.text = os.str();
  res.json = {{"window", W.get_str()}, {"interior", Wi.get_str()}, {"solutions", sols.size()}, {"scalars", rs},
              {"all_scalar", all}};
  res.code = all ? 0 : 1;
  return res;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with Lie conformal superalgebras and their twisted loop algebras", "csalg"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "machine readable output");
  app.add_option("--conductor", o.conductor, "conductor N of the coefficient field Q(zeta_N)")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "check the axioms of an algebra file");
  check->add_option("file", o.file)->required();

  auto* bracket = app.add_subcommand("bracket", "lambda-bracket of two elements");
  bracket->add_option("file", o.file)->required();
  bracket->add_option("a", o.second)->required();
  bracket->add_option("b", o.third)->required();
  bracket->add_option("--n", o.n, "only the n-th product")->check(CLI::NonNegativeNumber);

  auto* hom = app.add_subcommand("hom", "check a morphism file");
  hom->add_option("file", o.file)->required();
  hom->add_option("morphism", o.second)->required();

  auto add_loop_opts = [&](CLI::App* c) {
    c->add_option("file", o.file)->required();
    c->add_option("--auto", o.auto_spec, "twist: id, omega, theta:S, n4:X, n4:Y|X or a .csm file")->required();
    c->add_option("--order", o.order, "order of the twist")->check(CLI::PositiveNumber);
  };
  auto* loop = app.add_subcommand("loop", "twisted loop algebra report");
  add_loop_opts(loop);
  loop->add_option("--window", o.window, "mode window W")->required();

  auto* alg = app.add_subcommand("alg", "bracket of modes in Alg(A, sigma)");
  add_loop_opts(alg);
  alg->add_option("--bracket", o.bracket, "two modes, e.g. \"L[2] L[-1]\"")->required();

  auto* cls = app.add_subcommand("classify-n4", "class invariant of an N=4 twist");
  cls->add_option("--matrix", o.matrix, "X as \"a,b;c,d\"")->required();

  auto* pgl = app.add_subcommand("pgl2-classes", "finite order classes of PGL2");
  pgl->add_option("n", o.pgl2_n)->required()->check(CLI::PositiveNumber);

  auto* cen = app.add_subcommand("centroid", "windowed centroid of a loop algebra");
  add_loop_opts(cen);
  cen->add_option("--window", o.window)->required();
  cen->add_option("--interior", o.interior)->required();

  for (auto* c : app.get_subcommands({})) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const CyclotomicField& f = CyclotomicField::get(o.conductor);
    Result r;
    if (check->parsed()) r = cmd_check(o, f);
    else if (bracket->parsed()) r = cmd_bracket(o, f);
    else if (hom->parsed()) r = cmd_hom(o, f);
    else if (loop->parsed()) r = cmd_loop(o, f);
    else if (alg->parsed()) r = cmd_alg(o, f);
    else if (cls->parsed()) r = cmd_classify(o, f);
    else if (pgl->parsed()) r = cmd_pgl2(o, f);
    else if (cen->parsed()) r = cmd_centroid(o, f);
    if (o.json)
      out << r.json.dump(2) << "\n";
    else
      out << r.text;
    return r.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace csalg
