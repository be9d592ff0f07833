// hcusp: JSON front end for fields, ideals, ray class characters, cusps,
// L-values, Eisenstein constant terms, the numeric oracles and the
// verification suites.
//
// Exit codes: 0 success, 1 failed verification or internal error,
// 2 invalid input, 3 unsupported scope.

#include "hc/eisenstein.hpp"
#include "hc/oracle_hilbert.hpp"
#include "hc/oracle_q.hpp"
#include "hc/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

using json = nlohmann::ordered_json;
using namespace hc;

namespace {

// ---------------------------------------------------------------------------
// Input.

long parse_long(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("expected an integer for " + what + ", got '" + s + "'");
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed " + what + " JSON: " + e.what());
  }
}

Rational json_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return Rational(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("expected an integer or a \"p/q\" string, got " + v.dump());
}

// "Q", "Q(sqrt D)" or field-spec JSON.
Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  if (text.rfind("Q(sqrt ", 0) == 0 && text.back() == ')')
    return Field::quadratic(parse_long(text.substr(7, text.size() - 8), "D"));
  json j = parse_json(text, "field spec");
  if (!j.is_object()) throw ValidationError("field spec must be a JSON object");
  FieldSpec spec;
  if (j.contains("quadratic_D")) {
    spec.quadratic_D = j["quadratic_D"].get<long>();
    return Field::make(spec);
  }
  if (!j.contains("poly")) throw ValidationError("field spec needs quadratic_D or poly");
  for (auto& c : j["poly"]) spec.poly.push_back(Integer(json_rational(c).str()));
  const int d = static_cast<int>(spec.poly.size()) - 1;
  if (d < 1) throw ValidationError("defining polynomial must have degree >= 1");
  spec.basis = QMatrix::Identity(d, d);
  if (j.contains("basis")) {
    // Columns: integral basis elements in the power basis.
    const auto& B = j["basis"];
    if (!B.is_array() || static_cast<int>(B.size()) != d) throw ValidationError("basis must list d columns");
    for (int c = 0; c < d; ++c) {
      if (static_cast<int>(B[c].size()) != d) throw ValidationError("basis column of wrong length");
      for (int r = 0; r < d; ++r) spec.basis(r, c) = json_rational(B[c][r]);
    }
  }
  if (j.contains("units"))
    for (auto& u : j["units"]) {
      std::vector<Rational> v;
      for (auto& c : u) v.push_back(json_rational(c));
      spec.units.push_back(std::move(v));
    }
  if (j.contains("class_group")) {
    const auto& cg = j["class_group"];
    if (!cg.contains("h")) throw ValidationError("class_group needs h");
    spec.class_number = cg["h"].get<long>();
  }
  return Field::make(spec);
}

Mat2 parse_matrix(const Field& F, const std::string& s) { return Mat2::parse(F, s); }

// "1" (trivial), "<modulus>:<index>" into the full character list of the
// modulus, or {"modulus": ..., "images": [...]}.
RayClassCharacter parse_character(const Field& F, const std::string& text) {
  if (text == "1" || text == "trivial") return RayClassCharacter::trivial(F);
  if (!text.empty() && text.front() == '{') {
    json j = parse_json(text, "character");
    if (!j.contains("modulus") || !j.contains("images"))
      throw ValidationError("character JSON needs modulus and images");
    std::vector<std::string> images;
    for (auto& v : j["images"]) images.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return character_from_images(FractionalIdeal::parse(F, j["modulus"].get<std::string>()), images);
  }
  auto colon = text.rfind(':');
  if (colon == std::string::npos)
    throw ValidationError("character '" + text + "': expected 1, <modulus>:<index> or JSON");
  auto G = RayClassGroup::build(FractionalIdeal::parse(F, text.substr(0, colon)));
  long idx = parse_long(text.substr(colon + 1), "character index");
  auto all = characters(G);
  if (idx < 0 || idx >= static_cast<long>(all.size()))
    throw ValidationError("character index " + std::to_string(idx) + " out of range 0.." +
                          std::to_string(all.size() - 1));
  return all[static_cast<size_t>(idx)];
}

// ---------------------------------------------------------------------------
// Output. Every number carries "exact" or {"mid", "radius"}.

json complex_json(const Complex& z, int digits) {
  return json{{"re", z.re.str(digits)}, {"im", z.im.str(digits)}};
}

json number(const Ball& b, const std::optional<Cyclotomic>& exact = std::nullopt, int digits = 30) {
  json j;
  if (exact) {
    j["exact"] = exact->str();
    if (exact->is_rational()) return j;
  }
  j["mid"] = complex_json(b.mid(), digits);
  j["radius"] = json(b.rad());
  return j;
}

json exact_number(const Cyclotomic& c, Precision prec) { return number(c.to_ball(prec), c); }

json ideal_json(const FractionalIdeal& I) {
  json hnf = json::array();
  for (Eigen::Index r = 0; r < I.hnf().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < I.hnf().cols(); ++c) row.push_back(I.hnf()(r, c).str());
    hnf.push_back(row);
  }
  return json{{"literal", I.str()}, {"hnf", hnf}, {"denom", I.denom().str()}, {"norm", I.norm().str()}};
}

json matrix_json(const Mat2& m) { return json::array({m.a.str(), m.b.str(), m.c.str(), m.d.str()}); }

json signs_json(const SignVector& v) { return json(std::vector<int>(v.begin(), v.end())); }

json character_json(const RayClassCharacter& chi, long index, Precision prec, bool with_gauss) {
  json images = json::array();
  for (auto& e : chi.images()) images.push_back(e.str());
  json j{{"index", index},
         {"modulus", chi.modulus().str()},
         {"images", images},
         {"order", chi.order()},
         {"signature", signs_json(chi.signature())},
         {"conductor", chi.conductor().str()},
         {"primitive", chi.is_primitive()}};
  if (with_gauss) {
    // Gauss sums on the primitive character (conductor modulus).
    j["gauss_sum"] = exact_number(gauss_sum(chi.primitive()), prec);
    j["gauss_sum_convention"] = "primitive character, conductor modulus";
  }
  return j;
}

json report_json(const ConstantTermReport& r) {
  json j{{"lambda", r.lambda}};
  j["cusp_label"] = r.cusp_label ? json(r.cusp_label->str()) : json("infinity");
  j["matrix"] = r.matrix ? matrix_json(*r.matrix) : json(nullptr);
  j["value"] = number(r.value, r.exact);
  j["vanishing_reason"] = r.vanishing_reason.empty() ? json(nullptr) : json(r.vanishing_reason);
  j["formula_path"] = r.formula_path;
  j["conventions"] = r.conventions;
  j["warnings"] = r.warnings;
  return j;
}

json lvalue_json(const LValue& v) {
  json j{{"point", v.point}, {"value", number(v.value, v.exact)}, {"method", to_string(v.method)},
         {"error_bound", v.error_bound}, {"error_bound_is_heuristic", v.tail_is_heuristic},
         {"truncation", v.truncation}, {"warnings", v.warnings}};
  return j;
}

// ---------------------------------------------------------------------------
// Options shared by several subcommands.

struct Options {
  std::string field = "Q";
  std::string ideal;
  std::vector<std::string> ideals;
  std::string modulus = "[1]";
  std::string level;
  std::string b;
  std::string chr = "1";
  std::string eta = "1";
  std::string psi = "1";
  std::string at;
  std::string gamma;
  std::string slash;
  long k = 4;
  long lambda = 0;
  long up_to_norm = 0;
  long norm_bound = 0;
  long N = 0;
  long trunc = 0;
  long mesh = 2;
  double box = 20;
  std::vector<double> heights;
  std::string qheight;
  bool gauss = false;
  std::vector<std::string> suites;
};

EisensteinSpec make_spec(const Field& F, const Options& o, Precision prec) {
  return EisensteinSpec::make(parse_character(F, o.eta), parse_character(F, o.psi), o.k, prec);
}

json cmd_field(const Options& o) {
  Field F = parse_field(o.field);
  json poly = json::array();
  for (auto& c : F.polynomial()) poly.push_back(c.str());
  json units = json::array();
  if (F.has_unit_data())
    for (auto& u : F.unit_generators()) units.push_back(u.str());
  json out{{"degree", F.degree()}, {"polynomial", poly}, {"discriminant", F.discriminant().str()},
           {"different", ideal_json(F.different())}, {"unit_generators", units}};
  if (F.has_class_data()) {
    for (auto [kind, name] : {std::pair{ClassKind::Wide, "class_group"}, std::pair{ClassKind::Narrow, "narrow_class_group"}}) {
      auto G = class_group(F, kind);
      json st = json::array(), reps = json::array();
      for (auto& s : G.structure()) st.push_back(s.str());
      for (auto& r : G.representatives()) reps.push_back(r.str());
      out[name] = json{{"h", G.order()}, {"structure", st}, {"representatives", reps}};
    }
  }
  return out;
}

json describe_ideal(const FractionalIdeal& I) {
  json j = ideal_json(I);
  json fac = json::array();
  for (auto& [P, e] : factor(I))
    fac.push_back(json{{"prime", P.ideal.str()}, {"p", P.p.str()}, {"e", P.e}, {"f", P.f}, {"exponent", e}});
  j["factorization"] = fac;
  const Field& F = I.field();
  if (F.has_class_data()) {
    auto wide = is_principal(I), narrow = is_principal(I, true);
    j["principal"] = wide.principal;
    if (wide.generator) j["generator"] = wide.generator->str();
    j["narrowly_principal"] = narrow.principal;
    j["class_index"] = class_group(F, ClassKind::Wide).class_index(I);
    j["narrow_class_index"] = class_group(F, ClassKind::Narrow).class_index(I);
  }
  return j;
}

json cmd_ideals(const Options& o) {
  Field F = parse_field(o.field);
  json out = json::array();
  if (o.up_to_norm > 0) {
    for (auto& [I, n] : ideals_by_norm(F, o.up_to_norm)) out.push_back(ideal_json(I));
    return out;
  }
  if (o.ideals.empty()) throw ValidationError("ideals: give --ideal or --up-to-norm");
  for (auto& s : o.ideals) out.push_back(describe_ideal(FractionalIdeal::parse(F, s)));
  return out;
}

json cmd_ray_class(const Options& o, Precision prec) {
  Field F = parse_field(o.field);
  auto G = RayClassGroup::build(FractionalIdeal::parse(F, o.modulus));
  json st = json::array(), gens = json::array(), chars = json::array();
  for (auto& s : G.structure()) st.push_back(s.str());
  for (auto& g : G.generators()) gens.push_back(g.str());
  long idx = 0;
  for (auto& chi : characters(G)) chars.push_back(character_json(chi, idx++, prec, o.gauss));
  return json{{"modulus", ideal_json(G.modulus())}, {"order", G.order()}, {"structure", st},
              {"generators", gens}, {"characters", chars}};
}

json cmd_cusps(const Options& o) {
  Field F = parse_field(o.field);
  if (o.level.empty()) throw ValidationError("cusps: --level is required");
  auto m = FractionalIdeal::parse(F, o.level);
  auto b = o.b.empty() ? m : FractionalIdeal::parse(F, o.b);
  auto ts = twist_representatives(b, m);
  if (o.lambda < 0 || o.lambda >= static_cast<long>(ts.size()))
    throw ValidationError("lambda out of range 0.." + std::to_string(ts.size() - 1));
  const auto& t = ts[static_cast<size_t>(o.lambda)];
  json out = json::array();
  for (auto& c : enumerate_cusps(t, b, m, static_cast<int>(o.lambda)))
    out.push_back(json{{"class_label", c.class_label.str()}, {"class_index", c.class_index},
                       {"at_infinity", c.at_infinity}, {"matrix", matrix_json(c.matrix)},
                       {"n1", c.n1.str()}, {"n2", c.n2.str()}, {"twist", t.str()}});
  return out;
}

json cmd_lvalue(const Options& o, Precision prec) {
  Field F = parse_field(o.field);
  auto chi = parse_character(F, o.chr);
  // --at 1-k or --at k.
  const std::string& at = o.at;
  if (at.rfind("1-", 0) == 0) {
    long k = parse_long(at.substr(2), "k in 1-k");
    SpecialValueOptions opt;
    opt.prec = prec;
    return lvalue_json(l_special_value(chi.primitive(), k, opt));
  }
  long k = parse_long(at, "--at");
  if (k <= 0) throw ValidationError("--at: write negative points as 1-k");
  if (o.norm_bound > 0) return lvalue_json(l_series(chi, k, o.norm_bound, prec));
  long terms = 0;
  Ball v = l_value_at(chi.primitive(), k, prec, &terms);
  return json{{"point", k}, {"value", number(v)}, {"method", to_string(LMethod::FunctionalEquation)},
              {"truncation", terms}};
}

json cmd_coefficients(const Options& o, Precision prec) {
  Field F = parse_field(o.field);
  auto E = make_spec(F, o, prec);
  if (o.up_to_norm <= 0) throw ValidationError("coefficients: --up-to-norm X with X >= 1");
  json out = json::array();
  for (auto& [I, n] : ideals_by_norm(F, o.up_to_norm))
    out.push_back(json{{"ideal", I.str()}, {"norm", n}, {"value", exact_number(coefficient(E, I), prec)}});
  return out;
}

json cmd_constant_terms(const Options& o, Precision prec) {
  Field F = parse_field(o.field);
  auto E = make_spec(F, o, prec);
  json out = json::array();
  if (o.at.empty()) {
    for (auto& r : constant_term_table(E)) out.push_back(report_json(r));
    return out;
  }
  if (o.lambda < 0 || o.lambda >= static_cast<long>(E.twists.size()))
    throw ValidationError("lambda out of range 0.." + std::to_string(E.twists.size() - 1));
  const int l = static_cast<int>(o.lambda);
  if (o.at.find(',') != std::string::npos && o.at.front() != '[') {
    out.push_back(report_json(constant_under_slash(E, l, parse_matrix(F, o.at))));
  } else {
    auto r0 = FractionalIdeal::parse(F, o.at);
    if (class_group(F, ClassKind::Wide).class_index(r0) == 0)
      out.push_back(report_json(constant_at_infinity(E)));
    else
      out.push_back(report_json(constant_at_cusp(E, l, r0)));
  }
  return out;
}

// Primitive Dirichlet characters of conductor dividing N, by divisor and then
// by the enumeration order of each conductor.
std::vector<RayClassCharacter> dirichlet_list(long N) {
  Field Q = Field::rationals();
  std::vector<RayClassCharacter> out;
  for (long u = 1; u <= N; ++u) {
    if (N % u) continue;
    if (u == 1) {
      out.push_back(RayClassCharacter::trivial(Q));
      continue;
    }
    for (auto& c : primitive_characters(RayClassGroup::build(FractionalIdeal::parse(Q, "[" + std::to_string(u) + "]"))))
      out.push_back(c);
  }
  return out;
}

RayClassCharacter q_character(const std::string& s, long N) {
  if (N > 0 && s.find_first_not_of("0123456789") == std::string::npos) {
    auto list = dirichlet_list(N);
    long i = parse_long(s, "character index");
    if (i >= static_cast<long>(list.size()))
      throw ValidationError("character index " + s + " out of range 0.." + std::to_string(list.size() - 1));
    return list[static_cast<size_t>(i)];
  }
  return parse_character(Field::rationals(), s);
}

oracle_q::Sl2 parse_sl2(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, ',')) v.push_back(parse_long(piece.substr(piece.find_first_not_of(' ')), "--gamma entry"));
  if (v.size() != 4) throw ValidationError("--gamma expects \"a,b,c,d\"");
  return {v[0], v[1], v[2], v[3]};
}

json cmd_oracle_q(const Options& o, Precision prec) {
  auto eta = q_character(o.eta, o.N), psi = q_character(o.psi, o.N);
  if (o.N > 0) {
    Integer cond = eta.conductor().norm().convert_to<Integer>() * psi.conductor().norm().convert_to<Integer>();
    if (cond != o.N) throw ValidationError("cond(eta) cond(psi) = " + cond.str() + " differs from --N");
  }
  oracle_q::Sl2 g = o.gamma.empty() ? oracle_q::Sl2{1, 0, 0, 1} : parse_sl2(o.gamma);
  oracle_q::ExtractOptions opt;
  opt.prec = prec;
  opt.truncation = o.trunc;
  if (!o.qheight.empty()) {
    Rational h = json_rational(json(o.qheight));
    if (h <= 0) throw ValidationError("--height must be positive");
    opt.height = Real(h, prec);
  }
  auto v = oracle_q::slash_and_extract(oracle_q::DirichletTable::from(eta), oracle_q::DirichletTable::from(psi), o.k,
                                       g, opt);
  json list = json::array();
  if (o.N > 0) {
    long i = 0;
    for (auto& c : dirichlet_list(o.N)) list.push_back(character_json(c, i++, prec, false));
  }
  return json{{"constant", number(v.value)}, {"tail", v.tail}, {"tail_is_heuristic", v.tail_is_heuristic},
              {"terms", v.terms}, {"characters", list}};
}

json cmd_oracle_f(const Options& o, Precision prec) {
  using namespace oracle_hilbert;
  Field F = parse_field(o.field);
  auto E = make_spec(F, o, prec);
  SeriesEvalSpec s{E, static_cast<int>(o.lambda), {}, std::nullopt, o.box};
  if (!o.slash.empty()) s.slash = parse_matrix(F, o.slash);
  auto heights = o.heights.empty() ? std::vector<double>{10} : o.heights;
  auto r = extract_constant(s, heights, o.mesh);
  json per = json::array();
  for (auto& v : r.per_height) per.push_back(json{{"re", v.real()}, {"im", v.imag()}});
  // Double-precision sum: the radius combines spread and the heuristic tail.
  json value{{"mid", json{{"re", r.value.real()}, {"im", r.value.imag()}}}, {"radius", r.spread + r.tail}};
  return json{{"constant", value}, {"radius_is_heuristic", true}, {"spread", r.spread}, {"tail", r.tail},
              {"terms", r.terms}, {"per_height", per}};
}

json cmd_verify(const Options& o, std::uint64_t seed, bool& all_passed) {
  std::vector<std::string> names = o.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = verify::suite_names();
  json out{{"suite_version", verify::kSuiteVersion}, {"seed", seed}, {"results", json::array()}};
  all_passed = true;
  for (auto& n : names) {
    auto r = verify::run_suite(n, seed);
    json facts = json::object();
    for (auto& [k, v] : r.facts) facts[k] = v;
    out["results"].push_back(json{{"suite", r.name}, {"summary", r.summary}, {"passed", r.passed},
                                  {"checks", r.checks}, {"failed_checks", r.failed_checks},
                                  {"budget_seconds", r.budget_seconds}, {"facts", facts},
                                  {"failures", r.failures}});
    // Timings vary between runs; they stay out of the document.
    std::cerr << r.name << ": " << r.seconds << " s\n";
    all_passed = all_passed && r.passed;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant terms of Hilbert Eisenstein series at every cusp"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Precision prec = 128;
  if (const char* env = std::getenv("HCUSP_PREC")) prec = std::atol(env);
  std::uint64_t seed = 20240601;
  std::string json_path;
  app.add_option("--prec", prec, "Working precision in bits (default 128, or $HCUSP_PREC)")->check(CLI::Range(32, 4096));
  app.add_option("--seed", seed, "Seed for randomized suites");
  app.add_option("--json", json_path, "Write the JSON document to this path instead of stdout");

  Options o;
  auto field_opt = [&](CLI::App* c) { c->add_option("--field", o.field, "\"Q\", \"Q(sqrt D)\" or field-spec JSON"); };
  auto pair_opts = [&](CLI::App* c) {
    field_opt(c);
    c->add_option("--k", o.k, "Parallel weight")->required();
    c->add_option("--eta", o.eta, "Character: 1, <modulus>:<index> or JSON");
    c->add_option("--psi", o.psi, "Character: 1, <modulus>:<index> or JSON");
  };

  auto* field = app.add_subcommand("field", "Field invariants, units and class groups");
  field_opt(field);

  auto* ideals = app.add_subcommand("ideals", "Canonical form, factorization and class of ideals");
  field_opt(ideals);
  ideals->add_option("--ideal", o.ideals, "Ideal literal \"[g1, g2, ...]\" (repeatable)")
      ->allow_extra_args(false);  // a bracketed literal is one value, not a list
  ideals->add_option("--up-to-norm", o.up_to_norm, "List all integral ideals of norm <= X");

  auto* ray = app.add_subcommand("ray-class", "Ray class group of a modulus and its characters");
  field_opt(ray);
  ray->add_option("--modulus", o.modulus, "Integral ideal literal");
  ray->add_flag("--gauss", o.gauss, "Include exact Gauss sums");

  auto* cusps = app.add_subcommand("cusps", "Cusp classes with representative matrices");
  field_opt(cusps);
  cusps->add_option("--lambda", o.lambda, "Narrow class index");
  cusps->add_option("--level", o.level, "Level m")->required();
  cusps->add_option("--b", o.b, "Modulus b of psi (default: the level)");

  auto* lvalue = app.add_subcommand("lvalue", "Hecke L-values");
  field_opt(lvalue);
  lvalue->add_option("--char", o.chr, "Character: 1, <modulus>:<index> or JSON");
  lvalue->add_option("--at", o.at, "1-k (special value) or k >= 2")->required();
  lvalue->add_option("--norm-bound", o.norm_bound, "Sum the Dirichlet series over N(a) <= X");

  auto* coeffs = app.add_subcommand("coefficients", "Fourier coefficients c(n, E)");
  pair_opts(coeffs);
  coeffs->add_option("--up-to-norm", o.up_to_norm, "All integral n with N(n) <= X")->required();

  auto* consts = app.add_subcommand("constant-terms", "Normalized constant terms at every cusp class");
  pair_opts(consts);
  consts->add_option("--at", o.at, "Slash matrix \"a,b,c,d\" or cusp class label \"[..]\"");
  consts->add_option("--lambda", o.lambda, "Narrow class index for --at");

  auto* oq = app.add_subcommand("oracle-q", "Lattice-sum oracle over Q");
  oq->add_option("--N", o.N, "Level; integer --eta/--psi index the primitive characters of conductor dividing N");
  oq->add_option("--k", o.k, "Weight")->required();
  oq->add_option("--eta", o.eta, "Index or character");
  oq->add_option("--psi", o.psi, "Index or character");
  oq->add_option("--gamma", o.gamma, "SL2(Z) matrix \"a,b,c,d\"");
  oq->add_option("--trunc", o.trunc, "Fourier truncation (0: automatic)");
  oq->add_option("--height", o.qheight, "Horocycle height, integer or \"p/q\" (default 10)");

  auto* of = app.add_subcommand("oracle-f", "Truncated Hilbert series oracle (degree <= 2)");
  pair_opts(of);
  of->add_option("--lambda", o.lambda, "Narrow class index");
  of->add_option("--slash", o.slash, "Slash matrix \"a,b,c,d\"");
  of->add_option("--box", o.box, "Embedding box bound B");
  of->add_option("--height", o.heights, "Extraction height (repeatable)");
  of->add_option("--mesh", o.mesh, "Mesh points per period direction");

  auto* ver = app.add_subcommand("verify", "Run named verification suites");
  ver->add_option("suite", o.suites, "Suite names, or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto emit = [&](const json& doc) {
    std::string text = doc.dump(2) + "\n";
    if (json_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(json_path);
      if (!f) throw ValidationError("cannot write " + json_path);
      f << text;
    }
  };
  auto fail = [](const char* kind, const std::string& msg, int code) {
    std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
    return code;
  };

  try {
    if (*field) emit(cmd_field(o));
    if (*ideals) emit(cmd_ideals(o));
    if (*ray) emit(cmd_ray_class(o, prec));
    if (*cusps) emit(cmd_cusps(o));
    if (*lvalue) emit(cmd_lvalue(o, prec));
    if (*coeffs) emit(cmd_coefficients(o, prec));
    if (*consts) emit(cmd_constant_terms(o, prec));
    if (*oq) emit(cmd_oracle_q(o, prec));
    if (*of) emit(cmd_oracle_f(o, prec));
    if (*ver) {
      bool ok = false;
      emit(cmd_verify(o, seed, ok));
      return ok ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), 2);
  } catch (const UnsupportedError& e) {
    return fail("unsupported", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
