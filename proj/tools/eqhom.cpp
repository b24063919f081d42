// eqhom: command-line front end for invariant (co)homology computations.

#include "eqhom/eqhom.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace eqhom;

namespace {

struct Flags {
  std::string spec_file;
  std::string group;   // shorthand, e.g. cyclic:3
  std::string action;  // shorthand: trivial | inversion
  std::optional<std::string> modulus;
  std::optional<std::size_t> max_degree;
  std::string output = "text";
  std::string case_name;
  bool compare = false;
  bool timing = false;
};

auto read_file(const std::string& path) -> std::string {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open spec file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

auto parse_group_shorthand(const std::string& s) -> GroupSpec {
  GroupSpec g;
  auto colon = s.find(':');
  require(colon != std::string::npos, "--group: expected KIND:N, e.g. cyclic:3");
  g.kind = s.substr(0, colon);
  require(g.kind == "cyclic" || g.kind == "dihedral", "--group: kind must be cyclic or dihedral");
  try {
    g.n = std::stoul(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw InvalidInput("--group: order is not a number");
  }
  require(g.n >= 1, "--group: order must be positive");
  return g;
}

/// The JSON input (if any) with command-line overrides applied.
auto load_spec(const Flags& f, const std::string& task) -> ComputationSpec {
  ComputationSpec s;
  if (!f.spec_file.empty()) s = parse_spec(read_file(f.spec_file), f.spec_file);
  if (!f.group.empty()) s.group = parse_group_shorthand(f.group);
  if (!f.action.empty()) {
    require(f.action == "trivial" || f.action == "inversion", "--action: trivial or inversion");
    s.action = ActionSpec{f.action, {}, {}};
  }
  if (f.modulus) {
    Integer m;
    require(m.set_str(*f.modulus, 10) == 0 && m >= 0, "--modulus: expected a nonnegative integer");
    s.coefficients = CoefficientSpec{};
    s.coefficients.kind = m == 0 ? "integers" : "mod";
    s.coefficients.modulus = m;
  }
  if (f.max_degree) s.max_degree = *f.max_degree;
  require(s.min_degree <= s.max_degree, "min_degree exceeds max_degree");
  s.task = task;
  return s;
}

auto modulus_of(const ComputationSpec& s) -> Integer {
  require(s.coefficients.kind != "module",
          "this task takes integer or mod-m coefficients, not a presented module");
  return s.coefficients.kind == "mod" ? s.coefficients.modulus : Integer(0);
}

auto degrees_of(const ComputationSpec& s) -> std::vector<std::size_t> {
  std::vector<std::size_t> d;
  for (std::size_t n = s.min_degree; n <= s.max_degree; ++n) d.push_back(n);
  return d;
}

auto new_result(const ComputationSpec& s) -> ResultDocument {
  ResultDocument r;
  r.spec = s.to_json();
  r.task = s.task;
  return r;
}

void keep_range(ResultDocument& r, const ComputationSpec& s, const std::vector<IntVector>& all) {
  r.degrees = degrees_of(s);
  for (std::size_t n : r.degrees) r.divisors.push_back(all.at(n));
}

auto run_homology(const ComputationSpec& s) -> ResultDocument {
  ResultDocument r = new_result(s);
  if (s.coefficients.kind != "module") {
    keep_range(r, s, ordinary_homology_divisors(s.group.build(), modulus_of(s), s.max_degree));
    return r;
  }
  QGModule m = forget_q(s.build_module());
  r.degrees = degrees_of(s);
  for (std::size_t n : r.degrees) r.divisors.push_back(hh_homology(m, n).divisors());
  return r;
}

auto run_cohomology(const ComputationSpec& s) -> ResultDocument {
  ResultDocument r = new_result(s);
  if (s.coefficients.kind != "module") {
    keep_range(r, s, bar_complex(s.group.build(), modulus_of(s), s.max_degree + 1).cohomology_divisors());
    return r;
  }
  QGModule m = forget_q(s.build_module());
  r.degrees = degrees_of(s);
  for (std::size_t n : r.degrees) r.divisors.push_back(hh_cohomology(m, n).divisors());
  return r;
}

auto run_invariant_homology(const ComputationSpec& s, const Flags& f) -> ResultDocument {
  ResultDocument r = new_result(s);
  if (s.coefficients.kind == "module" && !s.coefficients.is_trivial_module()) {
    QGModule m = s.build_module();
    r.degrees = degrees_of(s);
    for (std::size_t n : r.degrees) r.divisors.push_back(hh_homology(m, n).divisors());
    r.details["theory"] = "HH";
    return r;
  }
  const GroupAction a = s.build_action();
  const Integer m = modulus_of(s);
  keep_range(r, s, invariant_homology_divisors(a, m, s.max_degree));
  if (f.compare) {
    const bool holds = order_invertible_mod(a.q_group().order(), m);
    Json semi = Json::array();
    for (const auto& t : theorem2_check(a, m, s.max_degree)) {
      if (t.degree < s.min_degree) continue;
      semi.push_back(divisors_to_json(t.semidirect_divisors));
      r.verdicts["semidirect_q" + std::to_string(t.degree)] = t.equal;
      if (!t.equal && !holds) r.hypothesis_violated = true;
    }
    r.details["semidirect_divisors"] = semi;
    r.details["q_order_invertible"] = holds;
  }
  return r;
}

auto run_invariant_cohomology(const ComputationSpec& s, const Flags& f) -> ResultDocument {
  ResultDocument r = new_result(s);
  QGModule m = s.build_module();
  r.degrees = degrees_of(s);
  for (std::size_t n : r.degrees) r.divisors.push_back(hh_cohomology(m, n).divisors());
  if (s.coefficients.is_trivial_module()) {
    Json kn = Json::array();
    for (std::size_t n : r.degrees) kn.push_back(divisors_to_json(knudson_cohomology(m.action, m.underlying, n).divisors()));
    r.details["knudson_divisors"] = kn;
  }
  if (f.compare) {
    const bool holds = is_invertible_in(Integer(static_cast<unsigned long>(m.q_group().order())),
                                        m.underlying);
    Json fixed = Json::array();
    for (std::size_t n : r.degrees) {
      auto c = hh_versus_fixed_cohomology(m, n);
      fixed.push_back(divisors_to_json(c.fixed_divisors));
      const bool ok = c.lands_in_fixed && c.is_isomorphism;
      r.verdicts["fixed_points_q" + std::to_string(n)] = ok;
      if (!ok && !holds) r.hypothesis_violated = true;
    }
    r.details["fixed_point_divisors"] = fixed;
    r.details["q_order_invertible"] = holds;
  }
  return r;
}

auto orbits_json(const std::vector<std::vector<Element>>& orbits) -> Json {
  Json j = Json::array();
  for (const auto& o : orbits) j.push_back(o);
  return j;
}

auto run_h1_weighed(const ComputationSpec& s) -> ResultDocument {
  ResultDocument r = new_result(s);
  const GroupAction a = s.build_action();
  WeighedPresentation w = weighed_presentation(a);
  FinAb bar = invariant_homology(a, 0, 1);
  ComparisonReport c = comparison_hom(a);
  r.degrees = {1};
  r.divisors = {w.group.divisors()};
  r.details["orbits"] = orbits_json(w.orbits);
  r.details["isotropy_orders"] = w.isotropy_order;
  r.details["bar_complex_divisors"] = divisors_to_json(bar.divisors());
  r.details["orbit_group_abelianization"] = divisors_to_json(c.orbit.abelianization.divisors());
  r.details["comparison_injective"] = c.injective;
  r.details["comparison_surjective"] = c.surjective;
  r.verdicts["weighed_equals_bar_complex"] = w.group.divisors() == bar.divisors();
  r.verdicts["comparison_well_defined"] = c.well_defined;
  r.verdicts["diagram_commutes"] = c.diagram_commutes;
  r.verdicts["annihilation"] = c.annihilation;
  return r;
}

auto run_orbit_group(const ComputationSpec& s) -> ResultDocument {
  ResultDocument r = new_result(s);
  OrbitGroupResult o = orbit_group(s.build_action());
  r.degrees = {1};
  r.divisors = {o.abelianization.divisors()};
  r.details["order"] = o.orbit_group.order();
  r.details["closure_order"] = o.closure.size();
  r.details["projection"] = o.projection;
  r.details["abelian"] = o.orbit_group.is_abelian();
  r.details["table"] = o.orbit_group.table();
  r.verdicts["orbits_identified"] = o.orbits_identified;
  return r;
}

auto factor_set_json(const FactorSet& f) -> Json {
  Json t = Json::array();
  for (const auto& row : f.values) {
    Json rj = Json::array();
    for (const auto& v : row) rj.push_back(divisors_to_json(v));
    t.push_back(rj);
  }
  return t;
}

auto run_extensions(const ComputationSpec& s, const std::string& mode) -> ResultDocument {
  ResultDocument r = new_result(s);
  const QGModule k = s.build_module();
  if (mode == "classify") {
    Classification cl = classify(k);
    r.degrees = {2};
    r.divisors = {cl.group.divisors()};
    Json gens = Json::array();
    for (const auto& g : cl.generators) gens.push_back(factor_set_json(g));
    r.details["generators"] = gens;
    r.details["free_action"] = cl.free_action;
    return r;
  }
  require(!s.factor_set.empty(), "extensions " + mode + ": the input needs a factor_set");
  FactorSet f = ComputationSpec::build_factor_set(k, s.factor_set, "factor_set");
  if (mode == "build") {
    ValidationReport v = validate_factor_set(f);
    r.verdicts["valid_factor_set"] = v.valid;
    if (!v.valid) {
      r.details["violations"] = v.violations;
      return r;
    }
    Extension e = build_extension(f);
    r.details["order"] = e.group.order();
    r.details["abelian"] = e.group.is_abelian();
    r.details["table"] = e.group.table();
    r.details["free_action"] = e.free_action;
    r.verdicts["order"] = e.checks.order_ok;
    r.verdicts["injection_is_hom"] = e.checks.injection_is_hom;
    r.verdicts["projection_is_hom"] = e.checks.projection_is_hom;
    r.verdicts["exact"] = e.checks.exact;
    r.verdicts["q_acts_by_automorphisms"] = e.checks.q_acts_by_automorphisms;
    r.verdicts["section_normalized"] = e.checks.section_normalized;
    r.verdicts["section_equivariant"] = e.checks.section_equivariant;
    return r;
  }
  require(!s.other_factor_set.empty(), "extensions equiv: the spec needs an other_factor_set");
  FactorSet g = ComputationSpec::build_factor_set(k, s.other_factor_set, "other_factor_set");
  auto w = are_equivalent(f, g);
  r.details["equivalent"] = w.has_value();
  if (w) {
    Json c = Json::array();
    for (const auto& v : *w) c.push_back(divisors_to_json(v));
    r.details["witness"] = c;
  }
  return r;
}

auto run_laurent(const ComputationSpec& s) -> ResultDocument {
  ResultDocument r = new_result(s);
  r.degrees = degrees_of(s);
  for (std::size_t n : r.degrees) r.divisors.push_back(hh_z2_on_z(n).divisors());
  InducedComplex ic = induced_cochain_complex(std::max<std::size_t>(s.max_degree, 1));
  Json maps = Json::array();
  for (const auto& m : ic.maps) maps.push_back(integer_to_json(m));
  r.details["induced_maps"] = maps;
  Json ext = Json::array();
  for (std::size_t n = 0; n + 1 <= s.max_degree; ++n)
    ext.push_back(divisors_to_json(ext_augmentation_ideal(n).divisors()));
  r.details["ext_augmentation_ideal"] = ext;
  r.details["der_q"] = divisors_to_json(der_q_z_on_z().group.divisors());
  r.details["extension_classes"] = integer_to_json(extension_class_count());
  ResolutionCheck rc = check_resolution(12, 8);
  r.verdicts["epsilon_d1_zero"] = rc.augmentation_kills_d1;
  r.verdicts["d_squared_zero"] = rc.composites_vanish;
  r.verdicts["g_equivariant"] = rc.g_equivariant;
  r.verdicts["q_equivariant"] = rc.q_equivariant;
  return r;
}

void print_text(const ResultDocument& r, std::ostream& os) {
  os << r.task << "\n";
  for (std::size_t i = 0; i < r.degrees.size(); ++i)
    os << "  degree " << r.degrees[i] << ": " << divisors_to_string(r.divisors[i]) << "\n";
  for (const auto& [k, v] : r.verdicts.items())
    os << "  " << k << ": " << (v.get<bool>() ? "yes" : "no") << "\n";
  for (const auto& [k, v] : r.details.items()) os << "  " << k << " = " << v.dump() << "\n";
  if (r.hypothesis_violated) os << "  hypothesis violated: |Q| is not invertible in the coefficients\n";
  if (r.timing_ms) os << "  time: " << *r.timing_ms << " ms\n";
}

auto all_verdicts_hold(const ResultDocument& r) -> bool {
  for (const auto& [k, v] : r.verdicts.items())
    if (!v.get<bool>()) return false;
  return true;
}

auto run_verify(const Flags& f) -> int {
  SuiteOptions opt;
  opt.only_case = f.case_name;
  if (f.max_degree) opt.max_degree = *f.max_degree;
  if (!opt.only_case.empty()) {
    auto names = suite_case_names();
    require(std::find(names.begin(), names.end(), opt.only_case) != names.end(),
            "--case: unknown case " + opt.only_case);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto checks = run_verification(opt);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.passed ? 1 : 0;
  if (f.output == "structured") {
    Json j;
    j["checks"] = Json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"case", c.case_name}, {"label", c.label}, {"passed", c.passed},
                             {"detail", c.detail}});
    j["passed"] = passed;
    j["total"] = checks.size();
    if (f.timing) j["timing_ms"] = ms;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.case_name << ": " << c.label
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    std::cout << passed << "/" << checks.size() << " checks passed\n";
    if (f.timing) std::cout << "time: " << ms << " ms\n";
  }
  return passed == checks.size() ? 0 : 1;
}

}  // namespace

auto main(int argc, char** argv) -> int {
  CLI::App app{"Invariant homology and cohomology of finite groups with actions"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", f.spec_file, "JSON computation spec")->check(CLI::ExistingFile);
    sub->add_option("--group", f.group, "group shorthand, cyclic:N or dihedral:N");
    sub->add_option("--action", f.action, "action shorthand: trivial or inversion");
    sub->add_option("--modulus", f.modulus, "coefficients Z/m (0 means Z)");
    sub->add_option("--max-degree", f.max_degree, "highest degree reported");
    sub->add_option("--output", f.output, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_flag("--timing", f.timing, "report wall-clock time");
  };

  std::string task;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&task, name] { task = name; });
    return sub;
  };
  add("homology", "H_q(G, A) from the bar complex");
  add("invariant-homology", "H_q^Q(G, A) from invariant chains")
      ->add_flag("--compare", f.compare, "compare with H_q(G x| Q, A)");
  add("cohomology", "H^q(G, A)");
  add("invariant-cohomology", "HH^q_Q(G, M), with Knudson's H^q_Q for trivial modules")
      ->add_flag("--compare", f.compare, "compare with H^q(G, M)^Q");
  add("h1-weighed", "weighed orbit abelianization and the comparison map");
  add("orbit-group", "the orbit group G//Q");
  std::string ext_mode;
  CLI::App* ext = add("extensions", "factor sets and extension classes");
  ext->add_option("mode", ext_mode, "classify, build or equiv")
      ->required()
      ->check(CLI::IsMember({"classify", "build", "equiv"}));
  add("laurent-example", "Z/2 acting on Z by inversion");
  CLI::App* verify = add("verify-paper", "run the verification battery");
  verify->add_option("--case", f.case_name, "run one case only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (task == "verify-paper") return run_verify(f);
    ComputationSpec s = load_spec(f, task == "extensions" ? "extensions " + ext_mode : task);
    auto t0 = std::chrono::steady_clock::now();
    ResultDocument r;
    if (task == "homology") r = run_homology(s);
    else if (task == "invariant-homology") r = run_invariant_homology(s, f);
    else if (task == "cohomology") r = run_cohomology(s);
    else if (task == "invariant-cohomology") r = run_invariant_cohomology(s, f);
    else if (task == "h1-weighed") r = run_h1_weighed(s);
    else if (task == "orbit-group") r = run_orbit_group(s);
    else if (task == "extensions") r = run_extensions(s, ext_mode);
    else r = run_laurent(s);
    if (f.timing)
      r.timing_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (f.output == "structured") std::cout << r.to_json().dump(2) << "\n";
    else print_text(r, std::cout);
    if (r.hypothesis_violated) return 2;
    return all_verdicts_hold(r) ? 0 : 1;
  } catch (const LimitExceeded& e) {
    std::cerr << "error: refused: " << e.what() << "\n";
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
  }
  return 1;
}
