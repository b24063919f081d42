// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference values are fixed tables or come from oracles.hpp.

#include "eqhom/verification.hpp"
#include "oracles.hpp"

#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace eqhom;

namespace {

using Clock = std::chrono::steady_clock;

auto seconds_since(Clock::time_point t0) -> double {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

auto divs(std::initializer_list<std::initializer_list<long>> rows) -> std::vector<IntVector> {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

auto show(const std::vector<IntVector>& ds) -> std::string {
  std::string s;
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? ", " : "") + divisors_to_string(ds[i]);
  return s;
}

auto name_of(std::size_t n, long m) -> std::string {
  return "Z/" + std::to_string(n) + " mod " + std::to_string(m);
}

struct TableCase {
  std::size_t n;
  long m;
};

const std::vector<TableCase> kTable = {{3, 9}, {3, 3}, {4, 3}, {5, 5}};

auto dihedral_tables() -> Outcome {
  Outcome o;
  const std::vector<std::pair<std::size_t, std::vector<IntVector>>> cases = {
      {3, divs({{0}, {2}, {}, {6}, {}})}, {5, divs({{0}, {2}, {}, {10}, {}})}};
  for (const auto& [n, want] : cases) {
    auto t0 = Clock::now();
    auto got = ordinary_homology_divisors(dihedral(n), 0, 4);
    const double secs = seconds_since(t0);
    o.check(got == want, "D" + std::to_string(2 * n) + ": got " + show(got));
    o.check(secs < 120.0, "D" + std::to_string(2 * n) + " took " + std::to_string(secs) + " s");
  }
  return o;
}

auto invariant_table() -> Outcome {
  Outcome o;
  for (auto [n, m] : kTable) {
    const long g = std::gcd(static_cast<long>(n), m);
    std::vector<IntVector> want = {IntVector{m}, {}, {}, {}, {}};
    if (g > 1) want[3] = want[4] = IntVector{g};
    auto t0 = Clock::now();
    auto got = invariant_homology_divisors(inversion_action(cyclic(n)), m, 4);
    const double secs = seconds_since(t0);
    o.check(got == want, name_of(n, m) + ": got " + show(got));
    o.check(secs < 60.0, name_of(n, m) + " took " + std::to_string(secs) + " s");
  }
  return o;
}

auto semidirect_comparison() -> Outcome {
  Outcome o;
  for (auto [n, m] : kTable) {
    if (m % 2 == 0) continue;
    const GroupAction a = inversion_action(cyclic(n));
    auto inv = invariant_homology_divisors(a, m, 3);
    // The product group is rebuilt by hand from the multiplication rule.
    const FiniteGroup& g = a.g_group();
    const std::size_t k = g.order();
    std::vector<std::vector<Element>> table(2 * k, std::vector<Element>(2 * k));
    for (Element x = 0; x < 2 * k; ++x)
      for (Element y = 0; y < 2 * k; ++y) {
        const Element gx = x % k, qx = x / k, gy = y % k, qy = y / k;
        table[x][y] = g.mul(gx, a.act(qx, gy)) + k * ((qx + qy) % 2);
      }
    auto semi = ordinary_homology_divisors(FiniteGroup(table), m, 3);
    o.check(inv == semi, name_of(n, m) + ": " + show(inv) + " vs " + show(semi));
  }
  return o;
}

auto negative_control() -> Outcome {
  Outcome o;
  const GroupAction a = inversion_action(cyclic(3));
  auto r = theorem2_check(a, 0, 1).at(1);
  o.check(!r.hypothesis_holds, "hypothesis reported as holding over Z");
  o.check(r.invariant_divisors.empty(), "H_1^Q = " + divisors_to_string(r.invariant_divisors));
  o.check(r.semidirect_divisors == IntVector{2}, "H_1(D6) = " + divisors_to_string(r.semidirect_divisors));
  o.check(!r.equal, "comparison did not fail");
  auto pattern = invariant_homology_divisors(a, 0, 4);
  o.check(pattern == divs({{0}, {}, {}, {3}, {}}), "pattern " + show(pattern));
  return o;
}

auto fixed_point_and_norm() -> Outcome {
  Outcome o;
  std::vector<std::pair<std::string, std::pair<GroupAction, long>>> cases;
  for (auto [n, m] : kTable) cases.push_back({name_of(n, m), {inversion_action(cyclic(n)), m}});
  cases.push_back({"x -> 2x on Z/7 mod 7", {multiplier_action(7, 2, 3), 7}});
  for (const auto& [name, c] : cases) {
    const auto& [a, m] = c;
    for (std::size_t q = 0; q <= 3; ++q) {
      const std::string where = name + ", q = " + std::to_string(q);
      auto t = theorem1_check(a, m, q);
      o.check(t.hypothesis_holds && t.lands_in_fixed && t.is_isomorphism, "i_* " + where);
      auto nm = coinvariants_norm_check(a, m, q);
      o.check(nm.hypothesis_holds && nm.is_isomorphism, "norm " + where);
      o.check(nm.coinvariant_divisors == t.fixed_divisors, "coinvariants vs fixed " + where);
    }
  }
  return o;
}

auto weighed_two_paths() -> Outcome {
  Outcome o;
  const auto actions = suite_actions();
  o.check(actions.size() >= 12, "only " + std::to_string(actions.size()) + " actions");
  for (const auto& [name, a] : actions) {
    FinAb w = weighed_abelianization(a), h = invariant_homology(a, 0, 1);
    o.check(w.divisors() == h.divisors(), name + ": " + w.to_string() + " vs " + h.to_string());
  }
  return o;
}

auto orbit_diagram() -> Outcome {
  Outcome o;
  for (const auto& [name, a] : suite_actions()) {
    ComparisonReport r = comparison_hom(a);
    o.check(r.well_defined && r.diagram_commutes, name + ": diagram");
    o.check(r.annihilation, name + ": annihilation");
    o.check(r.orbit.orbits_identified, name + ": orbits");
  }
  return o;
}

// Elements of a rank-one finite module fixed by every given scalar.
auto count_fixed(long m, const std::vector<IntMatrix>& acts) -> std::size_t {
  std::size_t c = 0;
  for (long x = 0; x < m; ++x) {
    bool ok = true;
    for (const auto& s : acts) ok &= ((s(0, 0).get_si() * x - x) % m + m) % m == 0;
    c += ok;
  }
  return c;
}

auto hh_comparisons() -> Outcome {
  Outcome o;
  for (std::size_t p : {3, 5}) {
    const GroupAction a = inversion_action(cyclic(p));
    const FinAb coeff = FinAb::cyclic(static_cast<long>(p));
    const QGModule m = QGModule::trivial(a, coeff);
    for (std::size_t n = 0; n <= 3; ++n) {
      const std::string where = "Z/" + std::to_string(p) + ", n = " + std::to_string(n);
      auto fp = hh_versus_fixed_cohomology(m, n);
      o.check(fp.lands_in_fixed && fp.is_isomorphism, "fixed points " + where);
      o.check(fp.hh_divisors == knudson_cohomology(a, coeff, n).divisors(), "orbit sums " + where);
    }
  }
  for (const auto& [name, m] : suite_modules()) {
    FinAb hh0 = hh_cohomology(m, 0);
    o.check(hh0.divisors() == invariants_of_invariants(m).divisors(), name + ": HH^0");
    if (auto order = m.underlying.order(); order && m.rank() == 1) {
      std::vector<IntMatrix> acts = m.g_act;
      acts.insert(acts.end(), m.q_act.begin(), m.q_act.end());
      o.check(*hh0.order() == count_fixed(order->get_si(), acts), name + ": HH^0 by enumeration");
    }
    o.check(hh_cohomology(m, 1).divisors() == derivations(m).quotient.group.divisors(),
            name + ": HH^1");
  }
  return o;
}

auto extension_classes() -> Outcome {
  Outcome o;
  const QGModule k = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(2)), FinAb::cyclic(2));
  Classification cl = classify(k);
  o.check(cl.group.divisors() == IntVector{2}, "HH^2 = " + cl.group.to_string());
  if (cl.generators.size() != 1) {
    o.check(false, "expected one generator");
    return o;
  }
  const FactorSet zero = FactorSet::zero(k);
  for (const FactorSet* f : std::vector<const FactorSet*>{&zero, &cl.generators[0]}) {
    Extension e = build_extension(*f);
    o.check(e.checks.all(), "verification battery");
    o.check(e.group.order() == 4, "order");
  }
  const auto split = build_extension(zero).group, twisted = build_extension(cl.generators[0]).group;
  const std::vector<std::size_t> klein = {1, 2, 2, 2}, cyc = {1, 2, 4, 4};
  o.check(oracle::order_profile(split) == klein, "zero class is not Klein four");
  o.check(oracle::order_profile(twisted) == cyc, "generator does not give Z/4");
  o.check(oracle::isomorphic_by_bijection(twisted, cyclic(4)), "Z/4 by bijection");
  o.check(!are_equivalent(zero, cl.generators[0]).has_value(), "classes reported equivalent");
  o.check(are_equivalent(zero, zero).has_value(), "zero not equivalent to itself");
  return o;
}

auto laurent_example() -> Outcome {
  Outcome o;
  ResolutionCheck rc = check_resolution(12, 8);
  o.check(rc.augmentation_kills_d1, "eps d_1");
  o.check(rc.composites_vanish, "d d");
  std::vector<IntVector> hh;
  for (std::size_t n = 0; n <= 4; ++n) hh.push_back(hh_z2_on_z(n).divisors());
  o.check(hh == divs({{0}, {}, {2}, {}, {2}}), "HH^n = " + show(hh));
  o.check(extension_class_count() == 2, "extension classes " + to_string(extension_class_count()));
  return o;
}

auto is_diagonal(const IntMatrix& d) -> bool {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

auto engine_properties() -> Outcome {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::size_t> dim(1, 40), low(1, 3);
  std::uniform_int_distribution<int> coin(0, 3);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    // A quarter of the instances have rank at most 3.
    IntMatrix a = coin(rng) == 0
                      ? [&] {
                          const std::size_t k = low(rng);
                          return oracle::random_matrix(rng, r, k, 18) * oracle::random_matrix(rng, k, c, 18);
                        }()
                      : oracle::random_matrix(rng, r, c, 1000);
    SmithForm s = smith_normal_form(a);
    bool ok = s.U * a * s.V == s.D && is_diagonal(s.D);
    ok = ok && abs(oracle::determinant(s.U)) == 1 && abs(oracle::determinant(s.V)) == 1;
    ok = ok && s.U * s.U_inv == IntMatrix::identity(r);
    for (std::size_t i = 0; ok && i < s.diagonal.size(); ++i) {
      ok = s.diagonal[i] >= 0 && s.diagonal[i] == s.D(i, i);
      if (ok && i + 1 < s.diagonal.size() && s.diagonal[i + 1] != 0)
        ok = s.diagonal[i] != 0 && s.diagonal[i + 1] % s.diagonal[i] == 0;
      if (ok && s.diagonal[i] == 0) ok = i >= s.rank;
    }
    if (!ok && ++bad <= 3) o.check(false, "SNF instance " + std::to_string(trial));
  }
  o.check(bad == 0, std::to_string(bad) + " SNF failures");

  int checked = 0, wrong = 0;
  for (int trial = 0; checked < 300 && trial < 2000; ++trial) {
    const long m = trial % 2 == 0 ? 3 : 2;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    const std::size_t p = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    IntMatrix d_out = oracle::random_matrix(rng, k, n, 4);
    IntMatrix ker = integer_kernel(d_out);
    IntMatrix d_in = ker.cols() == 0 ? IntMatrix(n, p) : ker * oracle::random_matrix(rng, ker.cols(), p, 3);
    Homology h = homology_at(d_in, d_out, m);
    ++checked;
    if (*h.group.order() != oracle::homology_order_mod(d_in, d_out, m)) ++wrong;
  }
  o.check(checked == 300, "only " + std::to_string(checked) + " homology instances");
  o.check(wrong == 0, std::to_string(wrong) + " homology_at mismatches");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dihedral homology tables", dihedral_tables},
      {"invariant homology of inversion actions", invariant_table},
      {"invariant homology equals semidirect homology", semidirect_comparison},
      {"negative control over Z", negative_control},
      {"fixed-point and norm isomorphisms", fixed_point_and_norm},
      {"weighed abelianization equals invariant H_1", weighed_two_paths},
      {"orbit group diagram and annihilation", orbit_diagram},
      {"invariant cohomology comparisons", hh_comparisons},
      {"extensions of Z/2 by Z/2", extension_classes},
      {"Laurent resolution and invariant cohomology", laurent_example},
      {"Smith normal form and homology engine", engine_properties},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [label, run] = criteria[i];
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << label << " ("
         << std::fixed;
    line.precision(2);
    line << seconds_since(t0) << " s)";
    for (const auto& n : o.notes) line << "\n    " << n;
    std::cout << line.str() << std::endl;
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
