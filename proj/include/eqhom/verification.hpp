#pragma once

// The verification battery behind `eqhom verify-paper`: every comparison
// theorem and worked example, checked on small instances.

#include "eqhom/bar_complex.hpp"
#include "eqhom/extensions.hpp"
#include "eqhom/h1.hpp"
#include "eqhom/laurent.hpp"
#include "eqhom/qg_module.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace eqhom {

struct NamedAction {
  std::string name;
  GroupAction action;
};

/// x -> u x on Z/n, for a unit u of order dividing |Q|.
inline auto multiplier_action(std::size_t n, std::size_t u, std::size_t q_order) -> GroupAction {
  std::vector<Element> img(n);
  for (Element x = 0; x < n; ++x) img[x] = (u * x) % n;
  return action_from_generator_images(cyclic(q_order), cyclic(n), {1}, {img});
}

/// Actions used for the H_1 comparisons.
inline auto suite_actions() -> std::vector<NamedAction> {
  std::vector<NamedAction> out;
  out.push_back({"trivial Z/2 on Z/3", GroupAction::trivial(cyclic(2), cyclic(3))});
  out.push_back({"trivial Z/2 on Z/4", GroupAction::trivial(cyclic(2), cyclic(4))});
  for (std::size_t n = 2; n <= 6; ++n)
    out.push_back({"inversion on Z/" + std::to_string(n), inversion_action(cyclic(n))});
  for (std::size_t u : {3, 5, 7})
    out.push_back({"x -> " + std::to_string(u) + "x on Z/8", multiplier_action(8, u, 2)});
  const FiniteGroup v4 = direct_product(cyclic(2), cyclic(2));
  out.push_back({"swap on Z/2 x Z/2",
                 action_from_generator_images(cyclic(2), v4, {1}, {{0, 2, 1, 3}})});
  out.push_back({"order 3 on Z/2 x Z/2",
                 action_from_generator_images(cyclic(3), v4, {1}, {{0, 2, 3, 1}})});
  out.push_back({"x -> 2x on Z/7", multiplier_action(7, 2, 3)});
  out.push_back({"trivial Z/2 on Z/2 x Z/2", GroupAction::trivial(cyclic(2), v4)});
  return out;
}

struct NamedModule {
  std::string name;
  QGModule module;
};

/// Q-G modules used for the HH^0 and HH^1 cross-checks.
inline auto suite_modules() -> std::vector<NamedModule> {
  std::vector<NamedModule> out;
  const GroupAction inv3 = inversion_action(cyclic(3));
  out.push_back({"Z/2 on Z/3, M = Z/3 trivial", QGModule::trivial(inv3, FinAb::cyclic(3))});
  out.push_back({"Z/2 on Z/5, M = Z/5 trivial",
                 QGModule::trivial(inversion_action(cyclic(5)), FinAb::cyclic(5))});
  out.push_back({"trivial Q on Z/3, M = Z/3",
                 QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(3)), FinAb::cyclic(3))});
  out.push_back({"Z/2 on Z/3, M = Z/9 with Q by negation",
                 {inv3, FinAb::cyclic(9), std::vector<IntMatrix>(3, IntMatrix{{1}}),
                  {IntMatrix{{1}}, IntMatrix{{-1}}}}});
  out.push_back({"Z/2 on Z/3, M = Z/3 with Q by negation",
                 {inv3, FinAb::cyclic(3), std::vector<IntMatrix>(3, IntMatrix{{1}}),
                  {IntMatrix{{1}}, IntMatrix{{-1}}}}});
  out.push_back({"Z/2 acting on M = Z by negation, trivial Q",
                 {GroupAction::trivial(cyclic(2), cyclic(2)), FinAb::free(1),
                  {IntMatrix{{1}}, IntMatrix{{-1}}}, {IntMatrix{{1}}, IntMatrix{{1}}}}});
  return out;
}

struct SuiteCheck {
  std::string case_name;
  std::string label;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  std::string only_case;       // empty runs everything
  std::size_t max_degree = 4;  // highest degree examined
};

/// Case names, in battery order.
inline auto suite_case_names() -> std::vector<std::string> {
  return {"dihedral", "invariant-table", "theorem2", "remark", "theorem1", "theorem8",
          "diagram", "hh", "extensions", "laurent"};
}

namespace detail {

inline auto join_divisors(const std::vector<IntVector>& ds) -> std::string {
  std::string s;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) s += ", ";
    s += divisors_to_string(ds[i]);
  }
  return s;
}

inline auto expect_divisors(const std::vector<IntVector>& got, const std::vector<IntVector>& want)
    -> SuiteCheck {
  SuiteCheck c;
  std::vector<IntVector> w(want.begin(), want.begin() + static_cast<long>(got.size()));
  c.passed = got == w;
  c.detail = "got " + join_divisors(got) + "; expected " + join_divisors(w);
  return c;
}

inline auto divs(std::initializer_list<std::initializer_list<long>> rows) -> std::vector<IntVector> {
  std::vector<IntVector> out;
  for (const auto& r : rows) {
    IntVector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

inline auto run_verification(const SuiteOptions& opt) -> std::vector<SuiteCheck> {
  std::vector<SuiteCheck> out;
  const std::size_t top = opt.max_degree;
  auto wanted = [&](const std::string& name) { return opt.only_case.empty() || opt.only_case == name; };
  auto add = [&](const std::string& cs, const std::string& label, SuiteCheck c) {
    c.case_name = cs;
    c.label = label;
    out.push_back(std::move(c));
  };
  auto flag = [](bool ok, std::string detail = {}) {
    SuiteCheck c;
    c.passed = ok;
    c.detail = std::move(detail);
    return c;
  };
  const std::size_t top4 = std::min<std::size_t>(top, 4), top3 = std::min<std::size_t>(top, 3);

  if (wanted("dihedral")) {
    add("dihedral", "H_q(D6, Z)",
        detail::expect_divisors(ordinary_homology_divisors(dihedral(3), 0, top4),
                                detail::divs({{0}, {2}, {}, {6}, {}})));
    add("dihedral", "H_q(D10, Z)",
        detail::expect_divisors(ordinary_homology_divisors(dihedral(5), 0, top4),
                                detail::divs({{0}, {2}, {}, {10}, {}})));
  }

  struct TableCase {
    std::size_t n;
    long m;
  };
  const std::vector<TableCase> table = {{3, 9}, {3, 3}, {4, 3}, {5, 5}};
  if (wanted("invariant-table")) {
    for (auto [n, m] : table) {
      const long g = std::gcd(static_cast<long>(n), m);
      std::vector<IntVector> want = {IntVector{m}, {}, {}, {}, {}};
      if (g > 1) want[3] = want[4] = IntVector{g};
      add("invariant-table",
          "H_q^Z/2(Z/" + std::to_string(n) + ", Z/" + std::to_string(m) + ")",
          detail::expect_divisors(invariant_homology_divisors(inversion_action(cyclic(n)), m, top4),
                                  want));
    }
  }

  if (wanted("theorem2")) {
    for (auto [n, m] : table) {
      if (m % 2 == 0) continue;
      for (const auto& r : theorem2_check(inversion_action(cyclic(n)), m, top3))
        add("theorem2",
            "Z/" + std::to_string(n) + ", Z/" + std::to_string(m) + ", q = " +
                std::to_string(r.degree),
            flag(r.hypothesis_holds && r.equal, divisors_to_string(r.invariant_divisors) + " vs " +
                                                    divisors_to_string(r.semidirect_divisors)));
    }
  }

  if (wanted("remark")) {
    const GroupAction a = inversion_action(cyclic(3));
    add("remark", "H_q^Z/2(Z/3, Z) pattern",
        detail::expect_divisors(invariant_homology_divisors(a, 0, top4),
                                detail::divs({{0}, {}, {}, {3}, {}})));
    if (top >= 1) {
      auto r = theorem2_check(a, 0, 1).at(1);
      add("remark", "invariant H_1 differs from H_1(D6, Z) without invertibility",
          flag(!r.hypothesis_holds && !r.equal && r.invariant_divisors.empty() &&
                   r.semidirect_divisors == IntVector{2},
               divisors_to_string(r.invariant_divisors) + " vs " +
                   divisors_to_string(r.semidirect_divisors)));
    }
  }

  if (wanted("theorem1")) {
    for (auto [n, m] : table) {
      const GroupAction a = inversion_action(cyclic(n));
      for (std::size_t q = 0; q <= top3; ++q) {
        auto t1 = theorem1_check(a, m, q);
        auto nm = coinvariants_norm_check(a, m, q);
        const std::string where =
            "Z/" + std::to_string(n) + ", Z/" + std::to_string(m) + ", q = " + std::to_string(q);
        add("theorem1", "i_* iso, " + where,
            flag(t1.hypothesis_holds && t1.lands_in_fixed && t1.is_isomorphism,
                 divisors_to_string(t1.invariant_divisors) + " -> " +
                     divisors_to_string(t1.fixed_divisors)));
        add("theorem1", "norm iso, " + where,
            flag(nm.hypothesis_holds && nm.is_isomorphism,
                 divisors_to_string(nm.coinvariant_divisors) + " -> " +
                     divisors_to_string(nm.invariant_divisors)));
      }
    }
  }

  if (wanted("theorem8") && top >= 1) {
    for (const auto& [name, a] : suite_actions()) {
      FinAb w = weighed_abelianization(a);
      FinAb h = invariant_homology(a, 0, 1);
      add("theorem8", name,
          flag(w.divisors() == h.divisors(), w.to_string() + " vs " + h.to_string()));
    }
  }

  if (wanted("diagram")) {
    for (const auto& [name, a] : suite_actions()) {
      ComparisonReport r = comparison_hom(a);
      add("diagram", name,
          flag(r.well_defined && r.diagram_commutes && r.annihilation && r.orbit.orbits_identified,
               std::string("injective ") + (r.injective ? "yes" : "no") + ", surjective " +
                   (r.surjective ? "yes" : "no")));
    }
  }

  if (wanted("hh")) {
    for (std::size_t p : {3, 5}) {
      const GroupAction a = inversion_action(cyclic(p));
      const FinAb coeff = FinAb::cyclic(static_cast<long>(p));
      const QGModule m = QGModule::trivial(a, coeff);
      for (std::size_t n = 0; n <= top3; ++n) {
        auto fp = hh_versus_fixed_cohomology(m, n);
        FinAb kn = knudson_cohomology(a, coeff, n);
        const std::string where = "Z/" + std::to_string(p) + ", n = " + std::to_string(n);
        add("hh", "HH^n = H^n(G, M)^Q, " + where,
            flag(fp.lands_in_fixed && fp.is_isomorphism,
                 divisors_to_string(fp.hh_divisors) + " vs " + divisors_to_string(fp.fixed_divisors)));
        add("hh", "HH^n = Knudson H^n_Q, " + where,
            flag(fp.hh_divisors == kn.divisors(),
                 divisors_to_string(fp.hh_divisors) + " vs " + kn.to_string()));
      }
    }
    for (const auto& [name, m] : suite_modules()) {
      FinAb hh0 = hh_cohomology(m, 0), fixed = invariants_of_invariants(m);
      add("hh", "HH^0 = (M^G)^Q, " + name,
          flag(hh0.divisors() == fixed.divisors(), hh0.to_string() + " vs " + fixed.to_string()));
      if (top >= 1) {
        FinAb hh1 = hh_cohomology(m, 1), der = derivations(m).quotient.group;
        add("hh", "HH^1 = Der_Q / IDer_Q, " + name,
            flag(hh1.divisors() == der.divisors(), hh1.to_string() + " vs " + der.to_string()));
      }
    }
  }

  if (wanted("extensions")) {
    const QGModule k =
        QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(2)), FinAb::cyclic(2));
    Classification cl = classify(k);
    add("extensions", "HH^2 for K = H = Z/2", flag(cl.group.divisors() == IntVector{2}, cl.group.to_string()));
    if (cl.generators.size() == 1) {
      Extension split = build_extension(FactorSet::zero(k));
      Extension twisted = build_extension(cl.generators[0]);
      add("extensions", "zero class builds Z/2 x Z/2",
          flag(split.checks.all() && are_isomorphic(split.group, direct_product(cyclic(2), cyclic(2)))));
      add("extensions", "generator builds Z/4",
          flag(twisted.checks.all() && are_isomorphic(twisted.group, cyclic(4))));
      add("extensions", "the two classes are not equivalent",
          flag(!are_equivalent(FactorSet::zero(k), cl.generators[0]).has_value()));
    }
  }

  if (wanted("laurent")) {
    ResolutionCheck rc = check_resolution(12, 8);
    add("laurent", "resolution is an equivariant complex", flag(rc.all()));
    std::vector<IntVector> hh;
    for (std::size_t n = 0; n <= top4; ++n) hh.push_back(hh_z2_on_z(n).divisors());
    add("laurent", "HH^n_Z/2(Z, Z)", detail::expect_divisors(hh, detail::divs({{0}, {}, {2}, {}, {2}})));
    if (top >= 2) {
      Integer count = extension_class_count();
      add("laurent", "extension classes", flag(count == 2, to_string(count)));
    }
  }
  return out;
}

}  // namespace eqhom
