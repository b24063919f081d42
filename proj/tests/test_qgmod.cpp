#include "eqhom/qg_module.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace eqhom;

namespace {

auto m1(long x) -> IntMatrix { return IntMatrix{{x}}; }

// Z/p with G and Q acting through the given scalars.
auto scalar_module(const GroupAction& a, long p, const std::vector<long>& g_sc,
                   const std::vector<long>& q_sc) -> QGModule {
  QGModule m{a, FinAb::cyclic(p), {}, {}};
  for (long s : g_sc) m.g_act.push_back(m1(s));
  for (long s : q_sc) m.q_act.push_back(m1(s));
  return m;
}

struct BruteDer {
  std::size_t derivations = 0;
  std::size_t inner = 0;
};

// Rank-one modules over Z/p: every function G -> Z/p is tried.
auto brute_derivations(const QGModule& m, long p) -> BruteDer {
  const FiniteGroup& g = m.g_group();
  const FiniteGroup& q = m.q_group();
  auto act = [&](const IntMatrix& e, long x) { return ((e(0, 0).get_si() * x) % p + p) % p; };
  BruteDer out;
  oracle::for_each_vector(g.order(), p, [&](const std::vector<long>& f) {
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        if (f[g.mul(a, b)] != (f[a] + act(m.g_act[a], f[b])) % p) return;
    for (Element x = 0; x < q.order(); ++x)
      for (Element a = 0; a < g.order(); ++a)
        if (f[m.action.act(x, a)] != act(m.q_act[x], f[a])) return;
    ++out.derivations;
  });
  std::set<std::vector<long>> inner;
  for (long v = 0; v < p; ++v) {
    bool q_fixed = true;
    for (Element x = 0; x < q.order(); ++x) q_fixed &= act(m.q_act[x], v) == v;
    if (!q_fixed) continue;
    std::vector<long> f(g.order());
    for (Element a = 0; a < g.order(); ++a) f[a] = ((act(m.g_act[a], v) - v) % p + p) % p;
    inner.insert(f);
  }
  out.inner = inner.size();
  return out;
}

auto finite_rank_one_modules() -> std::vector<std::pair<QGModule, long>> {
  const GroupAction inv3 = inversion_action(cyclic(3));
  const GroupAction inv4 = inversion_action(cyclic(4));
  const GroupAction triv = GroupAction::trivial(cyclic(2), cyclic(2));
  return {
      {scalar_module(inv3, 3, {1, 1, 1}, {1, 1}), 3},
      {scalar_module(inv3, 3, {1, 1, 1}, {1, -1}), 3},
      {scalar_module(inv4, 4, {1, 1, 1, 1}, {1, -1}), 4},
      {scalar_module(inv4, 5, {1, -1, 1, -1}, {1, 1}), 5},
      {scalar_module(triv, 3, {1, -1}, {1, -1}), 3},
      {scalar_module(GroupAction::trivial(cyclic(1), cyclic(3)), 3, {1, 1, 1}, {1}), 3},
  };
}

}  // namespace

TEST(Validation, TrivialModuleIsValid) {
  auto m = QGModule::trivial(inversion_action(cyclic(3)), FinAb::free(2));
  EXPECT_TRUE(validate(m).valid);
}

TEST(Validation, WrongMatrixCountRejected) {
  QGModule m = QGModule::trivial(inversion_action(cyclic(3)), FinAb::free(1));
  m.g_act.pop_back();
  auto r = validate(m);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(r.violations.empty());
}

TEST(Validation, NonHomomorphismRejected) {
  QGModule m = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(2)), FinAb::free(1));
  m.g_act[1] = m1(2);
  EXPECT_FALSE(validate(m).valid);
}

TEST(Validation, RelationViolationRejected) {
  // On Z/2 + Z/4 the first generator would go to an element of order 4.
  QGModule m = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(2)),
                                 FinAb::from_orders({Integer(2), Integer(4)}));
  m.g_act[1] = IntMatrix{{1, 0}, {1, 1}};
  EXPECT_FALSE(validate(m).valid);
}

TEST(Validation, IncompatibleActionsRejected) {
  // G = Z/2 acting by a swap, Q = Z/2 acting by a sign change on one
  // coordinate, Q acting trivially on G. The two matrices do not commute.
  const IntMatrix a{{0, 1}, {1, 0}}, b{{-1, 0}, {0, 1}};
  ASSERT_NE(a * b, b * a);
  QGModule m{GroupAction::trivial(cyclic(2), cyclic(2)), FinAb::free(2),
             {IntMatrix::identity(2), a}, {IntMatrix::identity(2), b}};
  auto r = validate(m);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.violations.front().find("compatibility"), std::string::npos);
  EXPECT_THROW(require_valid(m, "test"), InvalidInput);
}

TEST(Validation, CompatibilityAgreesWithDirectCheck) {
  // All pairs of sign matrices on Z^2 with G and Q both Z/2 acting
  // trivially on each other: valid exactly when the matrices commute.
  const std::vector<IntMatrix> cands = {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, 1}},
                                        IntMatrix{{-1, 0}, {0, -1}}, IntMatrix{{0, -1}, {-1, 0}}};
  for (const auto& a : cands)
    for (const auto& b : cands) {
      QGModule m{GroupAction::trivial(cyclic(2), cyclic(2)), FinAb::free(2),
                 {IntMatrix::identity(2), a}, {IntMatrix::identity(2), b}};
      EXPECT_EQ(validate(m).valid, a * b == b * a);
    }
}

TEST(SemidirectModules, RoundTrip) {
  const GroupAction a = inversion_action(cyclic(3));
  QGModule m = scalar_module(a, 9, {1, 1, 1}, {1, -1});
  SemidirectModule s = to_semidirect_module(m);
  EXPECT_TRUE(s.is_module());
  EXPECT_EQ(s.act.size(), 6u);
  QGModule back = from_semidirect_module(a, s);
  EXPECT_EQ(back.g_act, m.g_act);
  EXPECT_EQ(back.q_act, m.q_act);
}

TEST(SemidirectModules, ProductActionIsMultiplicative) {
  const GroupAction a = inversion_action(cyclic(4));
  QGModule m = scalar_module(a, 0, {1, -1, 1, -1}, {1, -1});
  SemidirectModule s = to_semidirect_module(m);
  const FiniteGroup& e = s.product.group;
  for (Element x = 0; x < e.order(); ++x)
    for (Element y = 0; y < e.order(); ++y) EXPECT_EQ(s.act[e.mul(x, y)], s.act[x] * s.act[y]);
}

TEST(Freeness, BarModulesUnderInversionOnZ3) {
  const GroupAction a = inversion_action(cyclic(3));
  EXPECT_FALSE(is_free_permutation_module(a.q_group(), bar_module_basis_action(a, 0)));
  EXPECT_TRUE(is_free_permutation_module(a.q_group(), bar_module_basis_action(a, 1)));
  EXPECT_TRUE(is_free_permutation_module(a.q_group(), bar_module_basis_action(a, 2)));
}

TEST(Freeness, SelfInverseElementBreaksFreeness) {
  const GroupAction a = inversion_action(cyclic(4));
  EXPECT_FALSE(is_free_permutation_module(a.q_group(), bar_module_basis_action(a, 1)));
}

TEST(Freeness, RejectsNonAction) {
  EXPECT_THROW(is_free_permutation_module(cyclic(2), {{0, 1}, {0, 0}}), InvalidInput);
  EXPECT_THROW(is_free_permutation_module(cyclic(2), {{1, 0}, {0, 1}}), InvalidInput);
}

TEST(Cochains, DifferentialSquaresToZero) {
  QGModule m = scalar_module(GroupAction::trivial(cyclic(2), cyclic(2)), 0, {1, -1}, {1, 1});
  for (std::size_t n = 0; n < 3; ++n)
    EXPECT_TRUE((cochain_differential(m, n + 1) * cochain_differential(m, n)).is_zero());
  QGModule t = QGModule::trivial(inversion_action(cyclic(3)), FinAb::free(1));
  for (std::size_t n = 1; n < 3; ++n)
    EXPECT_TRUE((chain_differential(t, n) * chain_differential(t, n + 1)).is_zero());
}

TEST(Cochains, QActionCommutesWithDifferential) {
  QGModule m = scalar_module(inversion_action(cyclic(3)), 0, {1, 1, 1}, {1, -1});
  for (std::size_t n = 0; n < 3; ++n)
    EXPECT_EQ(cochain_differential(m, n) * cochain_q_action(m, 1, n),
              cochain_q_action(m, 1, n + 1) * cochain_differential(m, n));
}

TEST(InvariantCohomology, DegreeZeroIsDoubleInvariants) {
  for (const auto& [m, p] : finite_rank_one_modules()) {
    FinAb hh0 = hh_cohomology(m, 0);
    EXPECT_TRUE(isomorphic(hh0, invariants_of_invariants(m)));
    std::size_t fixed = 0;
    for (long v = 0; v < p; ++v) {
      bool ok = true;
      for (const auto& e : m.g_act) ok &= ((e(0, 0).get_si() * v - v) % p) == 0;
      for (const auto& e : m.q_act) ok &= ((e(0, 0).get_si() * v - v) % p) == 0;
      fixed += ok;
    }
    EXPECT_EQ(*hh0.order(), fixed);
  }
}

TEST(InvariantCohomology, TrivialQFirstDegreeByEnumeration) {
  QGModule m = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(3)), FinAb::cyclic(3));
  EXPECT_EQ(hh_cohomology(m, 1).divisors(), IntVector{3});
  BruteDer b = brute_derivations(m, 3);
  EXPECT_EQ(b.derivations / b.inner, 3u);
}

TEST(InvariantCohomology, FirstDegreeMatchesEnumeratedDerivations) {
  for (const auto& [m, p] : finite_rank_one_modules()) {
    BruteDer b = brute_derivations(m, p);
    Derivations d = derivations(m);
    EXPECT_EQ(*d.derivations.group.order(), b.derivations);
    EXPECT_EQ(*d.inner.order(), b.inner);
    EXPECT_EQ(*hh_cohomology(m, 1).order(), b.derivations / b.inner);
    EXPECT_TRUE(isomorphic(d.quotient.group, hh_cohomology(m, 1)));
  }
}

TEST(InvariantCohomology, TrivialQRecoversOrdinaryCohomology) {
  for (long p : {2L, 3L}) {
    QGModule m = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(3)), FinAb::cyclic(p));
    auto ordinary = bar_complex(cyclic(3), p, 4).cohomology_divisors();
    for (std::size_t n = 0; n < 3; ++n) EXPECT_EQ(hh_cohomology(m, n).divisors(), ordinary[n]);
  }
  QGModule z = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(2)), FinAb::free(1));
  auto ordinary = bar_complex(cyclic(2), 0, 4).cohomology_divisors();
  for (std::size_t n = 0; n < 3; ++n) EXPECT_EQ(hh_cohomology(z, n).divisors(), ordinary[n]);
}

TEST(InvariantCohomology, ForgettingQGivesOrdinaryCohomology) {
  QGModule m = scalar_module(inversion_action(cyclic(3)), 3, {1, 1, 1}, {1, -1});
  auto ordinary = bar_complex(cyclic(3), 3, 3).cohomology_divisors();
  for (std::size_t n = 0; n < 2; ++n) EXPECT_EQ(hh_cohomology(forget_q(m), n).divisors(), ordinary[n]);
}

TEST(InvariantCohomology, FixedPointsOfOrdinaryCohomologyWhenInvertible) {
  for (std::size_t p : {3, 5}) {
    QGModule m = QGModule::trivial(inversion_action(cyclic(p)), FinAb::cyclic(static_cast<long>(p)));
    for (std::size_t n = 0; n <= 3; ++n) {
      auto r = hh_versus_fixed_cohomology(m, n);
      EXPECT_TRUE(r.lands_in_fixed);
      EXPECT_TRUE(r.is_isomorphism) << "p = " << p << ", n = " << n;
      EXPECT_EQ(r.hh_divisors, r.fixed_divisors);
    }
  }
}

TEST(InvariantCohomology, AgreesWithOrbitSumCohomologyForTrivialModules) {
  for (std::size_t p : {3, 5}) {
    const GroupAction a = inversion_action(cyclic(p));
    const FinAb coeff = FinAb::cyclic(static_cast<long>(p));
    QGModule m = QGModule::trivial(a, coeff);
    for (std::size_t n = 0; n <= 3; ++n)
      EXPECT_EQ(hh_cohomology(m, n).divisors(), knudson_cohomology(a, coeff, n).divisors());
  }
}

TEST(InvariantCohomology, OrbitSumCohomologyDegreeZero) {
  const GroupAction a = inversion_action(cyclic(4));
  EXPECT_EQ(knudson_cohomology(a, FinAb::free(1), 0).divisors(), IntVector{0});
  EXPECT_EQ(knudson_cohomology(a, FinAb::cyclic(6), 0).divisors(), IntVector{6});
}

TEST(InvariantCohomology, SubComplexIsAComplex) {
  QGModule m = scalar_module(inversion_action(cyclic(3)), 9, {1, 1, 1}, {1, -1});
  EXPECT_TRUE(invariant_cochain_complex(m, 3).is_complex());
  EXPECT_TRUE(invariant_chain_complex(m, 3).is_complex());
}

TEST(InvariantHomologyOfModules, TrivialQRecoversOrdinaryHomology) {
  QGModule m = QGModule::trivial(GroupAction::trivial(cyclic(1), cyclic(3)), FinAb::free(1));
  auto ordinary = ordinary_homology_divisors(cyclic(3), 0, 3);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(hh_homology(m, n).divisors(), ordinary[n]);
}

TEST(InvariantHomologyOfModules, InvertibleOrderMatchesOrbitSumHomology) {
  const GroupAction a = inversion_action(cyclic(3));
  QGModule m = QGModule::trivial(a, FinAb::cyclic(3));
  auto orbit_sum = invariant_homology_divisors(a, 3, 3);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(hh_homology(m, n).divisors(), orbit_sum[n]);
}

TEST(Derivations, IntegralSignModuleHasNoEquivariantDerivations) {
  // Z/2 acting on Z by -1, Q = Z/2 acting by -1 on Z and trivially on G.
  QGModule m = scalar_module(GroupAction::trivial(cyclic(2), cyclic(2)), 0, {1, -1}, {1, -1});
  Derivations d = derivations(m);
  EXPECT_TRUE(d.derivations.group.is_trivial());
  EXPECT_TRUE(d.quotient.group.is_trivial());
}

TEST(Derivations, IntegralSignModuleWithTrivialQ) {
  QGModule m = scalar_module(GroupAction::trivial(cyclic(2), cyclic(2)), 0, {1, -1}, {1, 1});
  Derivations d = derivations(m);
  EXPECT_EQ(d.derivations.group.divisors(), IntVector{0});
  EXPECT_EQ(d.quotient.group.divisors(), IntVector{2});
  EXPECT_EQ(hh_cohomology(m, 1).divisors(), IntVector{2});
}
