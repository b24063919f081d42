#include "eqhom/h1.hpp"
#include "eqhom/verification.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace eqhom;

TEST(Weighed, AgreesWithInvariantHomologyOnEverySuiteAction) {
  const auto actions = suite_actions();
  EXPECT_GE(actions.size(), 12u);
  for (const auto& [name, a] : actions)
    EXPECT_EQ(weighed_abelianization(a).divisors(), invariant_homology(a, 0, 1).divisors()) << name;
}

TEST(Weighed, InversionOnZ3IsZero) {
  EXPECT_TRUE(weighed_abelianization(inversion_action(cyclic(3))).is_trivial());
}

TEST(Weighed, TrivialQGivesAbelianization) {
  EXPECT_EQ(weighed_abelianization(GroupAction::trivial(cyclic(1), dihedral(3))).divisors(),
            IntVector{2});
  EXPECT_EQ(weighed_abelianization(GroupAction::trivial(cyclic(1), cyclic(6))).divisors(),
            IntVector{6});
}

TEST(Weighed, PresentationShape) {
  auto w = weighed_presentation(inversion_action(cyclic(5)));
  EXPECT_EQ(w.orbits.size(), 3u);
  EXPECT_EQ(w.isotropy_order[0], 2u);
  EXPECT_EQ(w.isotropy_order[1], 1u);
  EXPECT_EQ(w.orbit_of[1], w.orbit_of[4]);
  EXPECT_EQ(w.group.relations().cols(), 25u);
}

TEST(Weighed, RelationCoefficientsAreIsotropyRatios) {
  // Trivial Z/2 action on Z/2: every isotropy group is all of Q, so every
  // coefficient is 1 and the relations are those of the abelianization.
  auto w = weighed_presentation(GroupAction::trivial(cyclic(2), cyclic(2)));
  EXPECT_EQ(w.group.relations(), abelianization(cyclic(2)).relations());
}

TEST(Abelianization, SmallGroups) {
  EXPECT_EQ(abelianization(dihedral(3)).divisors(), IntVector{2});
  EXPECT_EQ(abelianization(dihedral(4)).divisors(), (IntVector{2, 2}));
  EXPECT_EQ(abelianization(cyclic(5)).divisors(), IntVector{5});
  EXPECT_TRUE(abelianization(cyclic(1)).is_trivial());
}

TEST(OrbitGroup, TrivialActionGivesG) {
  auto r = orbit_group(GroupAction::trivial(cyclic(2), dihedral(3)));
  EXPECT_TRUE(oracle::isomorphic_by_bijection(r.orbit_group, dihedral(3)));
  EXPECT_TRUE(r.orbits_identified);
}

TEST(OrbitGroup, InversionOnOddCyclicIsTrivial) {
  auto r = orbit_group(inversion_action(cyclic(5)));
  EXPECT_EQ(r.orbit_group.order(), 1u);
  EXPECT_TRUE(r.abelianization.is_trivial());
}

TEST(OrbitGroup, InversionOnZ4IsZ2) {
  auto r = orbit_group(inversion_action(cyclic(4)));
  EXPECT_EQ(r.orbit_group.order(), 2u);
  EXPECT_EQ(r.projection[1], r.projection[3]);
  EXPECT_NE(r.projection[0], r.projection[1]);
}

TEST(OrbitGroup, OrderMatchesBruteForceClosure) {
  for (const auto& [name, a] : suite_actions()) {
    auto r = orbit_group(a);
    const SemidirectProduct sp = semidirect_product(a);
    std::vector<Element> seeds;
    for (Element x = 0; x < a.g_group().order(); ++x)
      for (Element q = 0; q < a.q_group().order(); ++q)
        seeds.push_back(sp.embed_g(a.g_group().mul(x, a.g_group().inv(a.act(q, x)))));
    const std::size_t closure = oracle::normal_closure(sp.group, seeds).size();
    EXPECT_EQ(r.orbit_group.order() * closure, a.g_group().order()) << name;
    EXPECT_TRUE(r.orbits_identified) << name;
  }
}

TEST(OrbitGroup, ProjectionIsAHomomorphism) {
  for (const auto& [name, a] : suite_actions()) {
    auto r = orbit_group(a);
    const FiniteGroup& g = a.g_group();
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        EXPECT_EQ(r.projection[g.mul(x, y)], r.orbit_group.mul(r.projection[x], r.projection[y])) << name;
  }
}

TEST(Comparison, StructuralChecksOnSuite) {
  for (const auto& [name, a] : suite_actions()) {
    auto r = comparison_hom(a);
    EXPECT_TRUE(r.well_defined) << name;
    EXPECT_TRUE(r.diagram_commutes) << name;
    EXPECT_TRUE(r.annihilation) << name;
  }
}

TEST(Comparison, TrivialQIsAnIsomorphism) {
  auto r = comparison_hom(GroupAction::trivial(cyclic(1), cyclic(6)));
  EXPECT_TRUE(r.injective);
  EXPECT_TRUE(r.surjective);
}

TEST(Comparison, ZeroTargetForInversionOnZ3) {
  auto r = comparison_hom(inversion_action(cyclic(3)));
  EXPECT_TRUE(r.weighed.group.is_trivial());
  EXPECT_TRUE(r.surjective);
  EXPECT_TRUE(r.injective);
}

TEST(Comparison, NotInjectiveWhenIsotropyIsEverything) {
  // Trivial Z/2 action on Z/2: g maps to 2 [g] = 0.
  auto r = comparison_hom(GroupAction::trivial(cyclic(2), cyclic(2)));
  EXPECT_EQ(r.orbit.abelianization.divisors(), IntVector{2});
  EXPECT_FALSE(r.injective);
  EXPECT_FALSE(r.surjective);
}

TEST(Comparison, InversionOnZ2AndZ6) {
  EXPECT_FALSE(comparison_hom(inversion_action(cyclic(2))).injective);
  EXPECT_FALSE(comparison_hom(inversion_action(cyclic(6))).injective);
  EXPECT_TRUE(comparison_hom(inversion_action(cyclic(5))).injective);
}
