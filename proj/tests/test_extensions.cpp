#include "eqhom/extensions.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace eqhom;

namespace {

struct Instance {
  std::string name;
  QGModule k;  // rank one, K = Z/p
  long p;
};

auto scalar_module(const GroupAction& a, long p, const std::vector<long>& h_sc,
                   const std::vector<long>& q_sc) -> QGModule {
  QGModule m{a, FinAb::cyclic(p), {}, {}};
  for (long s : h_sc) m.g_act.push_back(IntMatrix{{s}});
  for (long s : q_sc) m.q_act.push_back(IntMatrix{{s}});
  return m;
}

auto instances() -> std::vector<Instance> {
  const GroupAction t2 = GroupAction::trivial(cyclic(1), cyclic(2));
  const GroupAction t3 = GroupAction::trivial(cyclic(1), cyclic(3));
  const GroupAction t4 = GroupAction::trivial(cyclic(1), cyclic(4));
  const GroupAction inv3 = inversion_action(cyclic(3));
  const GroupAction inv4 = inversion_action(cyclic(4));
  const GroupAction swap = action_from_generator_images(
      cyclic(2), direct_product(cyclic(2), cyclic(2)), {1}, {{0, 2, 1, 3}});
  return {
      {"Z/2 by Z/2", scalar_module(t2, 2, {1, 1}, {1}), 2},
      {"Z/2 by Z/4, sign action", scalar_module(t2, 4, {1, -1}, {1}), 4},
      {"Z/3 by Z/9", scalar_module(t3, 9, {1, 1, 1}, {1}), 9},
      {"Z/4 by Z/2", scalar_module(t4, 2, {1, 1, 1, 1}, {1}), 2},
      {"Z/4 by Z/4", scalar_module(t4, 4, {1, 1, 1, 1}, {1}), 4},
      {"inversion on Z/3, K = Z/3", scalar_module(inv3, 3, {1, 1, 1}, {1, 1}), 3},
      {"inversion on Z/3, K = Z/3 negated", scalar_module(inv3, 3, {1, 1, 1}, {1, -1}), 3},
      {"inversion on Z/4, K = Z/2", scalar_module(inv4, 2, {1, 1, 1, 1}, {1, 1}), 2},
      {"swap on V4, K = Z/2", scalar_module(swap, 2, {1, 1, 1, 1}, {1, 1}), 2},
  };
}

auto mod(long x, long p) -> long { return ((x % p) + p) % p; }

// Normalized Q-equivariant 2-cocycles and coboundaries of equivariant
// normalized 1-cochains, by exhaustive search over value tables.
struct BruteClasses {
  std::vector<std::vector<long>> cocycles;  // flattened x + n y
  std::set<std::vector<long>> coboundaries;
};

auto brute_classes(const Instance& in) -> BruteClasses {
  const QGModule& k = in.k;
  const FiniteGroup& h = k.g_group();
  const std::size_t n = h.order();
  const long p = in.p;
  auto hs = [&](Element x) { return k.g_act[x](0, 0).get_si(); };
  auto qs = [&](Element q) { return k.q_act[q](0, 0).get_si(); };
  BruteClasses out;
  oracle::for_each_vector((n - 1) * (n - 1), p, [&](const std::vector<long>& free) {
    std::vector<long> f(n * n, 0);
    for (std::size_t x = 1; x < n; ++x)
      for (std::size_t y = 1; y < n; ++y) f[x + n * y] = free[(x - 1) + (n - 1) * (y - 1)];
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = 0; z < n; ++z)
          if (mod(hs(x) * f[y + n * z] - f[h.mul(x, y) + n * z] + f[x + n * h.mul(y, z)] - f[x + n * y],
                  p) != 0)
            return;
    for (Element q = 0; q < k.q_group().order(); ++q)
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (mod(f[k.action.act(q, x) + n * k.action.act(q, y)] - qs(q) * f[x + n * y], p) != 0) return;
    out.cocycles.push_back(f);
  });
  oracle::for_each_vector(n - 1, p, [&](const std::vector<long>& free) {
    std::vector<long> c(n, 0);
    for (std::size_t x = 1; x < n; ++x) c[x] = free[x - 1];
    for (Element q = 0; q < k.q_group().order(); ++q)
      for (Element x = 0; x < n; ++x)
        if (mod(c[k.action.act(q, x)] - qs(q) * c[x], p) != 0) return;
    std::vector<long> d(n * n);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) d[x + n * y] = mod(hs(x) * c[y] - c[h.mul(x, y)] + c[x], p);
    out.coboundaries.insert(d);
  });
  return out;
}

auto to_factor_set(const QGModule& k, const std::vector<long>& f) -> FactorSet {
  FactorSet fs = FactorSet::zero(k);
  const std::size_t n = k.g_group().order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) fs.values[x][y] = IntVector{Integer(f[x + n * y])};
  return fs;
}

auto z2_by_z2() -> QGModule {
  return scalar_module(GroupAction::trivial(cyclic(1), cyclic(2)), 2, {1, 1}, {1});
}

// The carry cocycle for Z/n: f(x, y) = 1 when x + y >= n.
auto carry(const QGModule& k, std::size_t n) -> FactorSet {
  FactorSet f = FactorSet::zero(k);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) f.values[x][y] = IntVector{Integer(x + y >= n ? 1 : 0)};
  return f;
}

}  // namespace

TEST(FactorSets, ZeroIsValid) {
  for (const auto& in : instances()) EXPECT_TRUE(validate_factor_set(FactorSet::zero(in.k)).valid);
}

TEST(FactorSets, CarryCocycleIsValid) {
  EXPECT_TRUE(validate_factor_set(carry(z2_by_z2(), 2)).valid);
}

TEST(FactorSets, UnnormalizedRejected) {
  FactorSet f = FactorSet::zero(z2_by_z2());
  f.values[0][1] = IntVector{Integer(1)};
  auto r = validate_factor_set(f);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.violations.front().find("normalization"), std::string::npos);
}

TEST(FactorSets, CocycleFailureRejected) {
  QGModule k = scalar_module(GroupAction::trivial(cyclic(1), cyclic(3)), 3, {1, 1, 1}, {1});
  FactorSet f = FactorSet::zero(k);
  f.values[1][1] = IntVector{Integer(1)};
  EXPECT_FALSE(validate_factor_set(f).valid);
  EXPECT_THROW(build_extension(f), InvalidInput);
}

TEST(FactorSets, EquivarianceFailureRejected) {
  // Inversion on Z/3 with trivial K: f(1,1) must equal f(2,2).
  QGModule k = scalar_module(inversion_action(cyclic(3)), 3, {1, 1, 1}, {1, 1});
  FactorSet f = FactorSet::zero(k);
  f.values[1][1] = IntVector{Integer(1)};
  f.values[1][2] = IntVector{Integer(1)};
  f.values[2][1] = IntVector{Integer(1)};
  f.values[2][2] = IntVector{Integer(0)};
  auto r = validate_factor_set(f);
  EXPECT_FALSE(r.valid);
}

TEST(FactorSets, WrongShapeRejected) {
  FactorSet f = FactorSet::zero(z2_by_z2());
  f.values.pop_back();
  EXPECT_THROW(validate_factor_set(f), InvalidInput);
}

TEST(FactorSets, CochainRoundTrip) {
  FactorSet f = carry(z2_by_z2(), 2);
  FactorSet g = FactorSet::from_cochain(f.module, f.as_cochain());
  EXPECT_EQ(g.values, f.values);
}

TEST(BuildExtension, SplitExtensionOfZ2ByZ2IsKleinFour) {
  Extension e = build_extension(FactorSet::zero(z2_by_z2()));
  EXPECT_TRUE(e.checks.all());
  EXPECT_EQ(oracle::order_profile(e.group), (std::vector<std::size_t>{1, 2, 2, 2}));
}

TEST(BuildExtension, CarryExtensionOfZ2ByZ2IsCyclic) {
  Extension e = build_extension(carry(z2_by_z2(), 2));
  EXPECT_TRUE(e.checks.all());
  EXPECT_TRUE(oracle::isomorphic_by_bijection(e.group, cyclic(4)));
}

TEST(BuildExtension, SignActionGivesDihedralGroup) {
  QGModule k = scalar_module(GroupAction::trivial(cyclic(1), cyclic(2)), 4, {1, -1}, {1});
  Extension split = build_extension(FactorSet::zero(k));
  EXPECT_TRUE(oracle::isomorphic_by_bijection(split.group, dihedral(4)));
  FactorSet f = FactorSet::zero(k);
  f.values[1][1] = IntVector{Integer(2)};
  Extension quat = build_extension(f);
  // The quaternion group: one element of order 2.
  EXPECT_EQ(oracle::order_profile(quat.group), (std::vector<std::size_t>{1, 2, 4, 4, 4, 4, 4, 4}));
}

TEST(BuildExtension, QActsByAutomorphismsWithEquivariantSection) {
  QGModule k = scalar_module(inversion_action(cyclic(3)), 3, {1, 1, 1}, {1, -1});
  Extension e = build_extension(FactorSet::zero(k));
  ASSERT_EQ(e.q_action.size(), 2u);
  for (const auto& phi : e.q_action)
    for (Element u = 0; u < e.group.order(); ++u)
      for (Element w = 0; w < e.group.order(); ++w)
        EXPECT_EQ(phi[e.group.mul(u, w)], e.group.mul(phi[u], phi[w]));
  for (Element x = 0; x < 3; ++x) EXPECT_EQ(e.q_action[1][e.section[x]], e.section[(3 - x) % 3]);
  EXPECT_TRUE(e.free_action);
}

TEST(BuildExtension, EveryBruteForceCocycleBuildsAGroup) {
  for (const auto& in : instances()) {
    BruteClasses b = brute_classes(in);
    for (std::size_t i = 0; i < b.cocycles.size(); i += std::max<std::size_t>(1, b.cocycles.size() / 6)) {
      Extension e = build_extension(to_factor_set(in.k, b.cocycles[i]));
      EXPECT_TRUE(e.checks.all()) << in.name;
      EXPECT_EQ(e.group.order(), in.k.g_group().order() * static_cast<std::size_t>(in.p));
    }
  }
}

TEST(Equivalence, CoboundaryShiftIsEquivalent) {
  QGModule k = scalar_module(GroupAction::trivial(cyclic(1), cyclic(4)), 4, {1, 1, 1, 1}, {1});
  FactorSet f = carry(k, 4);
  std::vector<IntVector> c = {IntVector{Integer(0)}, IntVector{Integer(1)}, IntVector{Integer(3)},
                              IntVector{Integer(2)}};
  FactorSet g = subtract_coboundary(f, c);
  auto found = are_equivalent(f, g);
  ASSERT_TRUE(found.has_value());
  // f - g = d(found), checked through subtract_coboundary.
  FactorSet back = subtract_coboundary(f, *found);
  RelationView v = relation_view(k.underlying);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      EXPECT_TRUE(v.contains(detail::vec_sub(back.values[x][y], g.values[x][y])));
}

TEST(Equivalence, CarryAndZeroAreNotEquivalent) {
  EXPECT_FALSE(are_equivalent(carry(z2_by_z2(), 2), FactorSet::zero(z2_by_z2())).has_value());
}

TEST(Equivalence, ExplicitIsomorphismOfExtensions) {
  // With f1 - f2 = dc the map (a, x) -> (a + c(x), x) carries E_f1 onto E_f2
  // and commutes with the Q-actions.
  QGModule k = scalar_module(inversion_action(cyclic(3)), 3, {1, 1, 1}, {1, -1});
  BruteClasses b = brute_classes({"", k, 3});
  ASSERT_GE(b.cocycles.size(), 2u);
  FactorSet f1 = to_factor_set(k, b.cocycles[0]);
  for (const auto& other : b.cocycles) {
    FactorSet f2 = to_factor_set(k, other);
    auto c = are_equivalent(f1, f2);
    if (!c) continue;
    Extension e1 = build_extension(f1), e2 = build_extension(f2);
    std::vector<Element> psi(e1.group.order());
    for (Element u = 0; u < psi.size(); ++u) {
      const std::size_t a = u % 3, x = u / 3;
      psi[u] = static_cast<Element>(mod(static_cast<long>(a) + (*c)[x][0].get_si(), 3)) + 3 * x;
    }
    for (Element u = 0; u < psi.size(); ++u)
      for (Element w = 0; w < psi.size(); ++w)
        EXPECT_EQ(psi[e1.group.mul(u, w)], e2.group.mul(psi[u], psi[w]));
    for (Element q = 0; q < 2; ++q)
      for (Element u = 0; u < psi.size(); ++u) EXPECT_EQ(psi[e1.q_action[q][u]], e2.q_action[q][psi[u]]);
  }
}

TEST(Equivalence, AgreesWithBruteForceCoboundaries) {
  for (const auto& in : instances()) {
    BruteClasses b = brute_classes(in);
    if (b.cocycles.size() > 16) continue;
    for (const auto& f : b.cocycles)
      for (const auto& g : b.cocycles) {
        std::vector<long> diff(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) diff[i] = mod(f[i] - g[i], in.p);
        const bool expect = b.coboundaries.count(diff) > 0;
        EXPECT_EQ(are_equivalent(to_factor_set(in.k, f), to_factor_set(in.k, g)).has_value(), expect)
            << in.name;
      }
  }
}

TEST(Classification, OrderMatchesBruteForceQuotient) {
  for (const auto& in : instances()) {
    BruteClasses b = brute_classes(in);
    Classification cl = classify(in.k);
    ASSERT_TRUE(cl.group.is_finite());
    EXPECT_EQ(*cl.group.order(), b.cocycles.size() / b.coboundaries.size()) << in.name;
  }
}

TEST(Classification, ExamplesOfCyclicGroups) {
  EXPECT_EQ(classify(z2_by_z2()).group.divisors(), IntVector{2});
  QGModule k = scalar_module(GroupAction::trivial(cyclic(1), cyclic(4)), 2, {1, 1, 1, 1}, {1});
  EXPECT_EQ(classify(k).group.divisors(), IntVector{2});
  QGModule inv = scalar_module(inversion_action(cyclic(3)), 3, {1, 1, 1}, {1, 1});
  EXPECT_TRUE(classify(inv).group.is_trivial());
}

TEST(Classification, GeneratorsAreValidAndRepresentTheirClass) {
  for (const auto& in : instances()) {
    Classification cl = classify(in.k);
    for (std::size_t j = 0; j < cl.generators.size(); ++j) {
      EXPECT_TRUE(validate_factor_set(cl.generators[j]).valid) << in.name;
      IntVector coords(cl.generators.size());
      coords[j] = 1;
      EXPECT_EQ(cl.class_of(cl.generators[j]), coords);
      EXPECT_TRUE(are_equivalent(cl.representative(coords), cl.generators[j]).has_value());
    }
  }
}

TEST(Classification, ClassOfDetectsEquivalence) {
  for (const auto& in : instances()) {
    BruteClasses b = brute_classes(in);
    if (b.cocycles.size() > 16) continue;
    Classification cl = classify(in.k);
    for (const auto& f : b.cocycles)
      for (const auto& g : b.cocycles) {
        FactorSet ff = to_factor_set(in.k, f), gg = to_factor_set(in.k, g);
        EXPECT_EQ(cl.class_of(ff) == cl.class_of(gg), are_equivalent(ff, gg).has_value());
      }
  }
}

TEST(Classification, FreeActionFlag) {
  EXPECT_TRUE(classify(scalar_module(inversion_action(cyclic(3)), 3, {1, 1, 1}, {1, 1})).free_action);
  EXPECT_FALSE(classify(scalar_module(inversion_action(cyclic(4)), 2, {1, 1, 1, 1}, {1, 1})).free_action);
}
