#pragma once

// First invariant homology H_1^Q(G, Z) through orbits: the weighed orbit
// abelianization, the orbit group G//Q, and the comparison map
// (G//Q)_ab -> H_1^Q(G, Z).

#include "eqhom/bar_complex.hpp"
#include "eqhom/finab.hpp"
#include "eqhom/finite_group.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

namespace eqhom {

/// Generators are the Q-orbits of G (ordered by smallest element); for each
/// ordered pair (g1, g2) there is the relation a[g2] - b[g1 g2] + c[g1] with
/// a = |Q_g2| / |Q_g1 n Q_g2|, b = |Q_g1g2| / |Q_g1 n Q_g2|, c = |Q_g1| / |Q_g1 n Q_g2|.
struct WeighedPresentation {
  std::vector<std::vector<Element>> orbits;
  std::vector<std::size_t> orbit_of;       // element -> generator
  std::vector<std::size_t> isotropy_order;  // element -> |Q_g|
  FinAb group;
};

inline auto weighed_presentation(const GroupAction& a) -> WeighedPresentation {
  const FiniteGroup& g = a.g_group();
  const std::size_t n = g.order();
  WeighedPresentation w;
  w.orbits = orbits(a);
  w.orbit_of.assign(n, 0);
  for (std::size_t k = 0; k < w.orbits.size(); ++k)
    for (Element x : w.orbits[k]) w.orbit_of[x] = k;
  std::vector<ElementSet> iso(n);
  for (Element x = 0; x < n; ++x) {
    iso[x] = isotropy(a, x);
    w.isotropy_order.push_back(iso[x].size());
  }
  IntMatrix rel(w.orbits.size(), n * n);
  for (Element g1 = 0; g1 < n; ++g1)
    for (Element g2 = 0; g2 < n; ++g2) {
      ElementSet both;
      std::set_intersection(iso[g1].begin(), iso[g1].end(), iso[g2].begin(), iso[g2].end(),
                            std::back_inserter(both));
      const std::size_t common = both.size();
      const Element g12 = g.mul(g1, g2);
      ensure(iso[g1].size() % common == 0 && iso[g2].size() % common == 0 &&
                 iso[g12].size() % common == 0,
             "weighed_presentation: isotropy orders are not multiples of the intersection");
      const std::size_t col = g1 + n * g2;
      rel(w.orbit_of[g2], col) += static_cast<long>(iso[g2].size() / common);
      rel(w.orbit_of[g12], col) -= static_cast<long>(iso[g12].size() / common);
      rel(w.orbit_of[g1], col) += static_cast<long>(iso[g1].size() / common);
    }
  w.group = FinAb(w.orbits.size(), rel);
  return w;
}

inline auto weighed_abelianization(const GroupAction& a) -> FinAb {
  return weighed_presentation(a).group;
}

/// Abelianization of a finite group from its regular presentation: one
/// generator per element, relations [x] + [y] - [xy].
inline auto abelianization(const FiniteGroup& g) -> FinAb {
  const std::size_t n = g.order();
  IntMatrix rel(n, n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const std::size_t col = x + n * y;
      rel(x, col) += 1;
      rel(y, col) += 1;
      rel(g.mul(x, y), col) -= 1;
    }
  return {n, rel};
}

struct OrbitGroupResult {
  SemidirectProduct product;
  std::vector<Element> commutators;  // [g, q] = g q(g)^{-1}, inside G x| Q
  ElementSet closure;                // normal closure of the commutators
  QuotientGroup quotient;            // (G x| Q) / closure
  ElementSet image;                  // image of G in the quotient
  FiniteGroup orbit_group;           // G//Q, elements numbered by position in `image`
  std::vector<Element> projection;   // G -> G//Q
  FinAb abelianization;              // (G//Q)_ab on the regular presentation
  bool orbits_identified = false;    // p(q(g)) = p(g) for all q, g
};

inline auto orbit_group(const GroupAction& a) -> OrbitGroupResult {
  const FiniteGroup& g = a.g_group();
  const FiniteGroup& q = a.q_group();
  OrbitGroupResult r{semidirect_product(a), {}, {}, {}, {}, {}, {}, {}, false};
  const FiniteGroup& e = r.product.group;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < q.order(); ++y) {
      // (x, e)(e, y)(x^{-1}, e)(e, y^{-1}) = (x y(x)^{-1}, e)
      Element c = e.mul(e.mul(r.product.embed_g(x), r.product.embed_q(y)),
                        e.mul(r.product.embed_g(g.inv(x)), r.product.embed_q(q.inv(y))));
      if (std::find(r.commutators.begin(), r.commutators.end(), c) == r.commutators.end())
        r.commutators.push_back(c);
    }
  std::sort(r.commutators.begin(), r.commutators.end());
  r.closure = normal_closure(e, r.commutators);
  r.quotient = quotient_group(e, r.closure);
  for (Element x = 0; x < g.order(); ++x) r.image.push_back(r.quotient.projection(r.product.embed_g(x)));
  std::sort(r.image.begin(), r.image.end());
  r.image.erase(std::unique(r.image.begin(), r.image.end()), r.image.end());
  const std::size_t k = r.image.size();
  auto pos = [&](Element z) {
    return static_cast<Element>(std::lower_bound(r.image.begin(), r.image.end(), z) - r.image.begin());
  };
  std::vector<std::vector<Element>> t(k, std::vector<Element>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i][j] = pos(r.quotient.group.mul(r.image[i], r.image[j]));
  r.orbit_group = FiniteGroup(t);
  for (Element x = 0; x < g.order(); ++x)
    r.projection.push_back(pos(r.quotient.projection(r.product.embed_g(x))));
  r.abelianization = abelianization(r.orbit_group);
  r.orbits_identified = true;
  for (Element y = 0; y < q.order(); ++y)
    for (Element x = 0; x < g.order(); ++x)
      if (r.projection[a.act(y, x)] != r.projection[x]) r.orbits_identified = false;
  return r;
}

struct ComparisonReport {
  OrbitGroupResult orbit;
  WeighedPresentation weighed;
  AbHom map;  // (G//Q)_ab -> H_1^Q(G, Z) in weighed coordinates
  bool well_defined = false;
  bool diagram_commutes = false;  // psi(p(g)) = |Q_g| [g]^Q for all g
  bool annihilation = false;      // ord(g) [g]^Q = 0 for all g
  bool injective = false;
  bool surjective = false;
};

/// The map sending the class of g in G//Q to |Q_g| [g]^Q, checked against the
/// norm N(g) = sum_q [q(g)] = |Q_g| [g]^Q for every g.
inline auto comparison_hom(const GroupAction& a) -> ComparisonReport {
  ComparisonReport r{orbit_group(a), weighed_presentation(a), {}, false, false, false, false, false};
  const FiniteGroup& g = a.g_group();
  const std::size_t k = r.orbit.orbit_group.order(), nw = r.weighed.orbits.size();
  auto norm = [&](Element x) {
    IntVector v(nw);
    v[r.weighed.orbit_of[x]] = static_cast<long>(r.weighed.isotropy_order[x]);
    return v;
  };
  IntMatrix m(nw, k);
  std::vector<char> assigned(k, 0);
  for (Element x = 0; x < g.order(); ++x) {
    const Element z = r.orbit.projection[x];
    if (assigned[z]) continue;
    assigned[z] = 1;
    m.set_column(z, norm(x));
  }
  r.map = AbHom(r.orbit.abelianization, r.weighed.group, m);
  r.well_defined = r.map.is_well_defined();
  RelationView v = relation_view(r.weighed.group);
  r.diagram_commutes = true;
  r.annihilation = true;
  for (Element x = 0; x < g.order(); ++x) {
    IntVector diff = m.column(r.orbit.projection[x]);
    IntVector nx = norm(x);
    for (std::size_t i = 0; i < nw; ++i) diff[i] -= nx[i];
    if (!v.contains(diff)) r.diagram_commutes = false;
    IntVector ann(nw);
    ann[r.weighed.orbit_of[x]] = static_cast<long>(g.element_order(x));
    if (!v.contains(ann)) r.annihilation = false;
  }
  if (r.well_defined) {
    r.injective = is_injective(r.map);
    r.surjective = is_surjective(r.map);
  }
  return r;
}

}  // namespace eqhom
