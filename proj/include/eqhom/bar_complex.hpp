#pragma once

// Unnormalized bar complexes of finite groups with trivial coefficients, the
// diagonal Q-action on chains, invariant subcomplexes on orbit-sum bases, and
// the comparisons between invariant homology, fixed points of the homology
// action, coinvariants, and homology of the semidirect product.
//
// A chain [g_1|...|g_n] of degree n is stored as the index sum_i g_i |G|^(i-1).

#include "eqhom/finab.hpp"
#include "eqhom/finite_group.hpp"
#include "eqhom/sparse_elimination.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eqhom {

inline constexpr std::size_t kDefaultBasisLimit = 200000;

inline auto integer_power(std::size_t base, std::size_t exp) -> std::size_t {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

inline auto decode_tuple(std::size_t index, std::size_t n, std::size_t order)
    -> std::vector<Element> {
  std::vector<Element> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = index % order;
    index /= order;
  }
  return t;
}

inline auto encode_tuple(const std::vector<Element>& t, std::size_t order) -> std::size_t {
  std::size_t index = 0;
  for (std::size_t i = t.size(); i-- > 0;) index = index * order + t[i];
  return index;
}

/// Free chain complex C_0 <- C_1 <- ... <- C_top with coefficients Z/modulus
/// (modulus 0 means Z). boundaries[n] is d_n : C_n -> C_{n-1}; d_0 has no rows.
struct FreeChainComplex {
  Integer modulus;
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrix> boundaries;

  [[nodiscard]] auto top_degree() const -> std::size_t { return ranks.size() - 1; }

  [[nodiscard]] auto boundary(std::size_t n) const -> IntMatrix {
    require(n <= top_degree(), "FreeChainComplex: boundary degree " + std::to_string(n) +
                                   " beyond the top degree");
    return boundaries[n].to_dense();
  }

  /// H_q with explicit cycle representatives (dense route, small complexes).
  [[nodiscard]] auto homology(std::size_t q) const -> Homology {
    require(q < top_degree(), "FreeChainComplex: H_" + std::to_string(q) +
                                  " needs chains through degree " + std::to_string(q + 1));
    return homology_at(boundary(q + 1), boundary(q), modulus);
  }

  /// H^q of Hom(C, Z/modulus) with explicit cocycle representatives.
  [[nodiscard]] auto cohomology(std::size_t q) const -> Homology {
    require(q < top_degree(), "FreeChainComplex: H^" + std::to_string(q) +
                                  " needs chains through degree " + std::to_string(q + 1));
    return homology_at(boundary(q).transpose(), boundary(q + 1).transpose(), modulus);
  }

  /// Elementary divisors of H_q for q = 0 .. top-1 (sparse route).
  [[nodiscard]] auto homology_divisors() const -> std::vector<IntVector> {
    auto s = summaries();
    std::vector<IntVector> out;
    for (std::size_t q = 0; q < top_degree(); ++q)
      out.push_back(homology_from_divisors(ranks[q], s[q + 1], s[q], modulus));
    return out;
  }

  /// Elementary divisors of H^q(Hom(C, Z/modulus)) for q = 0 .. top-1.
  [[nodiscard]] auto cohomology_divisors() const -> std::vector<IntVector> {
    auto s = summaries();
    std::vector<IntVector> out;
    for (std::size_t q = 0; q < top_degree(); ++q)
      out.push_back(homology_from_divisors(ranks[q], s[q], s[q + 1], modulus));
    return out;
  }

  /// Checks d_{n-1} d_n = 0 over Z (which implies it modulo any m).
  [[nodiscard]] auto is_complex() const -> bool {
    for (std::size_t n = 2; n <= top_degree(); ++n) {
      const auto& a = boundaries[n - 1];
      const auto& b = boundaries[n];
      for (const auto& col : b.columns) {
        std::vector<std::int64_t> acc(a.rows, 0);
        for (const auto& [r, v] : col)
          for (const auto& [r2, v2] : a.columns[r]) acc[r2] += v * v2;
        for (auto x : acc)
          if (x != 0) return false;
      }
    }
    return true;
  }

 private:
  [[nodiscard]] auto summaries() const -> std::vector<DivisorSummary> {
    std::vector<DivisorSummary> s;
    for (const auto& b : boundaries) s.push_back(sparse_divisors(b));
    return s;
  }
};

inline void check_basis_limit(std::size_t order, std::size_t top, std::size_t limit) {
  for (std::size_t n = 0; n <= top; ++n) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (size > limit / std::max<std::size_t>(order, 1) + 1) {
        size = limit + 1;
        break;
      }
      size *= order;
    }
    if (size > limit)
      throw LimitExceeded("bar complex: degree " + std::to_string(n) + " needs " +
                          std::to_string(order) + "^" + std::to_string(n) +
                          " basis elements, above the limit of " + std::to_string(limit));
  }
}

namespace detail {

/// Faces of [t_1|...|t_n]: appends (index, sign) pairs of degree n-1 tuples.
inline void bar_faces(const FiniteGroup& g, const std::vector<Element>& t,
                      std::vector<std::pair<std::size_t, std::int64_t>>& out) {
  const std::size_t n = t.size(), order = g.order();
  if (n == 0) return;
  std::vector<Element> f(n - 1);
  auto emit = [&](std::int64_t sign) { out.emplace_back(encode_tuple(f, order), sign); };
  for (std::size_t i = 1; i < n; ++i) f[i - 1] = t[i];
  emit(1);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k + 1 < i; ++k) f[k] = t[k];
    f[i - 1] = g.mul(t[i - 1], t[i]);
    for (std::size_t k = i + 1; k < n; ++k) f[k - 1] = t[k];
    emit(i % 2 ? -1 : 1);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) f[k] = t[k];
  emit(n % 2 ? -1 : 1);
}

}  // namespace detail

/// Bar complex of g with chains through degree `top`, so H_q is available
/// for q < top.
inline auto bar_complex(const FiniteGroup& g, const Integer& modulus, std::size_t top,
                        std::size_t basis_limit = kDefaultBasisLimit) -> FreeChainComplex {
  require(top >= 1, "bar_complex: top degree must be at least 1");
  require(modulus >= 0, "bar_complex: modulus must be nonnegative");
  check_basis_limit(g.order(), top, basis_limit);
  FreeChainComplex c;
  c.modulus = modulus;
  std::vector<std::pair<std::size_t, std::int64_t>> faces;
  for (std::size_t n = 0; n <= top; ++n) {
    const std::size_t rank = integer_power(g.order(), n);
    c.ranks.push_back(rank);
    SparseMatrix d(n == 0 ? 0 : c.ranks[n - 1], rank);
    if (n >= 2)
      for (std::size_t j = 0; j < rank; ++j) {
        faces.clear();
        detail::bar_faces(g, decode_tuple(j, n, g.order()), faces);
        for (const auto& [idx, s] : faces)
          d.columns[j].emplace_back(static_cast<std::uint32_t>(idx), s);
        d.normalize_column(j);
      }
    c.boundaries.push_back(std::move(d));
  }
  return c;
}

/// Permutation of degree-n tuple indices induced by q acting diagonally.
inline auto tuple_action(const GroupAction& a, Element q, std::size_t n)
    -> std::vector<std::size_t> {
  const std::size_t order = a.g_group().order(), size = integer_power(order, n);
  std::vector<std::size_t> perm(size);
  for (std::size_t j = 0; j < size; ++j) {
    auto t = decode_tuple(j, n, order);
    for (auto& x : t) x = a.act(q, x);
    perm[j] = encode_tuple(t, order);
  }
  return perm;
}

/// Matrix of q acting on C_n: column j has a single 1 in row q.j.
inline auto chain_q_action(const GroupAction& a, Element q, std::size_t n) -> IntMatrix {
  auto perm = tuple_action(a, q, n);
  IntMatrix m(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(perm[j], j) = 1;
  return m;
}

/// The subcomplex of Q-invariant chains on the basis of orbit sums. Orbits in
/// each degree are ordered by their lexicographically smallest tuple.
struct InvariantComplex {
  FreeChainComplex complex;
  std::vector<std::vector<std::vector<std::size_t>>> orbits;  // [degree][orbit] -> tuples
  std::vector<std::vector<std::size_t>> representatives;      // lex-min tuple per orbit

  /// Ambient-by-orbit 0/1 matrix sending each basis element to its orbit sum.
  [[nodiscard]] auto inclusion(std::size_t n) const -> IntMatrix {
    std::size_t ambient = 0;
    for (const auto& o : orbits[n]) ambient += o.size();
    IntMatrix m(ambient, orbits[n].size());
    for (std::size_t k = 0; k < orbits[n].size(); ++k)
      for (std::size_t t : orbits[n][k]) m(t, k) = 1;
    return m;
  }
};

inline auto invariant_complex(const GroupAction& a, const Integer& modulus, std::size_t top,
                              std::size_t basis_limit = kDefaultBasisLimit)
    -> InvariantComplex {
  require(top >= 1, "invariant_complex: top degree must be at least 1");
  require(modulus >= 0, "invariant_complex: modulus must be nonnegative");
  const FiniteGroup& g = a.g_group();
  const std::size_t order = g.order();
  check_basis_limit(order, top, basis_limit);
  InvariantComplex ic;
  ic.complex.modulus = modulus;
  std::vector<std::vector<std::uint32_t>> orbit_of(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    const std::size_t size = integer_power(order, n);
    std::vector<std::vector<std::size_t>> perms;
    for (Element q = 0; q < a.q_group().order(); ++q) perms.push_back(tuple_action(a, q, n));
    auto lex_key = [&](std::size_t idx) {
      auto t = decode_tuple(idx, n, order);
      std::size_t k = 0;
      for (Element x : t) k = k * order + x;
      return k;
    };
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> found;  // (key, members)
    std::vector<char> seen(size, 0);
    for (std::size_t j = 0; j < size; ++j) {
      if (seen[j]) continue;
      std::vector<std::size_t> members;
      for (const auto& p : perms)
        if (!seen[p[j]]) {
          seen[p[j]] = 1;
          members.push_back(p[j]);
        }
      std::sort(members.begin(), members.end());
      std::size_t best = lex_key(members[0]);
      std::size_t rep = members[0];
      for (std::size_t t : members)
        if (lex_key(t) < best) {
          best = lex_key(t);
          rep = t;
        }
      // Keep the representative first so it can be recovered after sorting.
      std::swap(*std::find(members.begin(), members.end(), rep), members[0]);
      found.emplace_back(best, std::move(members));
    }
    std::sort(found.begin(), found.end());
    std::vector<std::vector<std::size_t>> orbs;
    std::vector<std::size_t> reps;
    orbit_of[n].assign(size, 0);
    for (std::size_t k = 0; k < found.size(); ++k) {
      auto& members = found[k].second;
      reps.push_back(members[0]);
      for (std::size_t t : members) orbit_of[n][t] = static_cast<std::uint32_t>(k);
      std::sort(members.begin(), members.end());
      orbs.push_back(std::move(members));
    }
    ic.orbits.push_back(std::move(orbs));
    ic.representatives.push_back(std::move(reps));
    ic.complex.ranks.push_back(ic.orbits[n].size());
  }

  std::vector<std::pair<std::size_t, std::int64_t>> faces;
  for (std::size_t n = 0; n <= top; ++n) {
    const std::size_t cols = ic.orbits[n].size();
    SparseMatrix d(n == 0 ? 0 : ic.orbits[n - 1].size(), cols);
    if (n >= 2) {
      std::vector<std::int64_t> acc(integer_power(order, n - 1), 0);
      std::vector<char> mark(acc.size(), 0);
      std::vector<std::size_t> touched;
      for (std::size_t k = 0; k < cols; ++k) {
        touched.clear();
        for (std::size_t t : ic.orbits[n][k]) {
          faces.clear();
          detail::bar_faces(g, decode_tuple(t, n, order), faces);
          for (const auto& [idx, s] : faces) {
            if (!mark[idx]) {
              mark[idx] = 1;
              touched.push_back(idx);
            }
            acc[idx] += s;
          }
        }
        for (std::size_t idx : touched) {
          const std::int64_t c = acc[idx];
          const std::size_t o = orbit_of[n - 1][idx];
          const std::size_t rep = ic.representatives[n - 1][o];
          if (acc[rep] != c)
            throw InternalError("invariant_complex: boundary of an orbit sum is not invariant");
          if (idx == rep && c != 0) d.columns[k].emplace_back(static_cast<std::uint32_t>(o), c);
        }
        for (std::size_t idx : touched) {
          acc[idx] = 0;
          mark[idx] = 0;
        }
        d.normalize_column(k);
      }
    }
    ic.complex.boundaries.push_back(std::move(d));
  }
  return ic;
}

/// Elementary divisors of H_q(G, Z/m) for q = 0 .. max_q.
inline auto ordinary_homology_divisors(const FiniteGroup& g, const Integer& modulus,
                                       std::size_t max_q,
                                       std::size_t basis_limit = kDefaultBasisLimit)
    -> std::vector<IntVector> {
  return bar_complex(g, modulus, max_q + 1, basis_limit).homology_divisors();
}

/// Elementary divisors of H_q^Q(G, Z/m) for q = 0 .. max_q.
inline auto invariant_homology_divisors(const GroupAction& a, const Integer& modulus,
                                        std::size_t max_q,
                                        std::size_t basis_limit = kDefaultBasisLimit)
    -> std::vector<IntVector> {
  return invariant_complex(a, modulus, max_q + 1, basis_limit).complex.homology_divisors();
}

inline auto ordinary_homology(const FiniteGroup& g, const Integer& modulus, std::size_t q)
    -> FinAb {
  return FinAb::from_orders(ordinary_homology_divisors(g, modulus, q).at(q));
}

inline auto invariant_homology(const GroupAction& a, const Integer& modulus, std::size_t q)
    -> FinAb {
  return FinAb::from_orders(invariant_homology_divisors(a, modulus, q).at(q));
}

/// |Q| invertible in Z/m.
inline auto order_invertible_mod(std::size_t q_order, const Integer& modulus) -> bool {
  if (q_order == 1) return true;
  return modulus != 0 && gcd(Integer(static_cast<unsigned long>(q_order)), modulus) == 1;
}

/// H_n(G, Z/m) with cycle representatives and the induced Q-action.
struct HomologyWithAction {
  Homology homology;
  std::vector<AbHom> action;  // indexed by elements of Q
};

inline auto homology_with_action(const GroupAction& a, const Integer& modulus, std::size_t n)
    -> HomologyWithAction {
  FreeChainComplex c = bar_complex(a.g_group(), modulus, n + 1);
  HomologyWithAction out{c.homology(n), {}};
  for (Element q = 0; q < a.q_group().order(); ++q)
    out.action.push_back(induced_endomorphism(out.homology, chain_q_action(a, q, n)));
  return out;
}

/// The automorphism of H_n(G, Z/m) induced by q.
inline auto homology_q_action(const GroupAction& a, Element q, const Integer& modulus,
                              std::size_t n) -> AbHom {
  FreeChainComplex c = bar_complex(a.g_group(), modulus, n + 1);
  Homology h = c.homology(n);
  return induced_endomorphism(h, chain_q_action(a, q, n));
}

struct Theorem1Report {
  std::size_t degree = 0;
  bool hypothesis_holds = false;
  IntVector invariant_divisors;  // H_n^Q
  IntVector ambient_divisors;    // H_n(G, A)
  IntVector fixed_divisors;      // H_n(G, A)^Q
  AbHom map;                     // i_* : H_n^Q -> H_n(G, A)^Q
  bool lands_in_fixed = false;
  bool is_isomorphism = false;
};

/// Computes i_* from the inclusion of invariant chains and tests whether it
/// is an isomorphism onto the fixed points of the homology action.
inline auto theorem1_check(const GroupAction& a, const Integer& modulus, std::size_t n)
    -> Theorem1Report {
  Theorem1Report r;
  r.degree = n;
  r.hypothesis_holds = order_invertible_mod(a.q_group().order(), modulus);
  InvariantComplex ic = invariant_complex(a, modulus, n + 1);
  Homology hq = ic.complex.homology(n);
  HomologyWithAction ha = homology_with_action(a, modulus, n);
  std::vector<IntMatrix> endos;
  for (const auto& e : ha.action) endos.push_back(e.matrix);
  Subgroup fixed = fixed_subgroup(ha.homology.group, endos);
  r.invariant_divisors = hq.divisors();
  r.ambient_divisors = ha.homology.divisors();
  r.fixed_divisors = fixed.group.divisors();
  AbHom into = induced_map(hq, ha.homology, ic.inclusion(n));
  IntMatrix m(fixed.group.rank(), hq.group.rank());
  r.lands_in_fixed = true;
  for (std::size_t j = 0; j < hq.group.rank(); ++j) {
    auto y = fixed.coordinates(into.matrix.column(j));
    if (!y) {
      r.lands_in_fixed = false;
      break;
    }
    m.set_column(j, *y);
  }
  if (r.lands_in_fixed) {
    r.map = AbHom(hq.group, fixed.group, m);
    r.is_isomorphism = is_isomorphism(r.map);
  }
  return r;
}

struct Theorem2Report {
  std::size_t degree = 0;
  bool hypothesis_holds = false;
  IntVector invariant_divisors;   // H_n^Q(G, A)
  IntVector semidirect_divisors;  // H_n(G x| Q, A)
  bool equal = false;
};

inline auto theorem2_check(const GroupAction& a, const Integer& modulus, std::size_t max_n)
    -> std::vector<Theorem2Report> {
  auto inv = invariant_homology_divisors(a, modulus, max_n);
  auto semi = ordinary_homology_divisors(semidirect_product(a).group, modulus, max_n);
  std::vector<Theorem2Report> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    Theorem2Report r;
    r.degree = n;
    r.hypothesis_holds = order_invertible_mod(a.q_group().order(), modulus);
    r.invariant_divisors = inv[n];
    r.semidirect_divisors = semi[n];
    r.equal = inv[n] == semi[n];
    out.push_back(std::move(r));
  }
  return out;
}

struct NormReport {
  std::size_t degree = 0;
  bool hypothesis_holds = false;
  IntVector coinvariant_divisors;
  IntVector invariant_divisors;
  bool is_isomorphism = false;
};

/// Norm map from coinvariants to invariants of the Q-action on H_n(G, Z/m).
inline auto coinvariants_norm_check(const GroupAction& a, const Integer& modulus,
                                    std::size_t n) -> NormReport {
  HomologyWithAction ha = homology_with_action(a, modulus, n);
  std::vector<IntMatrix> endos;
  for (const auto& e : ha.action) endos.push_back(e.matrix);
  NormMap nm = norm_map(ha.homology.group, endos);
  NormReport r;
  r.degree = n;
  r.hypothesis_holds = order_invertible_mod(a.q_group().order(), modulus);
  r.coinvariant_divisors = nm.coinvariants.group.divisors();
  r.invariant_divisors = nm.invariants.group.divisors();
  r.is_isomorphism = nm.is_isomorphism;
  return r;
}

}  // namespace eqhom
