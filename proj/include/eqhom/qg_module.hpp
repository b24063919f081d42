#pragma once

// Q-G modules: abelian groups carrying a G-action and a Q-action with
// q(g m) = q(g) q(m). Conversion to modules over G x| Q, the freeness test for
// permutation modules, the invariant cochain and chain complexes defining
// HH^n_Q and HH_n^Q, Knudson's cohomology of the invariant chains, classical
// cohomology with its Q-action, and Q-derivations.
//
// Hom_G(B_n, M) is modelled by M^(G^n): the value of a cochain on [g_1|...|g_n]
// occupies the coordinate block of that tuple. Likewise B_n (x)_G M is M^(G^n).

#include "eqhom/bar_complex.hpp"
#include "eqhom/finab.hpp"
#include "eqhom/finite_group.hpp"

#include <string>
#include <vector>

namespace eqhom {

struct QGModule {
  GroupAction action;           // Q acting on G
  FinAb underlying;             // M
  std::vector<IntMatrix> g_act;  // indexed by elements of G
  std::vector<IntMatrix> q_act;  // indexed by elements of Q

  /// M with G and Q acting trivially.
  static auto trivial(const GroupAction& a, const FinAb& m) -> QGModule {
    const IntMatrix id = IntMatrix::identity(m.rank());
    return {a, m, std::vector<IntMatrix>(a.g_group().order(), id),
            std::vector<IntMatrix>(a.q_group().order(), id)};
  }

  [[nodiscard]] auto g_group() const -> const FiniteGroup& { return action.g_group(); }
  [[nodiscard]] auto q_group() const -> const FiniteGroup& { return action.q_group(); }
  [[nodiscard]] auto rank() const -> std::size_t { return underlying.rank(); }
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;

  void fail(std::string what) {
    valid = false;
    if (violations.size() < 32) violations.push_back(std::move(what));
  }
};

namespace detail {

inline auto same_endo(const RelationView& v, const IntMatrix& a, const IntMatrix& b) -> bool {
  IntMatrix d = a - b;
  for (std::size_t j = 0; j < d.cols(); ++j)
    if (!v.contains(d.column(j))) return false;
  return true;
}

inline void check_action_family(const FinAb& m, const RelationView& v, const FiniteGroup& grp,
                                const std::vector<IntMatrix>& act, const std::string& name,
                                ValidationReport& r) {
  if (act.size() != grp.order()) {
    r.fail(name + "-action: expected " + std::to_string(grp.order()) + " matrices");
    return;
  }
  for (std::size_t x = 0; x < act.size(); ++x) {
    if (act[x].rows() != m.rank() || act[x].cols() != m.rank()) {
      r.fail(name + "-action: matrix " + std::to_string(x) + " has the wrong shape");
      return;
    }
    if (!AbHom(m, m, act[x]).is_well_defined())
      r.fail(name + "-action: matrix " + std::to_string(x) + " does not respect relations");
  }
  if (!r.valid) return;
  if (!same_endo(v, act[0], IntMatrix::identity(m.rank())))
    r.fail(name + "-action: identity does not act trivially");
  for (Element a = 0; a < grp.order(); ++a)
    for (Element b = 0; b < grp.order(); ++b)
      if (!same_endo(v, act[grp.mul(a, b)], act[a] * act[b]))
        r.fail(name + "-action: not a homomorphism at (" + std::to_string(a) + ", " +
               std::to_string(b) + ")");
}

/// M^k as a presented group.
inline auto power_module(const FinAb& m, std::size_t k) -> FinAb {
  const std::size_t r = m.rank(), c = m.relations().cols();
  IntMatrix rel(r * k, c * k);
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) rel(b * r + i, b * c + j) = m.relations()(i, j);
  return {r * k, rel};
}

/// big[block (rb, cb)] += sign * blk, with square blocks of size blk.rows().
inline void add_block(IntMatrix& big, std::size_t rb, std::size_t cb, const IntMatrix& blk,
                      long sign = 1) {
  const std::size_t r = blk.rows();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (blk(i, j) != 0) {
        if (sign == 1) big(rb * r + i, cb * r + j) += blk(i, j);
        else big(rb * r + i, cb * r + j) -= blk(i, j);
      }
}

}  // namespace detail

/// Checks both actions are homomorphisms into Aut(M) and that
/// q(g m) = q(g) q(m) for all q, g.
inline auto validate(const QGModule& m) -> ValidationReport {
  ValidationReport r;
  RelationView v = relation_view(m.underlying);
  detail::check_action_family(m.underlying, v, m.g_group(), m.g_act, "G", r);
  detail::check_action_family(m.underlying, v, m.q_group(), m.q_act, "Q", r);
  if (!r.valid) return r;
  for (Element q = 0; q < m.q_group().order(); ++q)
    for (Element g = 0; g < m.g_group().order(); ++g)
      if (!detail::same_endo(v, m.q_act[q] * m.g_act[g],
                             m.g_act[m.action.act(q, g)] * m.q_act[q]))
        r.fail("compatibility q(gm) = q(g)q(m) fails at q = " + std::to_string(q) +
               ", g = " + std::to_string(g));
  return r;
}

inline void require_valid(const QGModule& m, const std::string& where) {
  auto r = validate(m);
  if (!r.valid) throw InvalidInput(where + ": invalid Q-G module: " + r.violations.front());
}

/// A module over G x| Q: one matrix per element (g, q), indexed g + |G| q.
struct SemidirectModule {
  SemidirectProduct product;
  FinAb underlying;
  std::vector<IntMatrix> act;

  /// Homomorphism property of (g, q) -> act on all pairs.
  [[nodiscard]] auto is_module() const -> bool {
    RelationView v = relation_view(underlying);
    const FiniteGroup& e = product.group;
    for (Element a = 0; a < e.order(); ++a)
      for (Element b = 0; b < e.order(); ++b)
        if (!detail::same_endo(v, act[e.mul(a, b)], act[a] * act[b])) return false;
    return detail::same_endo(v, act[0], IntMatrix::identity(underlying.rank()));
  }
};

/// (g, q) m = g (q m).
inline auto to_semidirect_module(const QGModule& m) -> SemidirectModule {
  require_valid(m, "to_semidirect_module");
  SemidirectModule s{semidirect_product(m.action), m.underlying, {}};
  const std::size_t ng = m.g_group().order();
  s.act.resize(ng * m.q_group().order());
  for (Element q = 0; q < m.q_group().order(); ++q)
    for (Element g = 0; g < ng; ++g) s.act[g + ng * q] = m.g_act[g] * m.q_act[q];
  return s;
}

/// Restricts a G x| Q module to G x {e} and {e} x Q.
inline auto from_semidirect_module(const GroupAction& a, const SemidirectModule& s)
    -> QGModule {
  const std::size_t ng = a.g_group().order();
  require(s.act.size() == ng * a.q_group().order(),
          "from_semidirect_module: wrong number of action matrices");
  QGModule m{a, s.underlying, {}, {}};
  for (Element g = 0; g < ng; ++g) m.g_act.push_back(s.act[g]);
  for (Element q = 0; q < a.q_group().order(); ++q) m.q_act.push_back(s.act[ng * q]);
  require_valid(m, "from_semidirect_module");
  return m;
}

/// Whether Q acts freely on the index set of a permutation basis. The
/// permutations must form an action of Q (one per element of Q).
inline auto is_free_permutation_module(const FiniteGroup& q,
                                       const std::vector<std::vector<std::size_t>>& perms)
    -> bool {
  require(perms.size() == q.order(), "is_free_permutation_module: one permutation per element");
  const std::size_t n = perms.empty() ? 0 : perms[0].size();
  for (const auto& p : perms) {
    require(p.size() == n, "is_free_permutation_module: permutations of different sizes");
    std::vector<char> seen(n, 0);
    for (auto x : p) {
      require(x < n && !seen[x], "is_free_permutation_module: basis map is not a bijection");
      seen[x] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    require(perms[0][i] == i, "is_free_permutation_module: identity moves a basis element");
  for (Element a = 0; a < q.order(); ++a)
    for (Element b = 0; b < q.order(); ++b)
      for (std::size_t i = 0; i < n; ++i)
        require(perms[q.mul(a, b)][i] == perms[a][perms[b][i]],
                "is_free_permutation_module: basis maps do not form a Q-action");
  for (Element a = 1; a < q.order(); ++a)
    for (std::size_t i = 0; i < n; ++i)
      if (perms[a][i] == i) return false;
  return true;
}

/// Q permuting the ZG-basis of B_n(G). The normalized basis consists of the
/// tuples with no identity entry; B_0 has the single basis element [].
inline auto bar_module_basis_action(const GroupAction& a, std::size_t n, bool normalized = true)
    -> std::vector<std::vector<std::size_t>> {
  const std::size_t order = a.g_group().order(), size = integer_power(order, n);
  std::vector<std::size_t> keep, position(size, size);
  for (std::size_t t = 0; t < size; ++t) {
    auto tuple = decode_tuple(t, n, order);
    bool ok = !normalized || std::find(tuple.begin(), tuple.end(), Element{0}) == tuple.end();
    if (ok) {
      position[t] = keep.size();
      keep.push_back(t);
    }
  }
  std::vector<std::vector<std::size_t>> perms;
  for (Element q = 0; q < a.q_group().order(); ++q) {
    auto full = tuple_action(a, q, n);
    std::vector<std::size_t> p(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) p[k] = position[full[keep[k]]];
    perms.push_back(std::move(p));
  }
  return perms;
}

/// Coboundary M^(G^n) -> M^(G^(n+1)):
/// (df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum_i (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g_1..g_n).
inline auto cochain_differential(const QGModule& m, std::size_t n) -> IntMatrix {
  const FiniteGroup& g = m.g_group();
  const std::size_t r = m.rank(), src = integer_power(g.order(), n),
                    dst = integer_power(g.order(), n + 1);
  IntMatrix d(dst * r, src * r);
  const IntMatrix id = IntMatrix::identity(r);
  std::vector<std::pair<std::size_t, std::int64_t>> faces;
  for (std::size_t t = 0; t < dst; ++t) {
    auto tuple = decode_tuple(t, n + 1, g.order());
    faces.clear();
    detail::bar_faces(g, tuple, faces);
    for (std::size_t k = 0; k < faces.size(); ++k)
      detail::add_block(d, t, faces[k].first, k == 0 ? m.g_act[tuple[0]] : id, faces[k].second);
  }
  return d;
}

/// Boundary M^(G^n) -> M^(G^(n-1)) of B (x)_G M:
/// d([g_1|..|g_n] (x) m) = [g_2|..] (x) g_1^{-1} m + sum_i (-1)^i [..g_i g_{i+1}..] (x) m
///                         + (-1)^n [g_1|..|g_{n-1}] (x) m.
inline auto chain_differential(const QGModule& m, std::size_t n) -> IntMatrix {
  const FiniteGroup& g = m.g_group();
  const std::size_t r = m.rank(), src = integer_power(g.order(), n);
  const std::size_t dst = n == 0 ? 0 : integer_power(g.order(), n - 1);
  IntMatrix d(dst * r, src * r);
  const IntMatrix id = IntMatrix::identity(r);
  std::vector<std::pair<std::size_t, std::int64_t>> faces;
  for (std::size_t t = 0; t < src && n > 0; ++t) {
    auto tuple = decode_tuple(t, n, g.order());
    faces.clear();
    detail::bar_faces(g, tuple, faces);
    for (std::size_t k = 0; k < faces.size(); ++k)
      detail::add_block(d, faces[k].first, t, k == 0 ? m.g_act[g.inv(tuple[0])] : id,
                        faces[k].second);
  }
  return d;
}

/// (q.f)(t) = q f(q^{-1} t) on M^(G^n).
inline auto cochain_q_action(const QGModule& m, Element q, std::size_t n) -> IntMatrix {
  const std::size_t r = m.rank();
  auto p = tuple_action(m.action, m.q_group().inv(q), n);
  IntMatrix a(p.size() * r, p.size() * r);
  for (std::size_t t = 0; t < p.size(); ++t) detail::add_block(a, t, p[t], m.q_act[q]);
  return a;
}

/// q([g_1|..|g_n] (x) m) = [q g_1|..|q g_n] (x) q m on M^(G^n).
inline auto chain_q_action_on_module(const QGModule& m, Element q, std::size_t n)
    -> IntMatrix {
  const std::size_t r = m.rank();
  auto p = tuple_action(m.action, q, n);
  IntMatrix a(p.size() * r, p.size() * r);
  for (std::size_t t = 0; t < p.size(); ++t) detail::add_block(a, p[t], t, m.q_act[q]);
  return a;
}

/// A complex of subgroups X^n of presented ambient groups C^n, n = 0..N, with
/// differentials restricted from C^n -> C^{n+1} (cochains) or C^n -> C^{n-1}
/// (chains). Homology in degree n uses the ambient map out of X^n, so the last
/// subgroup needs no neighbour above it.
struct SubComplex {
  bool cochain = true;
  std::vector<FinAb> ambient;          // C^n
  std::vector<IntMatrix> differential;  // ambient maps out of C^n
  std::vector<Subgroup> subgroups;     // X^n inside C^n

  [[nodiscard]] auto top_degree() const -> std::size_t { return subgroups.size() - 1; }

  /// The restricted map X^n -> X^{n+-1}.
  [[nodiscard]] auto restricted(std::size_t n) const -> AbHom {
    const std::size_t t = cochain ? n + 1 : n - 1;
    const Subgroup& src = subgroups[n];
    const Subgroup& dst = subgroups.at(t);
    IntMatrix img = differential[n] * src.inclusion;
    IntMatrix m(dst.group.rank(), src.group.rank());
    for (std::size_t j = 0; j < img.cols(); ++j) {
      auto y = dst.coordinates(img.column(j));
      ensure(y.has_value(), "SubComplex: differential does not preserve the subcomplex");
      m.set_column(j, *y);
    }
    return {src.group, dst.group, m};
  }

  /// (Co)homology at degree n, with representatives in X^n coordinates.
  [[nodiscard]] auto homology(std::size_t n) const -> Homology {
    require(n <= top_degree(), "SubComplex: degree beyond the top");
    const Subgroup& mid = subgroups[n];
    AbHom out;
    if (!cochain && n == 0) {
      out = AbHom(mid.group, FinAb::free(0), IntMatrix(0, mid.group.rank()));
    } else {
      const FinAb& next = ambient[cochain ? n + 1 : n - 1];
      out = AbHom(mid.group, next, differential[n] * mid.inclusion);
    }
    AbHom in;
    const bool has_in = cochain ? n > 0 : n < top_degree();
    if (has_in) {
      in = restricted(cochain ? n - 1 : n + 1);
    } else {
      in = AbHom(FinAb::free(0), mid.group, IntMatrix(mid.group.rank(), 0));
    }
    require(cochain || n < top_degree(), "SubComplex: homology in the top degree of a chain "
                                         "complex needs one more degree");
    return eqhom::homology(in, out);
  }

  /// d o d = 0 on the subgroups.
  [[nodiscard]] auto is_complex() const -> bool {
    for (std::size_t n = 0; n < subgroups.size(); ++n) {
      IntMatrix dd;
      const FinAb* target = nullptr;
      if (cochain && n + 1 < differential.size() && n + 2 < ambient.size()) {
        dd = differential[n + 1] * differential[n] * subgroups[n].inclusion;
        target = &ambient[n + 2];
      } else if (!cochain && n >= 2) {
        dd = differential[n - 1] * differential[n] * subgroups[n].inclusion;
        target = &ambient[n - 2];
      } else {
        continue;
      }
      RelationView v = relation_view(*target);
      for (std::size_t j = 0; j < dd.cols(); ++j)
        if (!v.contains(dd.column(j))) return false;
    }
    return true;
  }
};

/// Cochain complex Hom_G(B(G), M)^Q through degree N: X^n is the fixed
/// subgroup of the Q-action on M^(G^n).
inline auto invariant_cochain_complex(const QGModule& m, std::size_t top) -> SubComplex {
  require_valid(m, "invariant_cochain_complex");
  check_basis_limit(m.g_group().order(), top + 1, kDefaultBasisLimit);
  SubComplex c;
  c.cochain = true;
  for (std::size_t n = 0; n <= top + 1; ++n) {
    c.ambient.push_back(detail::power_module(m.underlying, integer_power(m.g_group().order(), n)));
    if (n <= top) {
      c.differential.push_back(cochain_differential(m, n));
      std::vector<IntMatrix> acts;
      for (Element q = 1; q < m.q_group().order(); ++q) acts.push_back(cochain_q_action(m, q, n));
      c.subgroups.push_back(fixed_subgroup(c.ambient[n], acts));
    }
  }
  return c;
}

/// Chain complex (B(G) (x)_G M)^Q through degree N (homology up to N-1).
inline auto invariant_chain_complex(const QGModule& m, std::size_t top) -> SubComplex {
  require_valid(m, "invariant_chain_complex");
  check_basis_limit(m.g_group().order(), top, kDefaultBasisLimit);
  SubComplex c;
  c.cochain = false;
  for (std::size_t n = 0; n <= top; ++n) {
    c.ambient.push_back(detail::power_module(m.underlying, integer_power(m.g_group().order(), n)));
    c.differential.push_back(chain_differential(m, n));
    std::vector<IntMatrix> acts;
    for (Element q = 1; q < m.q_group().order(); ++q)
      acts.push_back(chain_q_action_on_module(m, q, n));
    c.subgroups.push_back(fixed_subgroup(c.ambient[n], acts));
  }
  return c;
}

/// HH^n_Q(G, M).
inline auto hh_cohomology(const QGModule& m, std::size_t n) -> FinAb {
  return invariant_cochain_complex(m, n).homology(n).group;
}

/// HH_n^Q(G, M).
inline auto hh_homology(const QGModule& m, std::size_t n) -> FinAb {
  return invariant_chain_complex(m, n + 1).homology(n).group;
}

/// The Q-G module with the Q-action forgotten (Q trivial, acting trivially).
inline auto forget_q(const QGModule& m) -> QGModule {
  GroupAction trivial = GroupAction::trivial(cyclic(1), m.g_group());
  return {trivial, m.underlying, m.g_act, {IntMatrix::identity(m.rank())}};
}

/// H^n(G, M) with cocycle representatives and the Q-action (q.f)(t) = q f(q^{-1} t).
struct CohomologyWithAction {
  Homology cohomology;
  std::vector<AbHom> action;
};

inline auto cohomology_with_action(const QGModule& m, std::size_t n) -> CohomologyWithAction {
  require_valid(m, "cohomology_with_action");
  const std::size_t k = m.g_group().order();
  FinAb mid = detail::power_module(m.underlying, integer_power(k, n));
  FinAb next = detail::power_module(m.underlying, integer_power(k, n + 1));
  AbHom out(mid, next, cochain_differential(m, n));
  AbHom in = n == 0 ? AbHom(FinAb::free(0), mid, IntMatrix(mid.rank(), 0))
                    : AbHom(detail::power_module(m.underlying, integer_power(k, n - 1)), mid,
                            cochain_differential(m, n - 1));
  CohomologyWithAction out_h{homology(in, out), {}};
  for (Element q = 0; q < m.q_group().order(); ++q)
    out_h.action.push_back(induced_endomorphism(out_h.cohomology, cochain_q_action(m, q, n)));
  return out_h;
}

/// Knudson's H^n_Q(G, A) = H^n(Hom(C(G)^Q, A)) for A with trivial actions.
inline auto knudson_cohomology(const GroupAction& a, const FinAb& coeff, std::size_t n)
    -> FinAb {
  InvariantComplex ic = invariant_complex(a, 0, n + 1);
  const std::size_t r = coeff.rank();
  auto hom_dual = [&](std::size_t k) {
    // Transpose of d_k tensored with the identity of A: Hom(C_{k-1}, A) -> Hom(C_k, A).
    IntMatrix d = ic.complex.boundary(k);
    IntMatrix out(d.cols() * r, d.rows() * r);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (d(i, j) != 0)
          for (std::size_t s = 0; s < r; ++s) out(j * r + s, i * r + s) = d(i, j);
    return out;
  };
  FinAb mid = detail::power_module(coeff, ic.complex.ranks[n]);
  FinAb next = detail::power_module(coeff, ic.complex.ranks[n + 1]);
  AbHom out(mid, next, hom_dual(n + 1));
  AbHom in = n == 0 ? AbHom(FinAb::free(0), mid, IntMatrix(mid.rank(), 0))
                    : AbHom(detail::power_module(coeff, ic.complex.ranks[n - 1]), mid,
                            hom_dual(n));
  return homology(in, out).group;
}

/// Comparison of HH^n_Q(G, M) with the fixed points of Q on H^n(G, M) via the
/// map induced by the inclusion of invariant cochains.
struct FixedPointComparison {
  IntVector hh_divisors;
  IntVector fixed_divisors;
  bool lands_in_fixed = false;
  bool is_isomorphism = false;
};

inline auto hh_versus_fixed_cohomology(const QGModule& m, std::size_t n)
    -> FixedPointComparison {
  SubComplex c = invariant_cochain_complex(m, n);
  Homology hh = c.homology(n);
  CohomologyWithAction full = cohomology_with_action(m, n);
  std::vector<IntMatrix> endos;
  for (const auto& e : full.action) endos.push_back(e.matrix);
  Subgroup fixed = fixed_subgroup(full.cohomology.group, endos);
  FixedPointComparison r;
  r.hh_divisors = hh.divisors();
  r.fixed_divisors = fixed.group.divisors();
  AbHom into = induced_map(hh, full.cohomology, c.subgroups[n].inclusion);
  IntMatrix mm(fixed.group.rank(), hh.group.rank());
  r.lands_in_fixed = true;
  for (std::size_t j = 0; j < hh.group.rank(); ++j) {
    auto y = fixed.coordinates(into.matrix.column(j));
    if (!y) {
      r.lands_in_fixed = false;
      return r;
    }
    mm.set_column(j, *y);
  }
  r.is_isomorphism = is_isomorphism(AbHom(hh.group, fixed.group, mm));
  return r;
}

/// HH^0 as (M^G)^Q, computed as fixed points of fixed points.
inline auto invariants_of_invariants(const QGModule& m) -> FinAb {
  Subgroup mg = fixed_subgroup(m.underlying, m.g_act);
  std::vector<IntMatrix> restricted;
  for (Element q = 0; q < m.q_group().order(); ++q) {
    IntMatrix img = m.q_act[q] * mg.inclusion;
    IntMatrix r(mg.group.rank(), mg.group.rank());
    for (std::size_t j = 0; j < img.cols(); ++j) {
      auto y = mg.coordinates(img.column(j));
      ensure(y.has_value(), "invariants_of_invariants: Q does not preserve M^G");
      r.set_column(j, *y);
    }
    restricted.push_back(std::move(r));
  }
  return fixed_subgroup(mg.group, restricted).group;
}

struct Derivations {
  Subgroup derivations;  // Der_Q(G, M) inside M^|G|
  FinAb inner;           // IDer_Q(G, M)
  Quotient quotient;     // Der_Q / IDer_Q
};

/// Q-equivariant derivations d(g1 g2) = d(g1) + g1 d(g2), d(q(g)) = q d(g),
/// and the inner ones g -> (g - 1) m for m in M^Q.
inline auto derivations(const QGModule& m) -> Derivations {
  require_valid(m, "derivations");
  const FiniteGroup& g = m.g_group();
  const std::size_t k = g.order(), nq = m.q_group().order(), r = m.rank();
  FinAb cochains = detail::power_module(m.underlying, k);
  IntMatrix cons((k * k + nq * k) * r, k * r);
  const IntMatrix id = IntMatrix::identity(r);
  std::size_t row = 0;
  for (Element a = 0; a < k; ++a)
    for (Element b = 0; b < k; ++b, ++row) {
      detail::add_block(cons, row, g.mul(a, b), id);
      detail::add_block(cons, row, a, id, -1);
      detail::add_block(cons, row, b, m.g_act[a], -1);
    }
  for (Element q = 0; q < nq; ++q)
    for (Element x = 0; x < k; ++x, ++row) {
      detail::add_block(cons, row, m.action.act(q, x), id);
      detail::add_block(cons, row, x, m.q_act[q], -1);
    }
  FinAb target = detail::power_module(m.underlying, k * k + nq * k);
  Derivations out;
  out.derivations = kernel(AbHom(cochains, target, cons));
  Subgroup mq = fixed_subgroup(m.underlying, m.q_act);
  IntMatrix inner_map(k * r, r);
  for (Element x = 0; x < k; ++x) {
    IntMatrix blk = m.g_act[x] - id;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) inner_map(x * r + i, j) = blk(i, j);
  }
  IntMatrix gens = inner_map * mq.inclusion;
  IntMatrix in_der(out.derivations.group.rank(), gens.cols());
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    auto y = out.derivations.coordinates(gens.column(j));
    ensure(y.has_value(), "derivations: an inner derivation is not a Q-derivation");
    in_der.set_column(j, *y);
  }
  out.inner = image(AbHom(mq.group, cochains, gens)).group;
  out.quotient = quotient(out.derivations.group, in_der);
  return out;
}

}  // namespace eqhom
