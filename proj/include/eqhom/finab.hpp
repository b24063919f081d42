#pragma once

// Finitely generated abelian groups given by presentations, homomorphisms
// between them, and the subquotient constructions built on top: kernels,
// images, quotients, fixed points, coinvariants, norm maps and homology of a
// two-map window.
//
// Convention: a group of rank g is Z^g modulo the span of the columns of its
// relation matrix. Elements and subgroup generators are columns in these
// ambient coordinates.

#include "eqhom/int_matrix.hpp"
#include "eqhom/normal_form.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace eqhom {

/// Sorted invariant factors d_1 | d_2 | ... (each >= 2) followed by one 0 per
/// free cyclic summand. Accepts any list of cyclic orders (1 and 0 allowed).
inline auto canonical_divisors(const IntVector& orders) -> IntVector {
  IntVector finite;
  std::size_t free_rank = 0;
  for (const auto& d : orders) {
    Integer a = abs(d);
    if (a == 0) ++free_rank;
    else if (a != 1) finite.push_back(a);
  }
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      if (divides(finite[i], finite[j])) continue;
      Integer g = gcd(finite[i], finite[j]);
      Integer l = finite[i] / g * finite[j];
      finite[i] = g;
      finite[j] = l;
    }
  IntVector out;
  for (auto& d : finite)
    if (d != 1) out.push_back(d);
  std::sort(out.begin(), out.end());
  out.insert(out.end(), free_rank, Integer(0));
  return out;
}

inline auto divisors_to_string(const IntVector& divs) -> std::string {
  if (divs.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (i) s += " + ";
    s += divs[i] == 0 ? std::string("Z") : "Z/" + divs[i].get_str();
  }
  return s;
}

/// Finitely generated abelian group Z^rank / <relations>.
class FinAb {
 public:
  FinAb() = default;
  FinAb(std::size_t rank, IntMatrix relations)
      : rank_(rank), relations_(std::move(relations)) {
    if (relations_.cols() == 0) relations_ = IntMatrix(rank_, 0);
    require(relations_.rows() == rank_, "FinAb: relation matrix has wrong row count");
  }

  static auto free(std::size_t n) -> FinAb { return {n, IntMatrix(n, 0)}; }
  static auto cyclic(const Integer& d) -> FinAb {
    if (d == 0) return free(1);
    IntMatrix r(1, 1);
    r(0, 0) = d;
    return {1, r};
  }
  /// Direct sum of cyclic groups of the listed orders (0 means Z).
  static auto from_orders(const IntVector& orders) -> FinAb {
    std::size_t finite = 0;
    for (const auto& d : orders) finite += d != 0;
    IntMatrix r(orders.size(), finite);
    std::size_t c = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) r(i, c++) = orders[i];
    return {orders.size(), r};
  }
  /// (Z/m)^n, or Z^n when m = 0.
  static auto uniform(std::size_t n, const Integer& m) -> FinAb {
    return from_orders(IntVector(n, m));
  }

  [[nodiscard]] auto rank() const -> std::size_t { return rank_; }
  [[nodiscard]] auto relations() const -> const IntMatrix& { return relations_; }

  [[nodiscard]] auto divisors() const -> IntVector;
  [[nodiscard]] auto is_trivial() const -> bool { return divisors().empty(); }
  [[nodiscard]] auto is_finite() const -> bool {
    auto d = divisors();
    return d.empty() || d.back() != 0;
  }
  /// Group order, or nullopt when infinite.
  [[nodiscard]] auto order() const -> std::optional<Integer> {
    Integer o = 1;
    for (const auto& d : divisors()) {
      if (d == 0) return std::nullopt;
      o *= d;
    }
    return o;
  }
  [[nodiscard]] auto to_string() const -> std::string {
    return divisors_to_string(divisors());
  }

 private:
  std::size_t rank_ = 0;
  IntMatrix relations_ = IntMatrix(0, 0);
};

inline auto isomorphic(const FinAb& a, const FinAb& b) -> bool {
  return a.divisors() == b.divisors();
}

inline auto direct_sum(const FinAb& a, const FinAb& b) -> FinAb {
  return {a.rank() + b.rank(), block_diagonal(a.relations(), b.relations())};
}

/// The relation subgroup of a presentation in diagonal coordinates:
/// x lies in the relation span iff (U x)_i == 0 mod moduli_i for every i.
struct RelationView {
  std::optional<IntMatrix> U;  // nullopt means identity
  IntMatrix U_inv;             // only meaningful when U is set
  IntVector moduli;

  [[nodiscard]] auto apply(const IntVector& x) const -> IntVector {
    return U ? (*U) * x : x;
  }
  [[nodiscard]] auto contains(const IntVector& x) const -> bool {
    IntVector y = apply(x);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (moduli[i] != 1 && !divides(moduli[i], y[i])) return false;
    return true;
  }
};

/// Diagonalizes the relation module. Monomial relation matrices (each column
/// with at most one nonzero entry) are read off directly.
inline auto relation_view(const FinAb& g) -> RelationView {
  const IntMatrix& r = g.relations();
  RelationView v;
  v.moduli.assign(g.rank(), Integer(0));
  bool monomial = true;
  for (std::size_t j = 0; j < r.cols() && monomial; ++j) {
    std::size_t nz = 0;
    for (std::size_t i = 0; i < r.rows(); ++i)
      if (r(i, j) != 0) ++nz;
    monomial = nz <= 1;
  }
  if (monomial) {
    for (std::size_t j = 0; j < r.cols(); ++j)
      for (std::size_t i = 0; i < r.rows(); ++i)
        if (r(i, j) != 0) v.moduli[i] = gcd(v.moduli[i], r(i, j));
    return v;
  }
  SmithForm s = smith_normal_form(r, true);
  for (std::size_t i = 0; i < s.rank; ++i) v.moduli[i] = s.diagonal[i];
  v.U = std::move(s.U);
  v.U_inv = std::move(s.U_inv);
  return v;
}

inline auto FinAb::divisors() const -> IntVector {
  return canonical_divisors(relation_view(*this).moduli);
}

/// A presentation rewritten on generators with nontrivial cyclic orders.
/// `to` maps old coordinates to new ones, `from` maps new to old.
struct Simplified {
  FinAb group;
  IntMatrix to;
  IntMatrix from;
  IntVector moduli;  // order of each new generator, 0 for free

  [[nodiscard]] auto reduce(IntVector y) const -> IntVector {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = reduce_mod(y[i], moduli[i]);
    return y;
  }
  [[nodiscard]] auto coordinates(const IntVector& x) const -> IntVector {
    return reduce(to * x);
  }
};

inline auto simplify(const FinAb& g) -> Simplified {
  RelationView v = relation_view(g);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (v.moduli[i] != 1) kept.push_back(i);
  Simplified s;
  for (auto i : kept) s.moduli.push_back(v.moduli[i]);
  s.group = FinAb::from_orders(s.moduli);
  if (v.U) {
    s.to = v.U->select_rows(kept);
    s.from = v.U_inv.select_columns(kept);
  } else {
    s.to = IntMatrix(kept.size(), g.rank());
    s.from = IntMatrix(g.rank(), kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      s.to(k, kept[k]) = 1;
      s.from(kept[k], k) = 1;
    }
  }
  return s;
}

/// Homomorphism given by a matrix on generator coordinates.
struct AbHom {
  FinAb source;
  FinAb target;
  IntMatrix matrix;  // target.rank() x source.rank()

  AbHom() = default;
  AbHom(FinAb s, FinAb t, IntMatrix m)
      : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    if (matrix.rows() == 0 && matrix.cols() == 0)
      matrix = IntMatrix(target.rank(), source.rank());
    require(matrix.rows() == target.rank() && matrix.cols() == source.rank(),
            "AbHom: matrix shape does not match source/target ranks");
  }

  static auto identity(const FinAb& g) -> AbHom {
    return {g, g, IntMatrix::identity(g.rank())};
  }

  /// True when every source relation maps into the target relation span.
  [[nodiscard]] auto is_well_defined() const -> bool {
    RelationView v = relation_view(target);
    const IntMatrix& r = source.relations();
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!v.contains(matrix * r.column(j))) return false;
    return true;
  }

  [[nodiscard]] auto apply(const IntVector& x) const -> IntVector { return matrix * x; }

  [[nodiscard]] auto compose_after(const AbHom& first) const -> AbHom {
    return {first.source, target, matrix * first.matrix};
  }
};

/// Equality of homomorphisms with the same source and target.
inline auto same_map(const AbHom& a, const AbHom& b) -> bool {
  require(a.matrix.rows() == b.matrix.rows() && a.matrix.cols() == b.matrix.cols(),
          "same_map: shape mismatch");
  RelationView v = relation_view(a.target);
  IntMatrix d = a.matrix - b.matrix;
  for (std::size_t j = 0; j < d.cols(); ++j)
    if (!v.contains(d.column(j))) return false;
  return true;
}

/// A subgroup S of an ambient presented group A, realized as L / rel(A) for a
/// lattice L in A's coordinates that contains the relations of A.
struct Subgroup {
  FinAb group;          // simplified presentation of S
  IntMatrix inclusion;  // ambient.rank() x group.rank()
  Sublattice lattice;   // L
  Simplified presentation;  // L-coordinates -> group generators

  /// Coordinates of an ambient element in the subgroup, or nullopt when the
  /// element does not lie in it.
  [[nodiscard]] auto coordinates(const IntVector& x) const -> std::optional<IntVector> {
    auto y = lattice.coordinates(x);
    if (!y) return std::nullopt;
    return presentation.coordinates(*y);
  }
  [[nodiscard]] auto inclusion_hom(const FinAb& ambient) const -> AbHom {
    return {group, ambient, inclusion};
  }
};

/// Target-side constraint block for kernel computations: the map `matrix`
/// into a group described by `view`.
struct KernelBlock {
  const IntMatrix* matrix;
  const RelationView* view;
};

namespace detail {

inline auto sparse_row(const IntMatrix& m, std::size_t i) -> SparseRow {
  SparseRow r;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) r.emplace_back(j, m(i, j));
  return r;
}

inline auto subgroup_from_lattice(const FinAb& ambient, Sublattice lattice) -> Subgroup {
  const IntMatrix& rel = ambient.relations();
  IntMatrix rel_coords(lattice.rank(), rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    auto y = lattice.coordinates(rel.column(j));
    require(y.has_value(), "map is not well defined on the source relations");
    for (std::size_t i = 0; i < y->size(); ++i) rel_coords(i, j) = (*y)[i];
  }
  Subgroup s;
  s.presentation = simplify(FinAb(lattice.rank(), rel_coords));
  s.group = s.presentation.group;
  s.inclusion = lattice.basis() * s.presentation.from;
  s.lattice = std::move(lattice);
  return s;
}

}  // namespace detail

/// Joint kernel of several maps out of `source`.
inline auto joint_kernel(const FinAb& source, const std::vector<KernelBlock>& blocks)
    -> Subgroup {
  CongruenceLattice cl(source.rank());
  for (const auto& b : blocks) {
    require(b.matrix->cols() == source.rank(), "joint_kernel: column mismatch");
    IntMatrix m = b.view->U ? (*b.view->U) * (*b.matrix) : *b.matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
      cl.constrain(detail::sparse_row(m, i), b.view->moduli[i]);
  }
  return detail::subgroup_from_lattice(source, cl.sublattice());
}

inline auto kernel(const AbHom& h) -> Subgroup {
  RelationView v = relation_view(h.target);
  return joint_kernel(h.source, {KernelBlock{&h.matrix, &v}});
}

struct Image {
  FinAb group;
  AbHom inclusion;  // group -> h.target
};

inline auto image(const AbHom& h) -> Image {
  Subgroup k = kernel(h);
  Simplified s = simplify(FinAb(h.source.rank(), k.lattice.basis()));
  return {s.group, AbHom(s.group, h.target, h.matrix * s.from)};
}

struct Quotient {
  FinAb group;
  AbHom projection;      // ambient -> group
  Simplified presentation;
};

/// g / <sub>, where sub's columns are elements of g.
inline auto quotient(const FinAb& g, const IntMatrix& sub) -> Quotient {
  require(sub.rows() == g.rank() || sub.cols() == 0, "quotient: generator length mismatch");
  IntMatrix rel = sub.cols() ? g.relations().hstack(sub) : g.relations();
  Simplified s = simplify(FinAb(g.rank(), rel));
  return {s.group, AbHom(g, s.group, s.to), s};
}

inline auto cokernel(const AbHom& h) -> Quotient { return quotient(h.target, h.matrix); }

inline auto is_injective(const AbHom& h) -> bool { return kernel(h).group.is_trivial(); }
inline auto is_surjective(const AbHom& h) -> bool { return cokernel(h).group.is_trivial(); }
inline auto is_isomorphism(const AbHom& h) -> bool {
  return is_injective(h) && is_surjective(h);
}

/// Joint fixed points {x : e(x) = x for all e}.
inline auto fixed_subgroup(const FinAb& g, const std::vector<IntMatrix>& endos) -> Subgroup {
  RelationView v = relation_view(g);
  std::vector<IntMatrix> diffs;
  diffs.reserve(endos.size());
  for (const auto& e : endos) {
    require(e.rows() == g.rank() && e.cols() == g.rank(),
            "fixed_subgroup: endomorphism has the wrong shape");
    diffs.push_back(e - IntMatrix::identity(g.rank()));
  }
  std::vector<KernelBlock> blocks;
  for (const auto& d : diffs) blocks.push_back({&d, &v});
  return joint_kernel(g, blocks);
}

/// g / <e(x) - x>.
inline auto coinvariants(const FinAb& g, const std::vector<IntMatrix>& endos) -> Quotient {
  IntMatrix gens(g.rank(), 0);
  for (const auto& e : endos) {
    require(e.rows() == g.rank() && e.cols() == g.rank(),
            "coinvariants: endomorphism has the wrong shape");
    gens = gens.hstack(e - IntMatrix::identity(g.rank()));
  }
  return quotient(g, gens);
}

struct NormMap {
  Quotient coinvariants;
  Subgroup invariants;
  AbHom map;  // coinvariants.group -> invariants.group
  bool is_isomorphism = false;
};

/// The map from coinvariants to invariants induced by x -> sum_q q x. The
/// endomorphisms must be the full image of a finite group action.
inline auto norm_map(const FinAb& g, const std::vector<IntMatrix>& action) -> NormMap {
  require(!action.empty(), "norm_map: empty action");
  for (const auto& a : action)
    for (const auto& b : action) {
      AbHom ab(g, g, a * b);
      bool found = false;
      for (const auto& c : action)
        if (same_map(ab, AbHom(g, g, c))) {
          found = true;
          break;
        }
      require(found, "norm_map: endomorphisms are not closed under composition");
    }
  IntMatrix n(g.rank(), g.rank());
  for (const auto& a : action) n = n + a;
  NormMap out{coinvariants(g, action), fixed_subgroup(g, action), {}, false};
  const IntMatrix& from = out.coinvariants.presentation.from;
  IntMatrix m(out.invariants.group.rank(), from.cols());
  for (std::size_t j = 0; j < from.cols(); ++j) {
    auto y = out.invariants.coordinates(n * from.column(j));
    ensure(y.has_value(), "norm of an element is not invariant");
    m.set_column(j, *y);
  }
  out.map = AbHom(out.coinvariants.group, out.invariants.group, m);
  out.is_isomorphism = is_isomorphism(out.map);
  return out;
}

/// ker(out) / im(in) for a pair of composable maps X -in-> Y -out-> Z.
struct Homology {
  FinAb group;
  IntMatrix representatives;  // Y-coordinates, one column per generator
  Subgroup cycles;
  Simplified presentation;  // cycle coordinates -> homology generators

  /// Homology-class coordinates of a cycle, reduced modulo generator orders.
  [[nodiscard]] auto coordinates(const IntVector& cycle) const -> IntVector {
    auto y = cycles.coordinates(cycle);
    ensure(y.has_value(), "Homology::coordinates: element is not a cycle");
    return presentation.coordinates(*y);
  }
  [[nodiscard]] auto divisors() const -> IntVector { return group.divisors(); }
};

inline auto homology(const AbHom& in, const AbHom& out) -> Homology {
  require(in.target.rank() == out.source.rank(), "homology: maps are not composable");
  Homology h;
  h.cycles = kernel(out);
  IntMatrix bd(h.cycles.group.rank(), in.matrix.cols());
  for (std::size_t j = 0; j < in.matrix.cols(); ++j) {
    auto y = h.cycles.coordinates(in.matrix.column(j));
    require(y.has_value(), "homology: composite of the two maps is nonzero");
    bd.set_column(j, *y);
  }
  Quotient q = quotient(h.cycles.group, bd);
  h.group = q.group;
  h.presentation = q.presentation;
  h.representatives = h.cycles.inclusion * q.presentation.from;
  return h;
}

/// Homology of Z^p -d_in-> Z^n -d_out-> Z^k with coefficients Z/modulus
/// (modulus 0 means Z). Coefficients are realized by adjoining modulus times
/// the identity to every relation module.
inline auto homology_at(const IntMatrix& d_in, const IntMatrix& d_out,
                        const Integer& modulus) -> Homology {
  require(d_in.rows() == d_out.cols(), "homology_at: non-composable dimensions");
  FinAb x = FinAb::uniform(d_in.cols(), modulus);
  FinAb y = FinAb::uniform(d_in.rows(), modulus);
  FinAb z = FinAb::uniform(d_out.rows(), modulus);
  return homology(AbHom(x, y, d_in), AbHom(y, z, d_out));
}

/// Matrix of the endomorphism of a homology group induced by a chain map
/// `chain` on the middle term.
inline auto induced_endomorphism(const Homology& h, const IntMatrix& chain) -> AbHom {
  IntMatrix m(h.group.rank(), h.group.rank());
  for (std::size_t j = 0; j < h.group.rank(); ++j)
    m.set_column(j, h.coordinates(chain * h.representatives.column(j)));
  return {h.group, h.group, m};
}

/// Map between two homology groups induced by a chain map from the middle
/// term of `from` to the middle term of `to`.
inline auto induced_map(const Homology& from, const Homology& to, const IntMatrix& chain)
    -> AbHom {
  IntMatrix m(to.group.rank(), from.group.rank());
  for (std::size_t j = 0; j < from.group.rank(); ++j)
    m.set_column(j, to.coordinates(chain * from.representatives.column(j)));
  return {from.group, to.group, m};
}

/// Is multiplication by n an automorphism of g?
inline auto is_invertible_in(const Integer& n, const FinAb& g) -> bool {
  return is_isomorphism(AbHom(g, g, IntMatrix::scalar(g.rank(), n)));
}

}  // namespace eqhom
