#pragma once

// Factor sets of extensions 0 -> K -> E -> H -> 1 with abelian K, compatible
// Q-actions, and their classification by HH^2_Q(H, K).
//
// K is written additively; the H-action on K is T_x(a) = x_s a x_s^{-1}.
// E is K x H as a set with (a, x)(b, y) = (a + T_x(b) + f(x, y), xy), and
// (a, x) has index a + |K| x where a is the index of the K-element.

#include "eqhom/finite_group.hpp"
#include "eqhom/qg_module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqhom {

/// Elements of a finite presented abelian group, numbered in mixed radix over
/// the orders of its simplified generators. The zero element has index 0.
class FiniteElements {
 public:
  explicit FiniteElements(const FinAb& k) : simplified_(simplify(k)) {
    std::size_t count = 1;
    for (const auto& d : simplified_.moduli) {
      require(d != 0, "FiniteElements: group is infinite");
      require(d.fits_ulong_p() && count <= (std::size_t{1} << 24) / d.get_ui(),
              "FiniteElements: group too large to enumerate");
      count *= d.get_ui();
    }
    size_ = count;
  }

  [[nodiscard]] auto size() const -> std::size_t { return size_; }

  /// Canonical ambient representative of element i.
  [[nodiscard]] auto element(std::size_t i) const -> IntVector {
    IntVector y(simplified_.moduli.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
      const std::size_t d = simplified_.moduli[k].get_ui();
      y[k] = static_cast<unsigned long>(i % d);
      i /= d;
    }
    return simplified_.from * y;
  }

  [[nodiscard]] auto index_of(const IntVector& x) const -> std::size_t {
    IntVector y = simplified_.coordinates(x);
    std::size_t idx = 0;
    for (std::size_t k = y.size(); k-- > 0;) idx = idx * simplified_.moduli[k].get_ui() + y[k].get_ui();
    return idx;
  }

  /// Canonical ambient representative of x.
  [[nodiscard]] auto canonical(const IntVector& x) const -> IntVector {
    return simplified_.from * simplified_.coordinates(x);
  }

  /// The additive group as a multiplication table.
  [[nodiscard]] auto as_group() const -> FiniteGroup {
    std::vector<IntVector> els(size_);
    for (std::size_t i = 0; i < size_; ++i) els[i] = element(i);
    std::vector<std::vector<Element>> t(size_, std::vector<Element>(size_));
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) {
        IntVector s = els[i];
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += els[j][k];
        t[i][j] = index_of(s);
      }
    return FiniteGroup(t);
  }

 private:
  Simplified simplified_;
  std::size_t size_ = 1;
};

/// f : H x H -> K with values in K's generator coordinates; `module` is K as
/// a Q-H module (its G-group is H).
struct FactorSet {
  QGModule module;
  std::vector<std::vector<IntVector>> values;  // values[x][y]

  [[nodiscard]] auto h_group() const -> const FiniteGroup& { return module.g_group(); }
  [[nodiscard]] auto at(Element x, Element y) const -> const IntVector& { return values[x][y]; }

  static auto zero(const QGModule& k) -> FactorSet {
    const std::size_t n = k.g_group().order();
    return {k, std::vector<std::vector<IntVector>>(n, std::vector<IntVector>(n, IntVector(k.rank())))};
  }

  /// Cochain vector in K^(H^2), block x + |H| y.
  [[nodiscard]] auto as_cochain() const -> IntVector {
    const std::size_t n = h_group().order(), r = module.rank();
    IntVector v(n * n * r);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (std::size_t i = 0; i < r; ++i) v[(x + n * y) * r + i] = values[x][y][i];
    return v;
  }

  static auto from_cochain(const QGModule& k, const IntVector& v) -> FactorSet {
    FactorSet f = zero(k);
    const std::size_t n = k.g_group().order(), r = k.rank();
    require(v.size() == n * n * r, "FactorSet::from_cochain: wrong length");
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (std::size_t i = 0; i < r; ++i) f.values[x][y][i] = v[(x + n * y) * r + i];
    return f;
  }
};

namespace detail {

inline auto vec_add(IntVector a, const IntVector& b) -> IntVector {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline auto vec_sub(IntVector a, const IntVector& b) -> IntVector {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline void check_shape(const FactorSet& f) {
  const std::size_t n = f.h_group().order();
  require(f.values.size() == n, "factor set: table needs |H| rows");
  for (const auto& row : f.values) {
    require(row.size() == n, "factor set: table needs |H| columns");
    for (const auto& v : row)
      require(v.size() == f.module.rank(), "factor set: value has the wrong length");
  }
}

}  // namespace detail

/// Normalization, the 2-cocycle identity and Q-equivariance, checked on all
/// instances.
inline auto validate_factor_set(const FactorSet& f) -> ValidationReport {
  detail::check_shape(f);
  ValidationReport r = validate(f.module);
  if (!r.valid) return r;
  const FiniteGroup& h = f.h_group();
  const QGModule& k = f.module;
  RelationView v = relation_view(k.underlying);
  const std::size_t n = h.order();
  for (Element x = 0; x < n; ++x) {
    if (!v.contains(f.at(0, x))) r.fail("normalization: f(e, " + std::to_string(x) + ") != 0");
    if (!v.contains(f.at(x, 0))) r.fail("normalization: f(" + std::to_string(x) + ", e) != 0");
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        IntVector s = k.g_act[x] * f.at(y, z);
        s = detail::vec_sub(s, f.at(h.mul(x, y), z));
        s = detail::vec_add(s, f.at(x, h.mul(y, z)));
        s = detail::vec_sub(s, f.at(x, y));
        if (!v.contains(s))
          r.fail("cocycle identity fails at (" + std::to_string(x) + ", " + std::to_string(y) +
                 ", " + std::to_string(z) + ")");
      }
  for (Element q = 0; q < k.q_group().order(); ++q)
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        IntVector d = detail::vec_sub(f.at(k.action.act(q, x), k.action.act(q, y)),
                                      k.q_act[q] * f.at(x, y));
        if (!v.contains(d))
          r.fail("equivariance f(q(x), q(y)) = q f(x, y) fails at q = " + std::to_string(q) +
                 ", (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
  return r;
}

struct ExtensionChecks {
  bool order_ok = false;
  bool injection_is_hom = false;
  bool projection_is_hom = false;
  bool exact = false;
  bool q_acts_by_automorphisms = false;
  bool section_normalized = false;
  bool section_equivariant = false;

  [[nodiscard]] auto all() const -> bool {
    return order_ok && injection_is_hom && projection_is_hom && exact &&
           q_acts_by_automorphisms && section_normalized && section_equivariant;
  }
};

struct Extension {
  FiniteGroup group;
  FiniteGroup kernel;                // K as a group
  std::vector<Element> injection;    // K -> E
  std::vector<Element> projection;   // E -> H
  std::vector<Element> section;      // H -> E, x -> (0, x)
  std::vector<std::vector<Element>> q_action;  // q -> automorphism of E
  ExtensionChecks checks;
  bool free_action = false;  // Q acts freely on H minus the identity
};

inline auto build_extension(const FactorSet& f) -> Extension {
  auto report = validate_factor_set(f);
  if (!report.valid) throw InvalidInput("build_extension: " + report.violations.front());
  const QGModule& k = f.module;
  const FiniteGroup& h = f.h_group();
  FiniteElements els(k.underlying);
  const std::size_t nk = els.size(), nh = h.order(), N = nk * nh;
  std::vector<IntVector> kel(nk);
  for (std::size_t i = 0; i < nk; ++i) kel[i] = els.element(i);

  std::vector<std::vector<Element>> table(N, std::vector<Element>(N));
  for (Element u = 0; u < N; ++u)
    for (Element w = 0; w < N; ++w) {
      const std::size_t a = u % nk, x = u / nk, b = w % nk, y = w / nk;
      IntVector s = detail::vec_add(detail::vec_add(kel[a], k.g_act[x] * kel[b]), f.at(x, y));
      table[u][w] = els.index_of(s) + nk * h.mul(x, y);
    }
  Extension e;
  try {
    e.group = FiniteGroup(table);
  } catch (const InvalidInput& err) {
    throw InternalError(std::string("build_extension: product is not a group: ") + err.what());
  }
  e.kernel = els.as_group();
  e.free_action = k.action.is_free_off_identity();
  ExtensionChecks& c = e.checks;
  c.order_ok = e.group.order() == nk * nh;

  e.injection.resize(nk);
  for (std::size_t a = 0; a < nk; ++a) e.injection[a] = a;
  e.projection.resize(N);
  for (Element u = 0; u < N; ++u) e.projection[u] = u / nk;
  e.section.resize(nh);
  for (Element x = 0; x < nh; ++x) e.section[x] = nk * x;

  c.injection_is_hom = true;
  for (std::size_t a = 0; a < nk; ++a)
    for (std::size_t b = 0; b < nk; ++b)
      if (e.injection[e.kernel.mul(a, b)] != e.group.mul(e.injection[a], e.injection[b]))
        c.injection_is_hom = false;
  c.projection_is_hom = true;
  for (Element u = 0; u < N; ++u)
    for (Element w = 0; w < N; ++w)
      if (e.projection[e.group.mul(u, w)] != h.mul(e.projection[u], e.projection[w]))
        c.projection_is_hom = false;
  // Exactness: injection injective, projection surjective, ker = image.
  {
    std::vector<char> hit_k(N, 0), hit_h(nh, 0);
    bool inj = true;
    for (std::size_t a = 0; a < nk; ++a) {
      if (hit_k[e.injection[a]]) inj = false;
      hit_k[e.injection[a]] = 1;
    }
    bool ker_is_image = true;
    for (Element u = 0; u < N; ++u) {
      hit_h[e.projection[u]] = 1;
      if ((e.projection[u] == 0) != static_cast<bool>(hit_k[u])) ker_is_image = false;
    }
    bool surj = std::all_of(hit_h.begin(), hit_h.end(), [](char x) { return x != 0; });
    c.exact = inj && surj && ker_is_image;
  }

  e.q_action.resize(k.q_group().order());
  for (Element q = 0; q < k.q_group().order(); ++q) {
    e.q_action[q].resize(N);
    for (Element u = 0; u < N; ++u) {
      const std::size_t a = u % nk, x = u / nk;
      e.q_action[q][u] = els.index_of(k.q_act[q] * kel[a]) + nk * k.action.act(q, x);
    }
  }
  try {
    GroupAction check(k.q_group(), e.group, e.q_action);
    c.q_acts_by_automorphisms = true;
  } catch (const InvalidInput&) {
    c.q_acts_by_automorphisms = false;
  }
  c.section_normalized = e.section[0] == 0;
  c.section_equivariant = true;
  for (Element q = 0; q < k.q_group().order(); ++q)
    for (Element x = 0; x < nh; ++x)
      if (e.q_action[q][e.section[x]] != e.section[k.action.act(q, x)])
        c.section_equivariant = false;
  if (!c.all()) throw InternalError("build_extension: verification of the extension failed");
  return e;
}

/// A Q-equivariant normalized c : H -> K with f1 - f2 = dc, where
/// dc(x, y) = T_x c(y) - c(xy) + c(x), or nullopt when none exists.
inline auto are_equivalent(const FactorSet& f1, const FactorSet& f2)
    -> std::optional<std::vector<IntVector>> {
  detail::check_shape(f1);
  detail::check_shape(f2);
  const QGModule& k = f1.module;
  require(k.underlying.rank() == f2.module.underlying.rank() &&
              k.g_group() == f2.h_group() && k.q_group() == f2.module.q_group(),
          "are_equivalent: factor sets over different data");
  const FiniteGroup& h = f1.h_group();
  const std::size_t n = h.order(), r = k.rank(), nq = k.q_group().order();
  const std::size_t blocks = n * n + nq * n + 1;
  IntMatrix a(blocks * r, n * r);
  IntVector b(blocks * r);
  const IntMatrix id = IntMatrix::identity(r);
  std::size_t row = 0;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y, ++row) {
      detail::add_block(a, row, y, k.g_act[x]);
      detail::add_block(a, row, h.mul(x, y), id, -1);
      detail::add_block(a, row, x, id);
      IntVector d = detail::vec_sub(f1.at(x, y), f2.at(x, y));
      for (std::size_t i = 0; i < r; ++i) b[row * r + i] = d[i];
    }
  for (Element q = 0; q < nq; ++q)
    for (Element x = 0; x < n; ++x, ++row) {
      detail::add_block(a, row, k.action.act(q, x), id);
      detail::add_block(a, row, x, k.q_act[q], -1);
    }
  detail::add_block(a, row, 0, id);
  FinAb target = detail::power_module(k.underlying, blocks);
  auto sol = solve_integer(a.hstack(target.relations()), b);
  if (!sol) return std::nullopt;
  FiniteElements els(k.underlying);
  std::vector<IntVector> c(n, IntVector(r));
  for (Element x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < r; ++i) c[x][i] = (*sol)[x * r + i];
    c[x] = els.canonical(c[x]);
  }
  return c;
}

/// f - dc for a cochain c : H -> K.
inline auto subtract_coboundary(const FactorSet& f, const std::vector<IntVector>& c) -> FactorSet {
  FactorSet g = f;
  const FiniteGroup& h = f.h_group();
  for (Element x = 0; x < h.order(); ++x)
    for (Element y = 0; y < h.order(); ++y) {
      IntVector dc = detail::vec_add(
          detail::vec_sub(f.module.g_act[x] * c[y], c[h.mul(x, y)]), c[x]);
      g.values[x][y] = detail::vec_sub(f.values[x][y], dc);
    }
  return g;
}

struct Classification {
  QGModule module;
  FinAb group;  // HH^2_Q(H, K)
  std::vector<FactorSet> generators;  // normalized factor set per generator of `group`
  bool free_action = false;
  SubComplex complex;
  Homology homology;

  /// Coordinates of the class of a valid factor set in `group`.
  [[nodiscard]] auto class_of(const FactorSet& f) const -> IntVector {
    auto y = complex.subgroups[2].coordinates(f.as_cochain());
    require(y.has_value(), "class_of: factor set is not Q-equivariant");
    return homology.coordinates(*y);
  }

  /// Normalized factor set representing sum_j coords_j * generator_j.
  [[nodiscard]] auto representative(const IntVector& coords) const -> FactorSet {
    require(coords.size() == generators.size(), "representative: wrong coordinate count");
    const QGModule& k = module;
    FactorSet f = FactorSet::zero(k);
    FiniteElements els(k.underlying);
    for (std::size_t j = 0; j < coords.size(); ++j)
      for (std::size_t x = 0; x < f.values.size(); ++x)
        for (std::size_t y = 0; y < f.values.size(); ++y)
          for (std::size_t i = 0; i < k.rank(); ++i)
            f.values[x][y][i] += coords[j] * generators[j].values[x][y][i];
    for (auto& row : f.values)
      for (auto& v : row) v = els.canonical(v);
    return f;
  }
};

/// HH^2_Q(H, K) with one normalized Q-equivariant factor set per generator.
inline auto classify(const QGModule& k) -> Classification {
  require_valid(k, "classify");
  Classification cl{k, {}, {}, k.action.is_free_off_identity(), invariant_cochain_complex(k, 2),
                    {}};
  cl.homology = cl.complex.homology(2);
  cl.group = cl.homology.group;
  const FiniteGroup& h = k.g_group();
  bool finite = k.underlying.is_finite();
  for (std::size_t j = 0; j < cl.group.rank(); ++j) {
    IntVector cochain = cl.complex.subgroups[2].inclusion * cl.homology.representatives.column(j);
    FactorSet f = FactorSet::from_cochain(k, cochain);
    // A 2-cocycle has f(e, y) = f(e, e) and f(x, e) = T_x f(e, e); subtracting
    // the coboundary of the constant cochain f(e, e) normalizes it.
    const IntVector c0 = f.values[0][0];
    f = subtract_coboundary(f, std::vector<IntVector>(h.order(), c0));
    if (finite) {
      FiniteElements els(k.underlying);
      for (auto& row : f.values)
        for (auto& v : row) v = els.canonical(v);
    }
    cl.generators.push_back(std::move(f));
  }
  return cl;
}

}  // namespace eqhom
