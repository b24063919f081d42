#pragma once

// Finite groups as multiplication tables, homomorphisms, actions by
// automorphisms, semidirect products, orbits, normal closures and quotients.
//
// Element 0 is always the identity.

#include "eqhom/error.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace eqhom {

using Element = std::size_t;
using ElementSet = std::vector<Element>;  // kept sorted

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<Element>>{{0}}) {}

  /// Validates the table: closure, identity 0, inverses, associativity.
  explicit FiniteGroup(const std::vector<std::vector<Element>>& table,
                       std::vector<std::string> labels = {})
      : order_(table.size()), labels_(std::move(labels)) {
    require(order_ >= 1, "FiniteGroup: empty table");
    mul_.resize(order_ * order_);
    for (Element a = 0; a < order_; ++a) {
      require(table[a].size() == order_, "FiniteGroup: table row " + std::to_string(a) +
                                             " has the wrong length");
      for (Element b = 0; b < order_; ++b) {
        require(table[a][b] < order_, "FiniteGroup: table entry out of range");
        mul_[a * order_ + b] = table[a][b];
      }
    }
    require(labels_.empty() || labels_.size() == order_, "FiniteGroup: wrong label count");
    finish();
  }

  [[nodiscard]] auto order() const -> std::size_t { return order_; }
  [[nodiscard]] static auto identity() -> Element { return 0; }
  [[nodiscard]] auto mul(Element a, Element b) const -> Element { return mul_[a * order_ + b]; }
  [[nodiscard]] auto inv(Element a) const -> Element { return inv_[a]; }
  [[nodiscard]] auto conj(Element g, Element x) const -> Element {
    return mul(mul(g, x), inv(g));
  }
  [[nodiscard]] auto label(Element a) const -> std::string {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }
  [[nodiscard]] auto labels() const -> const std::vector<std::string>& { return labels_; }

  [[nodiscard]] auto table() const -> std::vector<std::vector<Element>> {
    std::vector<std::vector<Element>> t(order_, std::vector<Element>(order_));
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b) t[a][b] = mul(a, b);
    return t;
  }

  [[nodiscard]] auto is_abelian() const -> bool {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  [[nodiscard]] auto element_order(Element a) const -> std::size_t {
    std::size_t k = 1;
    for (Element x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  auto operator==(const FiniteGroup& o) const -> bool { return mul_ == o.mul_; }

 private:
  void finish() {
    for (Element a = 0; a < order_; ++a)
      require(mul(0, a) == a && mul(a, 0) == a, "FiniteGroup: element 0 is not the identity");
    inv_.assign(order_, order_);
    for (Element a = 0; a < order_; ++a) {
      for (Element b = 0; b < order_; ++b)
        if (mul(a, b) == 0) {
          inv_[a] = b;
          break;
        }
      require(inv_[a] < order_ && mul(inv_[a], a) == 0,
              "FiniteGroup: element " + std::to_string(a) + " has no two-sided inverse");
    }
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b) {
        const Element ab = mul(a, b);
        for (Element c = 0; c < order_; ++c)
          require(mul(ab, c) == mul(a, mul(b, c)), "FiniteGroup: table is not associative");
      }
  }

  std::size_t order_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
};

struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<Element> map{0};

  GroupHom() = default;
  GroupHom(FiniteGroup s, FiniteGroup t, std::vector<Element> m)
      : source(std::move(s)), target(std::move(t)), map(std::move(m)) {
    require(map.size() == source.order(), "GroupHom: map has the wrong length");
    for (Element x : map) require(x < target.order(), "GroupHom: image out of range");
    require(map[0] == 0, "GroupHom: identity not preserved");
    for (Element a = 0; a < source.order(); ++a)
      for (Element b = 0; b < source.order(); ++b)
        require(map[source.mul(a, b)] == target.mul(map[a], map[b]),
                "GroupHom: map is not multiplicative");
  }

  auto operator()(Element x) const -> Element { return map[x]; }
};

/// Is `perm` an automorphism of g?
inline auto is_automorphism(const FiniteGroup& g, const std::vector<Element>& perm) -> bool {
  const std::size_t n = g.order();
  if (perm.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Element x : perm) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (perm[g.mul(a, b)] != g.mul(perm[a], perm[b])) return false;
  return true;
}

/// Action of Q on G by automorphisms, stored as act(q, g).
class GroupAction {
 public:
  GroupAction(FiniteGroup q, FiniteGroup g, std::vector<std::vector<Element>> act)
      : q_(std::move(q)), g_(std::move(g)), act_(std::move(act)) {
    require(act_.size() == q_.order(), "GroupAction: need one table per element of Q");
    for (Element x = 0; x < q_.order(); ++x)
      require(is_automorphism(g_, act_[x]),
              "GroupAction: table for q = " + std::to_string(x) + " is not an automorphism");
    for (Element y = 0; y < g_.order(); ++y)
      require(act_[0][y] == y, "GroupAction: identity of Q does not act trivially");
    for (Element a = 0; a < q_.order(); ++a)
      for (Element b = 0; b < q_.order(); ++b)
        for (Element y = 0; y < g_.order(); ++y)
          require(act_[q_.mul(a, b)][y] == act_[a][act_[b][y]],
                  "GroupAction: tables do not compose like Q");
  }

  static auto trivial(const FiniteGroup& q, const FiniteGroup& g) -> GroupAction {
    std::vector<Element> id(g.order());
    std::iota(id.begin(), id.end(), Element{0});
    return {q, g, std::vector<std::vector<Element>>(q.order(), id)};
  }

  [[nodiscard]] auto q_group() const -> const FiniteGroup& { return q_; }
  [[nodiscard]] auto g_group() const -> const FiniteGroup& { return g_; }
  [[nodiscard]] auto act(Element q, Element g) const -> Element { return act_[q][g]; }
  [[nodiscard]] auto table(Element q) const -> const std::vector<Element>& { return act_[q]; }
  [[nodiscard]] auto tables() const -> const std::vector<std::vector<Element>>& { return act_; }

  [[nodiscard]] auto is_trivial() const -> bool {
    for (Element q = 0; q < q_.order(); ++q)
      for (Element g = 0; g < g_.order(); ++g)
        if (act_[q][g] != g) return false;
    return true;
  }

  /// Free on G minus the identity: no nonidentity q fixes a nonidentity g.
  [[nodiscard]] auto is_free_off_identity() const -> bool {
    for (Element q = 1; q < q_.order(); ++q)
      for (Element g = 1; g < g_.order(); ++g)
        if (act_[q][g] == g) return false;
    return true;
  }

 private:
  FiniteGroup q_;
  FiniteGroup g_;
  std::vector<std::vector<Element>> act_;
};

inline auto cyclic(std::size_t n) -> FiniteGroup {
  require(n >= 1, "cyclic: order must be positive");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(t);
}

/// Dihedral group of order 2n: index k is r^k, index n + k is r^k s.
inline auto dihedral(std::size_t n) -> FiniteGroup {
  require(n >= 1, "dihedral: n must be positive");
  const std::size_t N = 2 * n;
  std::vector<std::vector<Element>> t(N, std::vector<Element>(N));
  std::vector<std::string> labels(N);
  for (Element x = 0; x < N; ++x) {
    const std::size_t a = x % n, e = x / n;
    labels[x] = (a == 0 && e == 1) ? "s" : "r^" + std::to_string(a) + (e ? "s" : "");
    for (Element y = 0; y < N; ++y) {
      const std::size_t b = y % n, f = y / n;
      // r^a s^e r^b s^f = r^(a + (-1)^e b) s^(e + f)
      const std::size_t rot = e ? (a + n - b) % n : (a + b) % n;
      t[x][y] = ((e + f) % 2) * n + rot;
    }
  }
  labels[0] = "e";
  return FiniteGroup(t, labels);
}

/// Pairs (a, b) with index a + |A| b and componentwise multiplication.
inline auto direct_product(const FiniteGroup& a, const FiniteGroup& b) -> FiniteGroup {
  const std::size_t na = a.order(), N = na * b.order();
  std::vector<std::vector<Element>> t(N, std::vector<Element>(N));
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y)
      t[x][y] = a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
  return FiniteGroup(t);
}

struct SemidirectProduct {
  FiniteGroup group;
  GroupHom embed_g;     // g -> (g, e)
  GroupHom embed_q;     // q -> (e, q)
  GroupHom projection;  // (g, q) -> q
  [[nodiscard]] auto index(Element g, Element q) const -> Element {
    return g + embed_g.source.order() * q;
  }
};

/// G x| Q with (g1, q1)(g2, q2) = (g1 q1(g2), q1 q2); (g, q) has index g + |G| q.
inline auto semidirect_product(const GroupAction& a) -> SemidirectProduct {
  const FiniteGroup& g = a.g_group();
  const FiniteGroup& q = a.q_group();
  const std::size_t ng = g.order(), N = ng * q.order();
  std::vector<std::vector<Element>> t(N, std::vector<Element>(N));
  for (Element x = 0; x < N; ++x)
    for (Element y = 0; y < N; ++y) {
      const Element g1 = x % ng, q1 = x / ng, g2 = y % ng, q2 = y / ng;
      t[x][y] = g.mul(g1, a.act(q1, g2)) + ng * q.mul(q1, q2);
    }
  FiniteGroup e(t);
  std::vector<Element> eg(ng), eq(q.order()), pr(N);
  for (Element x = 0; x < ng; ++x) eg[x] = x;
  for (Element x = 0; x < q.order(); ++x) eq[x] = ng * x;
  for (Element x = 0; x < N; ++x) pr[x] = x / ng;
  return {e, GroupHom(g, e, eg), GroupHom(q, e, eq), GroupHom(e, q, pr)};
}

inline auto semidirect_product(const FiniteGroup& g, const FiniteGroup& q,
                               const GroupAction& a) -> SemidirectProduct {
  require(a.g_group() == g && a.q_group() == q,
          "semidirect_product: action does not act on the given groups");
  return semidirect_product(a);
}

/// Z/2 acting on an abelian group by inversion.
inline auto inversion_action(const FiniteGroup& g) -> GroupAction {
  require(g.is_abelian(), "inversion_action: group is not abelian");
  std::vector<Element> id(g.order()), inv(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    id[x] = x;
    inv[x] = g.inv(x);
  }
  return {cyclic(2), g, {id, inv}};
}

/// Extends automorphism images of generators of Q to a full action, checking
/// that the assignment is a homomorphism Q -> Aut(G).
inline auto action_from_generator_images(const FiniteGroup& q, const FiniteGroup& g,
                                         const std::vector<Element>& generators,
                                         const std::vector<std::vector<Element>>& images)
    -> GroupAction {
  require(generators.size() == images.size(),
          "action_from_generator_images: one image per generator required");
  for (std::size_t k = 0; k < images.size(); ++k) {
    require(generators[k] < q.order(), "action_from_generator_images: generator out of range");
    require(is_automorphism(g, images[k]), "action_from_generator_images: image " +
                                               std::to_string(k) + " is not an automorphism");
  }
  const std::size_t n = g.order();
  std::vector<std::vector<Element>> act(q.order());
  act[0].resize(n);
  std::iota(act[0].begin(), act[0].end(), Element{0});
  std::queue<Element> todo;
  todo.push(0);
  while (!todo.empty()) {
    Element x = todo.front();
    todo.pop();
    for (std::size_t k = 0; k < generators.size(); ++k) {
      Element y = q.mul(x, generators[k]);
      std::vector<Element> t(n);
      for (Element z = 0; z < n; ++z) t[z] = act[x][images[k][z]];
      if (act[y].empty()) {
        act[y] = std::move(t);
        todo.push(y);
      } else {
        require(act[y] == t, "action_from_generator_images: images do not extend to a "
                             "homomorphism from Q");
      }
    }
  }
  for (const auto& t : act)
    require(!t.empty(), "action_from_generator_images: generators do not generate Q");
  try {
    return {q, g, act};
  } catch (const InvalidInput&) {
    throw InvalidInput(
        "action_from_generator_images: images do not extend to a homomorphism from Q");
  }
}

/// Orbit of g listed as q(g) for q in ascending index order, first occurrences.
inline auto orbit(const GroupAction& a, Element g) -> std::vector<Element> {
  std::vector<Element> out;
  for (Element q = 0; q < a.q_group().order(); ++q) {
    Element y = a.act(q, g);
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
  }
  return out;
}

inline auto isotropy(const GroupAction& a, Element g) -> ElementSet {
  ElementSet out;
  for (Element q = 0; q < a.q_group().order(); ++q)
    if (a.act(q, g) == g) out.push_back(q);
  return out;
}

/// All orbits, ordered by their smallest element.
inline auto orbits(const GroupAction& a) -> std::vector<std::vector<Element>> {
  std::vector<std::vector<Element>> out;
  std::vector<char> seen(a.g_group().order(), 0);
  for (Element g = 0; g < a.g_group().order(); ++g) {
    if (seen[g]) continue;
    out.push_back(orbit(a, g));
    for (Element y : out.back()) seen[y] = 1;
  }
  return out;
}

/// Smallest subgroup containing the seeds.
inline auto generated_subgroup(const FiniteGroup& g, const std::vector<Element>& seeds)
    -> ElementSet {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : seeds) {
      Element y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

inline auto is_subgroup(const FiniteGroup& g, const ElementSet& s) -> bool {
  if (s.empty() || !std::binary_search(s.begin(), s.end(), Element{0})) return false;
  for (Element a : s)
    for (Element b : s)
      if (!std::binary_search(s.begin(), s.end(), g.mul(a, g.inv(b)))) return false;
  return true;
}

inline auto is_normal_subgroup(const FiniteGroup& g, const ElementSet& s) -> bool {
  if (!is_subgroup(g, s)) return false;
  for (Element x = 0; x < g.order(); ++x)
    for (Element a : s)
      if (!std::binary_search(s.begin(), s.end(), g.conj(x, a))) return false;
  return true;
}

/// Smallest normal subgroup containing the seeds.
inline auto normal_closure(const FiniteGroup& g, const std::vector<Element>& seeds)
    -> ElementSet {
  std::vector<Element> conjugates;
  for (Element s : seeds) {
    require(s < g.order(), "normal_closure: seed out of range");
    for (Element x = 0; x < g.order(); ++x) conjugates.push_back(g.conj(x, s));
  }
  std::sort(conjugates.begin(), conjugates.end());
  conjugates.erase(std::unique(conjugates.begin(), conjugates.end()), conjugates.end());
  return generated_subgroup(g, conjugates);
}

struct QuotientGroup {
  FiniteGroup group;
  GroupHom projection;
  std::vector<Element> representatives;  // smallest element of each coset
};

/// G / N; cosets are numbered by their smallest element, so the identity
/// coset is 0.
inline auto quotient_group(const FiniteGroup& g, const ElementSet& n) -> QuotientGroup {
  require(is_normal_subgroup(g, n), "quotient_group: subset is not a normal subgroup");
  std::vector<std::size_t> coset(g.order(), g.order());
  std::vector<Element> reps;
  for (Element x = 0; x < g.order(); ++x) {
    if (coset[x] != g.order()) continue;
    for (Element a : n) coset[g.mul(x, a)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t k = reps.size();
  std::vector<std::vector<Element>> t(k, std::vector<Element>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i][j] = coset[g.mul(reps[i], reps[j])];
  FiniteGroup q(t);
  std::vector<Element> proj(coset.begin(), coset.end());
  return {q, GroupHom(g, q, proj), reps};
}

/// An isomorphism a -> b as an element map, found by backtracking over the
/// images of a generating set. Restricted to order <= 16.
inline auto find_isomorphism(const FiniteGroup& a, const FiniteGroup& b)
    -> std::optional<std::vector<Element>> {
  require(a.order() <= 16 && b.order() <= 16, "find_isomorphism: orders above 16");
  if (a.order() != b.order()) return std::nullopt;
  const std::size_t n = a.order();
  std::vector<Element> gens;
  ElementSet span{0};
  for (Element x = 1; x < n && span.size() < n; ++x)
    if (!std::binary_search(span.begin(), span.end(), x)) {
      gens.push_back(x);
      span = generated_subgroup(a, gens);
    }
  // Express every element of a as a word: element = parent * generator.
  std::vector<std::pair<Element, std::size_t>> word(n, {0, 0});
  std::vector<char> seen(n, 0);
  std::vector<Element> order_bfs{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < order_bfs.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Element y = a.mul(order_bfs[i], gens[k]);
      if (!seen[y]) {
        seen[y] = 1;
        word[y] = {order_bfs[i], k};
        order_bfs.push_back(y);
      }
    }
  std::vector<Element> img(gens.size());
  std::function<std::optional<std::vector<Element>>(std::size_t)> search =
      [&](std::size_t k) -> std::optional<std::vector<Element>> {
    if (k == gens.size()) {
      std::vector<Element> f(n, 0);
      for (std::size_t i = 1; i < n; ++i) {
        Element y = order_bfs[i];
        f[y] = b.mul(f[word[y].first], img[word[y].second]);
      }
      std::vector<char> hit(n, 0);
      for (Element v : f) {
        if (hit[v]) return std::nullopt;
        hit[v] = 1;
      }
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return std::nullopt;
      return f;
    }
    for (Element c = 1; c < n; ++c) {
      if (b.element_order(c) != a.element_order(gens[k])) continue;
      img[k] = c;
      if (auto r = search(k + 1)) return r;
    }
    return std::nullopt;
  };
  if (n == 1) return std::vector<Element>{0};
  return search(0);
}

inline auto are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) -> bool {
  return find_isomorphism(a, b).has_value();
}

}  // namespace eqhom
