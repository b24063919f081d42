#pragma once

// The group ring Z[t, t^-1] of the infinite cyclic group, the periodic
// resolution of its augmentation ideal I over Z/2 acting by t -> t^-1, and the
// cohomology HH^n_{Z/2}(Z, Z) read off from it.

#include "eqhom/finab.hpp"
#include "eqhom/qg_module.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace eqhom {

class LaurentPoly {
 public:
  using Exponent = std::int64_t;

  LaurentPoly() = default;
  LaurentPoly(const Integer& c) { add_term(0, c); }  // NOLINT: constants convert
  static auto monomial(const Integer& c, Exponent e) -> LaurentPoly {
    LaurentPoly p;
    p.add_term(e, c);
    return p;
  }
  static auto t(Exponent e = 1) -> LaurentPoly { return monomial(1, e); }

  [[nodiscard]] auto terms() const -> const std::map<Exponent, Integer>& { return terms_; }
  [[nodiscard]] auto is_zero() const -> bool { return terms_.empty(); }
  [[nodiscard]] auto coefficient(Exponent e) const -> Integer {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Sum of coefficients: the augmentation Z[t, t^-1] -> Z.
  [[nodiscard]] auto augmentation() const -> Integer {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// t -> t^-1.
  [[nodiscard]] auto conjugate() const -> LaurentPoly {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.add_term(-e, c);
    return p;
  }

  void add_term(Exponent e, const Integer& c) {
    if (c == 0) return;
    Integer& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  auto operator+=(const LaurentPoly& o) -> LaurentPoly& {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  auto operator-=(const LaurentPoly& o) -> LaurentPoly& {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend auto operator+(LaurentPoly a, const LaurentPoly& b) -> LaurentPoly { return a += b; }
  friend auto operator-(LaurentPoly a, const LaurentPoly& b) -> LaurentPoly { return a -= b; }
  friend auto operator-(const LaurentPoly& a) -> LaurentPoly { return LaurentPoly() - a; }
  friend auto operator*(const LaurentPoly& a, const LaurentPoly& b) -> LaurentPoly {
    LaurentPoly p;
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) p.add_term(e1 + e2, c1 * c2);
    return p;
  }
  friend auto operator==(const LaurentPoly& a, const LaurentPoly& b) -> bool {
    return a.terms_ == b.terms_;
  }

  [[nodiscard]] auto to_string() const -> std::string {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      Integer mag = abs(c);
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      const bool bare = e != 0 && mag == 1;
      if (!bare) out += mag.get_str();
      if (e != 0) {
        out += "t";
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  std::map<Exponent, Integer> terms_;
};

/// x + y s in the free module on {1, s}; t^k acts on both coordinates by
/// multiplication, and s t^k = t^-k s.
struct ResolutionTerm {
  LaurentPoly x;
  LaurentPoly y;

  friend auto operator+(const ResolutionTerm& a, const ResolutionTerm& b) -> ResolutionTerm {
    return {a.x + b.x, a.y + b.y};
  }
  friend auto operator==(const ResolutionTerm& a, const ResolutionTerm& b) -> bool {
    return a.x == b.x && a.y == b.y;
  }
  [[nodiscard]] auto is_zero() const -> bool { return x.is_zero() && y.is_zero(); }
  [[nodiscard]] auto to_string() const -> std::string {
    return "(" + x.to_string() + ") + (" + y.to_string() + ")s";
  }
};

/// Left multiplication by an element of Z[t, t^-1].
inline auto scale(const LaurentPoly& p, const ResolutionTerm& v) -> ResolutionTerm {
  return {p * v.x, p * v.y};
}

/// s (x + y s) = conj(y) + conj(x) s.
inline auto s_action(const ResolutionTerm& v) -> ResolutionTerm {
  return {v.y.conjugate(), v.x.conjugate()};
}

/// x + y s -> (x - t^-1 y)(t - 1), landing in the augmentation ideal.
inline auto epsilon(const ResolutionTerm& v) -> LaurentPoly {
  return (v.x - LaurentPoly::t(-1) * v.y) * (LaurentPoly::t() - LaurentPoly(1));
}

/// d_i(x + y s) = x (1 + t s) + y t^-1 (1 + t s) for odd i and
/// x (1 - t s) - y t^-1 (1 - t s) for even i.
inline auto d(std::size_t i, const ResolutionTerm& v) -> ResolutionTerm {
  require(i >= 1, "d: degree must be at least 1");
  const LaurentPoly t = LaurentPoly::t(), tinv = LaurentPoly::t(-1);
  if (i % 2 == 1) return {v.x + tinv * v.y, t * v.x + v.y};
  return {v.x - tinv * v.y, -(t * v.x) + v.y};
}

struct ResolutionCheck {
  bool augmentation_kills_d1 = true;  // epsilon o d_1 = 0
  bool composites_vanish = true;      // d_i o d_{i+1} = 0
  bool g_equivariant = true;          // d_i(t v) = t d_i(v), epsilon likewise
  bool q_equivariant = true;          // d_i(s v) = s d_i(v), epsilon(s v) = conj(epsilon(v))

  [[nodiscard]] auto all() const -> bool {
    return augmentation_kills_d1 && composites_vanish && g_equivariant && q_equivariant;
  }
};

/// Checks the resolution on t^k and t^k s for |k| <= max_exponent and all
/// differentials d_1 .. d_{max_degree}.
inline auto check_resolution(std::size_t max_degree, LaurentPoly::Exponent max_exponent)
    -> ResolutionCheck {
  ResolutionCheck r;
  const LaurentPoly t = LaurentPoly::t();
  std::vector<ResolutionTerm> sample;
  for (auto k = -max_exponent; k <= max_exponent; ++k) {
    sample.push_back({LaurentPoly::t(k), {}});
    sample.push_back({{}, LaurentPoly::t(k)});
  }
  for (const auto& v : sample) {
    if (!epsilon(d(1, v)).is_zero()) r.augmentation_kills_d1 = false;
    if (!(epsilon(scale(t, v)) == t * epsilon(v))) r.g_equivariant = false;
    if (!(epsilon(s_action(v)) == epsilon(v).conjugate())) r.q_equivariant = false;
    for (std::size_t i = 1; i <= max_degree; ++i) {
      if (!d(i, d(i + 1, v)).is_zero()) r.composites_vanish = false;
      if (!(d(i, scale(t, v)) == scale(t, d(i, v)))) r.g_equivariant = false;
      if (!(d(i, s_action(v)) == s_action(d(i, v)))) r.q_equivariant = false;
    }
  }
  return r;
}

namespace detail {

inline auto basis_term(std::size_t j) -> ResolutionTerm {
  return j == 0 ? ResolutionTerm{LaurentPoly(1), {}} : ResolutionTerm{{}, LaurentPoly(1)};
}

/// A G-map f from the free module on {1, s} to the trivial module Z is fixed
/// by its values (a, b) on 1 and s, and f(x + y s) = aug(x) a + aug(y) b.
/// Returns the row vector of f(v) in terms of (a, b).
inline auto evaluation_row(const ResolutionTerm& v) -> IntVector {
  return {v.x.augmentation(), v.y.augmentation()};
}

}  // namespace detail

/// Matrix of f -> f o d_i from Hom_G(P_{i-1}, Z) to Hom_G(P_i, Z), both in
/// (a, b) coordinates.
inline auto pullback_matrix(std::size_t i) -> IntMatrix {
  IntMatrix m(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    IntVector row = detail::evaluation_row(d(i, detail::basis_term(j)));
    m(j, 0) = row[0];
    m(j, 1) = row[1];
  }
  return m;
}

/// Matrix of (s f)(v) = s f(s^-1 v) = f(s v) on Hom_G(P_i, Z); Z is trivial.
inline auto hom_s_action() -> IntMatrix {
  IntMatrix m(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    IntVector row = detail::evaluation_row(s_action(detail::basis_term(j)));
    m(j, 0) = row[0];
    m(j, 1) = row[1];
  }
  return m;
}

struct InducedComplex {
  SubComplex complex;        // Hom_G(P_n, Z) inside Z^2, fixed by s
  std::vector<Integer> maps;  // X^n -> X^{n+1} on the rank-one invariants, n < N
};

/// Hom_G(P, Z)^Q through degree N.
inline auto induced_cochain_complex(std::size_t top) -> InducedComplex {
  require(top >= 1, "induced_cochain_complex: need at least degree 1");
  InducedComplex out;
  SubComplex& c = out.complex;
  c.cochain = true;
  const IntMatrix s = hom_s_action();
  for (std::size_t n = 0; n <= top + 1; ++n) {
    c.ambient.push_back(FinAb::free(2));
    if (n <= top) {
      c.differential.push_back(pullback_matrix(n + 1));
      c.subgroups.push_back(fixed_subgroup(c.ambient[n], {s}));
    }
  }
  for (std::size_t n = 0; n < top; ++n) {
    AbHom h = c.restricted(n);
    ensure(h.matrix.rows() == 1 && h.matrix.cols() == 1,
           "induced_cochain_complex: invariant homs are not of rank one");
    out.maps.push_back(abs(h.matrix(0, 0)));
  }
  return out;
}

/// Ext^n in the Q-G module category of I into Z.
inline auto ext_augmentation_ideal(std::size_t n) -> FinAb {
  return induced_cochain_complex(n + 1).complex.homology(n).group;
}

/// Der_Q(Z, Z) for t -> t^-1 on Z and trivial actions on the coefficients.
/// A derivation into a trivial module is a homomorphism, fixed by c = d(t);
/// Q-equivariance demands d(conj(t)) = d(t), i.e. (e - 1) c = 0 where t^e is
/// the image of t.
struct QDerivations {
  IntMatrix constraint;  // 1 x 1
  FinAb group;
};

inline auto der_q_z_on_z() -> QDerivations {
  const LaurentPoly image = LaurentPoly::t().conjugate();
  ensure(image.terms().size() == 1 && image.terms().begin()->second == 1,
         "der_q_z_on_z: the action does not send t to a power of t");
  const Integer e = image.terms().begin()->first;
  QDerivations out;
  out.constraint = IntMatrix::scalar(1, e - 1);
  out.group = kernel(AbHom(FinAb::free(1), FinAb::free(1), out.constraint)).group;
  return out;
}

/// HH^0 = (Z^G)^Q = Z, HH^1 = Der_Q(Z, Z) (no inner derivations into a trivial
/// module), HH^n = Ext^{n-1}(I, Z) for n >= 2.
inline auto hh_z2_on_z(std::size_t n) -> FinAb {
  if (n == 0) {
    const FinAb z = FinAb::free(1);
    return fixed_subgroup(z, {IntMatrix::identity(1)}).group;
  }
  if (n == 1) return der_q_z_on_z().group;
  return ext_augmentation_ideal(n - 1);
}

/// Number of Q-equivalence classes of extensions of Z by Z: |HH^2|.
inline auto extension_class_count() -> Integer {
  auto order = hh_z2_on_z(2).order();
  ensure(order.has_value(), "extension_class_count: HH^2 is infinite");
  return *order;
}

}  // namespace eqhom
