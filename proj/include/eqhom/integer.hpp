#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <tuple>

namespace eqhom {

/// Arbitrary-precision integer used by every exact computation.
using Integer = mpz_class;

inline auto abs_cmp(const Integer& a, const Integer& b) -> int {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

inline auto is_unit(const Integer& a) -> bool {
  return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0;
}

inline auto gcd(const Integer& a, const Integer& b) -> Integer {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline auto lcm(const Integer& a, const Integer& b) -> Integer {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Returns (g, s, t) with g = s*a + t*b and g = gcd(a, b) >= 0.
inline auto gcdext(const Integer& a, const Integer& b)
    -> std::tuple<Integer, Integer, Integer> {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return {g, s, t};
}

/// Floor division, matching the convention used for pivot reduction.
inline auto floor_div(const Integer& a, const Integer& b) -> Integer {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline auto divides(const Integer& d, const Integer& a) -> bool {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// a -= q * b, in place.
inline void submul(Integer& a, const Integer& q, const Integer& b) {
  mpz_submul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t());
}

/// a += q * b, in place.
inline void addmul(Integer& a, const Integer& q, const Integer& b) {
  mpz_addmul(a.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t());
}

/// Least nonnegative residue; modulus 0 leaves the value untouched.
inline auto reduce_mod(const Integer& a, const Integer& m) -> Integer {
  if (m == 0) return a;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline auto to_string(const Integer& a) -> std::string { return a.get_str(); }

inline auto to_int64(const Integer& a) -> std::int64_t {
  return static_cast<std::int64_t>(a.get_si());
}

}  // namespace eqhom
