#pragma once

// Arithmetic in Z_q for an odd prime q: inverses, canonical square roots and
// recovery of two unknown residues from their sum and sum of squares.

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "qdel/errors.hpp"

namespace qdel {

using Residue = std::uint64_t;

inline bool is_odd_prime(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return false;
  for (std::uint64_t f = 3; f * f <= q; f += 2) {
    if (q % f == 0) return false;
  }
  return true;
}

inline void require_odd_prime(std::uint64_t q) {
  if (!is_odd_prime(q)) throw ParameterError("q must be an odd prime (got " + std::to_string(q) + ")");
  if (q >= (std::uint64_t{1} << 32)) throw ParameterError("q must be below 2^32");
}

namespace detail {

inline Residue mul_mod(Residue a, Residue b, std::uint64_t q) { return (a % q) * (b % q) % q; }

inline Residue pow_mod(Residue base, std::uint64_t exp, std::uint64_t q) {
  Residue result = 1 % q;
  base %= q;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// x with a*x = 1 (mod q).
inline Residue mod_inverse(Residue a, std::uint64_t q) {
  require_odd_prime(q);
  a %= q;
  if (a == 0) throw DomainError("0 has no inverse modulo " + std::to_string(q));
  // extended Euclid on signed 64-bit; q < 2^32 keeps everything in range
  std::int64_t r0 = static_cast<std::int64_t>(q), r1 = static_cast<std::int64_t>(a);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - k * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - k * t1};
  }
  if (t0 < 0) t0 += static_cast<std::int64_t>(q);
  return static_cast<Residue>(t0);
}

/// Tonelli-Shanks. Returns the root in {0,...,(q-1)/2}, or nullopt for a
/// non-residue.
inline std::optional<Residue> sqrt_mod(Residue a, std::uint64_t q) {
  require_odd_prime(q);
  a %= q;
  if (a == 0) return Residue{0};
  if (detail::pow_mod(a, (q - 1) / 2, q) != 1) return std::nullopt;

  std::uint64_t s = 0, odd = q - 1;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  Residue z = 2;
  while (detail::pow_mod(z, (q - 1) / 2, q) != q - 1) ++z;

  Residue m = s;
  Residue c = detail::pow_mod(z, odd, q);
  Residue t = detail::pow_mod(a, odd, q);
  Residue r = detail::pow_mod(a, (odd + 1) / 2, q);
  while (t != 1) {
    Residue i = 0, t2 = t;
    while (t2 != 1) {
      t2 = detail::mul_mod(t2, t2, q);
      ++i;
    }
    Residue b = c;
    for (Residue j = 0; j + i + 1 < m; ++j) b = detail::mul_mod(b, b, q);
    m = i;
    c = detail::mul_mod(b, b, q);
    t = detail::mul_mod(t, c, q);
    r = detail::mul_mod(r, b, q);
  }
  return r <= (q - 1) / 2 ? r : q - r;
}

/// Solution of v1 + v2 = delta1, v1^2 + v2^2 = delta2 over Z_q.
struct DeletedPairSolution {
  Residue delta1 = 0;
  Residue delta2 = 0;
  Residue delta0 = 0;                   // 2^{-1}(delta1^2 - delta2) = v1*v2
  std::optional<Residue> disc_root;     // sqrt(delta1^2 - 4 delta0) = |v1 - v2|
  std::optional<std::pair<Residue, Residue>> values;  // sorted, first <= second

  bool solvable() const noexcept { return values.has_value(); }
};

inline DeletedPairSolution solve_deleted_pair(Residue delta1, Residue delta2, std::uint64_t q) {
  require_odd_prime(q);
  DeletedPairSolution sol;
  sol.delta1 = delta1 % q;
  sol.delta2 = delta2 % q;
  const Residue half = mod_inverse(2, q);
  const Residue sq = detail::mul_mod(sol.delta1, sol.delta1, q);
  sol.delta0 = detail::mul_mod(half, (sq + q - sol.delta2) % q, q);
  const Residue disc = (sq + q - detail::mul_mod(4, sol.delta0, q)) % q;
  sol.disc_root = sqrt_mod(disc, q);
  if (sol.disc_root) {
    const Residue b = *sol.disc_root;
    Residue t1 = detail::mul_mod(half, (sol.delta1 + b) % q, q);
    Residue t2 = detail::mul_mod(half, (sol.delta1 + q - b) % q, q);
    if (t1 > t2) std::swap(t1, t2);
    sol.values = std::pair{t1, t2};
  }
  return sol;
}

}  // namespace qdel
