#pragma once

// The q-ary -> binary skeleton map, its run structure and d-regularity.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qdel/errors.hpp"
#include "qdel/strings.hpp"

namespace qdel {

/// a_1 = 1 and a_i = [alpha_i >= alpha_{i-1}] for i >= 2.
inline BinaryString phi(const QaryString& alpha) {
  if (alpha.empty()) throw ParameterError("phi of an empty string");
  std::vector<std::uint8_t> bits(alpha.size());
  bits[0] = 1;
  for (std::size_t i = 1; i < alpha.size(); ++i) bits[i] = alpha[i] >= alpha[i - 1] ? 1 : 0;
  return BinaryString(std::move(bits));
}

/// Runs of phi(alpha) together with the symbol sums of alpha over each run.
/// Runs alternate 1,0,1,... starting from the leading 1.
struct RunDecomposition {
  std::vector<std::size_t> lengths;      // l_1..l_r
  std::vector<std::size_t> boundaries;   // j_0 = 0, j_i = l_i + j_{i-1}; size r+1
  std::vector<std::uint64_t> sums;       // beta_1..beta_r

  std::size_t run_count() const noexcept { return lengths.size(); }

  /// Bit value of run k (1-based): 1 for odd k.
  static std::uint8_t run_bit(std::size_t k) noexcept { return k % 2 == 1 ? 1 : 0; }

  /// Expands the run lengths back into the binary skeleton.
  BinaryString expand() const {
    std::vector<std::uint8_t> bits;
    for (std::size_t k = 1; k <= lengths.size(); ++k) bits.insert(bits.end(), lengths[k - 1], run_bit(k));
    return BinaryString(std::move(bits));
  }
};

/// Run decomposition of a binary skeleton alone (run sums are left empty).
inline RunDecomposition run_lengths(const BinaryString& a) {
  RunDecomposition rd;
  rd.boundaries.push_back(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == 0 || a[i] != a[i - 1]) {
      if (i) rd.boundaries.push_back(i);
      rd.lengths.push_back(0);
    }
    ++rd.lengths.back();
  }
  if (!a.empty()) rd.boundaries.push_back(a.size());
  return rd;
}

inline RunDecomposition run_decompose(const QaryString& alpha) {
  if (alpha.empty()) throw ParameterError("run decomposition of an empty string");
  RunDecomposition rd;
  rd.boundaries.push_back(0);
  rd.lengths.push_back(1);
  rd.sums.push_back(alpha[0]);
  bool prev_bit = true;
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    const bool bit = alpha[i] >= alpha[i - 1];
    if (bit != prev_bit) {
      rd.boundaries.push_back(i);
      rd.lengths.push_back(0);
      rd.sums.push_back(0);
      prev_bit = bit;
    }
    ++rd.lengths.back();
    rd.sums.back() += alpha[i];
  }
  rd.boundaries.push_back(alpha.size());
  return rd;
}

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt power(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// floor(log2 x) for x >= 1.
inline std::uint64_t floor_log2(const BigInt& x) { return boost::multiprecision::msb(x); }

}  // namespace detail

/// ceil(d * log2 n), computed exactly as the bit length of n^d - 1.
inline std::size_t ceil_d_log2(std::size_t n, std::uint32_t d) {
  if (n == 0) throw ParameterError("log of zero length");
  const auto nd = detail::power(n, d);
  if (nd == 1) return 0;
  return static_cast<std::size_t>(detail::floor_log2(nd - 1) + 1);
}

/// floor(d * log2 n / 2), computed exactly from n^d.
inline std::size_t floor_half_d_log2(std::size_t n, std::uint32_t d) {
  if (n == 0) throw ParameterError("log of zero length");
  return static_cast<std::size_t>(detail::floor_log2(detail::power(n, d)) / 2);
}

/// Length of the windows that must contain both 00 and 11. Windows shorter
/// than 4 cannot contain both, so the requirement starts at length 4.
inline std::size_t regularity_window(std::size_t n, std::uint32_t d) {
  return std::max<std::size_t>(ceil_d_log2(n, d), 4);
}

/// Every window of length regularity_window(n, d) contains both "00" and "11".
inline bool is_d_regular_binary(const BinaryString& a, std::uint32_t d) {
  if (a.empty()) throw ParameterError("regularity of an empty string");
  if (d == 0) throw ParameterError("regularity parameter d must be positive");
  const std::size_t n = a.size();
  const std::size_t w = regularity_window(n, d);
  if (w > n) return true;
  // pair j covers bits (j, j+1); a window [s, s+w) holds pairs s..s+w-2.
  std::vector<std::size_t> zeros(n, 0), ones(n, 0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    zeros[j + 1] = zeros[j] + (a[j] == 0 && a[j + 1] == 0);
    ones[j + 1] = ones[j] + (a[j] == 1 && a[j + 1] == 1);
  }
  for (std::size_t s = 0; s + w <= n; ++s) {
    const std::size_t lo = s, hi = s + w - 1;
    if (zeros[hi] == zeros[lo] || ones[hi] == ones[lo]) return false;
  }
  return true;
}

inline bool is_d_regular_qary(const QaryString& alpha, std::uint32_t d) {
  return is_d_regular_binary(phi(alpha), d);
}

}  // namespace qdel
