#pragma once

// Encoding messages into d-regular q-ary strings.
//
// U_m holds the length-m strings that contain both a strictly decreasing
// triple and a non-decreasing triple. A string made of Delta blocks from U_m
// followed by a short tail is d-regular when m = floor((d/2) log2 n) - 1,
// because every window of length ceil(d log2 n) covers a whole block. The
// encoder writes the message integer in mixed radix (Delta digits base G_m,
// then `tail` digits base q) and maps each base-G_m digit to a block by
// unranking U_m in lexicographic order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qdel/errors.hpp"
#include "qdel/phi.hpp"
#include "qdel/strings.hpp"

namespace qdel {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline void require_block_length(std::size_t m) {
  if (m < 3) throw ParameterError("block length m must be at least 3 (got " + std::to_string(m) + ")");
}

inline bool has_strict_decrease(std::span<const Symbol> v) {
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    if (v[i] > v[i + 1] && v[i + 1] > v[i + 2]) return true;
  }
  return false;
}

inline bool has_non_decrease(std::span<const Symbol> v) {
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    if (v[i] <= v[i + 1] && v[i + 1] <= v[i + 2]) return true;
  }
  return false;
}

inline bool is_in_U_m(const QaryString& v) {
  require_block_length(v.size());
  return has_strict_decrease(v.symbols()) && has_non_decrease(v.symbols());
}

// ---- counting by enumeration ---------------------------------------------

/// Exhaustive counts over Sigma_q^m:
///   f0 = no strictly decreasing triple, f1 = no non-decreasing triple,
///   g = both kinds present (|U_m|).
struct TripleCounts {
  std::uint64_t total = 0;
  std::uint64_t f0 = 0;
  std::uint64_t f1 = 0;
  std::uint64_t g = 0;
};

inline constexpr std::uint64_t kEnumerationBudget = 200'000'000;

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > budget / base) throw ParameterError("enumeration of q^m strings exceeds budget");
    r *= base;
  }
  return r;
}

// Depth-first walk over all strings; `leaf` sees (prefix, has_dec, has_nondec).
template <typename Leaf>
void walk_strings(std::vector<Symbol>& prefix, std::size_t m, std::uint32_t q, bool dec, bool nondec, Leaf& leaf) {
  if (prefix.size() == m) {
    leaf(prefix, dec, nondec);
    return;
  }
  const std::size_t len = prefix.size();
  for (Symbol v = 0; v < q; ++v) {
    bool d = dec, nd = nondec;
    if (len >= 2) {
      const Symbol x = prefix[len - 2], y = prefix[len - 1];
      d = d || (x > y && y > v);
      nd = nd || (x <= y && y <= v);
    }
    prefix.push_back(v);
    walk_strings(prefix, m, q, d, nd, leaf);
    prefix.pop_back();
  }
}

}  // namespace detail

inline TripleCounts count_triples(std::size_t m, std::uint32_t q, std::uint64_t budget = kEnumerationBudget) {
  require_block_length(m);
  if (q < 2) throw ParameterError("alphabet size must be at least 2");
  TripleCounts c;
  c.total = detail::checked_power(q, m, budget);
  std::vector<Symbol> prefix;
  prefix.reserve(m);
  auto leaf = [&c](const std::vector<Symbol>&, bool dec, bool nondec) {
    c.f0 += !dec;
    c.f1 += !nondec;
    c.g += dec && nondec;
  };
  detail::walk_strings(prefix, m, q, false, false, leaf);
  return c;
}

inline std::uint64_t count_F0(std::size_t m, std::uint32_t q) { return count_triples(m, q).f0; }
inline std::uint64_t count_F1(std::size_t m, std::uint32_t q) { return count_triples(m, q).f1; }
inline std::uint64_t count_G(std::size_t m, std::uint32_t q) { return count_triples(m, q).g; }

// ---- closed forms ----------------------------------------------------------

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// q^3 - C(q,3)
inline BigInt f0_closed_form_3(std::uint64_t q) { return BigInt(q) * q * q - binomial(q, 3); }

/// q^4 - 2q C(q,3) + C(q,4)
inline BigInt f0_closed_form_4(std::uint64_t q) {
  return BigInt(q) * q * q * q - 2 * BigInt(q) * binomial(q, 3) + binomial(q, 4);
}

/// q^5 - 3q^2 C(q,3) + 2q C(q,4), by inclusion-exclusion over the three
/// triple start positions.
inline BigInt f0_inclusion_exclusion_5(std::uint64_t q) {
  const BigInt Q = q;
  return Q * Q * Q * Q * Q - 3 * Q * Q * binomial(q, 3) + 2 * Q * binomial(q, 4);
}

/// (7/12)q^5 + q^4 - (13/12)q^3 - q^2/2, the expanded form as printed.
/// Disagrees with enumeration (189 vs 216 at q=3).
inline BigRational f0_polynomial_5(std::uint64_t q) {
  const BigRational Q = q;
  return BigRational(7, 12) * Q * Q * Q * Q * Q + Q * Q * Q * Q - BigRational(13, 12) * Q * Q * Q -
         BigRational(1, 2) * Q * Q;
}

/// F_m^(1) < F_m^(0) < (0.99 q)^m, with the right inequality checked exactly
/// as 100^m F_m^(0) < (99 q)^m.
struct FmBoundReport {
  std::size_t m = 0;
  std::uint32_t q = 0;
  std::uint64_t f0 = 0;
  std::uint64_t f1 = 0;
  long double bound = 0;    // (0.99 q)^m, for display
  bool holds = false;
  bool in_lemma_range = false;  // m >= 3 and q > 2
};

inline FmBoundReport verify_Fm_bound(std::size_t m, std::uint32_t q) {
  const auto c = count_triples(m, q);
  FmBoundReport r;
  r.m = m;
  r.q = q;
  r.f0 = c.f0;
  r.f1 = c.f1;
  r.bound = 1;
  for (std::size_t i = 0; i < m; ++i) r.bound *= 0.99L * q;
  BigInt lhs = c.f0, rhs = 1;
  for (std::size_t i = 0; i < m; ++i) {
    lhs *= 100;
    rhs *= BigInt(99) * q;
  }
  r.holds = c.f1 < c.f0 && lhs < rhs;
  r.in_lemma_range = m >= 3 && q > 2;
  return r;
}

// ---- U_m tables -------------------------------------------------------------

/// Members of U_m in lexicographic order, each packed as a base-q integer
/// (first symbol most significant).
struct UmTable {
  std::size_t m = 0;
  std::uint32_t q = 0;
  std::vector<std::uint64_t> members;

  std::uint64_t size() const noexcept { return members.size(); }

  std::uint64_t pack(std::span<const Symbol> v) const {
    std::uint64_t x = 0;
    for (Symbol s : v) x = x * q + s;
    return x;
  }

  QaryString unpack(std::uint64_t x) const {
    std::vector<Symbol> v(m);
    for (std::size_t i = m; i-- > 0;) {
      v[i] = static_cast<Symbol>(x % q);
      x /= q;
    }
    return QaryString(q, std::move(v));
  }
};

inline UmTable build_um_table(std::size_t m, std::uint32_t q, std::uint64_t budget = kEnumerationBudget) {
  require_block_length(m);
  detail::checked_power(q, m, budget);
  UmTable t;
  t.m = m;
  t.q = q;
  std::vector<Symbol> prefix;
  prefix.reserve(m);
  auto leaf = [&t](const std::vector<Symbol>& v, bool dec, bool nondec) {
    if (dec && nondec) t.members.push_back(t.pack(v));
  };
  detail::walk_strings(prefix, m, q, false, false, leaf);
  return t;
}

inline void save_um_table(const UmTable& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write U_m table to " + path.string());
  out << "m=" << t.m << " q=" << t.q << " G=" << t.members.size() << '\n';
  for (auto x : t.members) out << format_string(t.unpack(x)) << '\n';
}

inline UmTable load_um_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open U_m table " + path.string());
  std::string header;
  std::getline(in, header);
  unsigned long long m = 0, q = 0, g = 0;
  if (std::sscanf(header.c_str(), "m=%llu q=%llu G=%llu", &m, &q, &g) != 3 || m < 3 || q < 2) {
    throw FormatError("bad U_m table header: '" + header + "'");
  }
  UmTable t;
  t.m = m;
  t.q = static_cast<std::uint32_t>(q);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = parse_string(line, t.q);
    if (v.size() != m || !is_in_U_m(v)) throw FormatError("U_m table row is not a member: '" + line + "'");
    const auto x = t.pack(v.symbols());
    if (!t.members.empty() && x <= t.members.back()) throw FormatError("U_m table rows not strictly sorted");
    t.members.push_back(x);
  }
  if (t.members.size() != g) throw FormatError("U_m table row count differs from header G");
  return t;
}

/// Process-wide cache keyed by (m, q); optionally persisted as
/// "<dir>/um_m<m>_q<q>.txt".
inline std::shared_ptr<const UmTable> um_table(std::size_t m, std::uint32_t q, const std::filesystem::path& cache_dir = {}) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::uint32_t>, std::shared_ptr<const UmTable>> cache;
  std::lock_guard lock(mu);
  const auto key = std::pair{m, q};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::shared_ptr<const UmTable> t;
  const auto file = cache_dir.empty()
                        ? std::filesystem::path{}
                        : cache_dir / ("um_m" + std::to_string(m) + "_q" + std::to_string(q) + ".txt");
  if (!file.empty() && std::filesystem::exists(file)) {
    auto loaded = load_um_table(file);
    if (loaded.m != m || loaded.q != q) throw FormatError("U_m table file " + file.string() + " has other parameters");
    t = std::make_shared<const UmTable>(std::move(loaded));
  } else {
    t = std::make_shared<const UmTable>(build_um_table(m, q));
    if (!file.empty()) {
      std::filesystem::create_directories(cache_dir);
      save_um_table(*t, file);
    }
  }
  cache.emplace(key, t);
  return t;
}

inline std::uint64_t rank_U(const QaryString& v, const UmTable& table) {
  if (v.size() != table.m || v.q() != table.q) throw ParameterError("block has wrong length or alphabet");
  const auto x = table.pack(v.symbols());
  const auto it = std::lower_bound(table.members.begin(), table.members.end(), x);
  if (it == table.members.end() || *it != x) throw ParameterError("string is not a member of U_m");
  return static_cast<std::uint64_t>(it - table.members.begin());
}

inline QaryString unrank_U(std::uint64_t index, const UmTable& table) {
  if (index >= table.members.size()) throw ParameterError("U_m index out of range");
  return table.unpack(table.members[index]);
}

inline std::uint64_t rank_U(const QaryString& v) { return rank_U(v, *um_table(v.size(), v.q())); }
inline QaryString unrank_U(std::uint64_t index, std::size_t m, std::uint32_t q) { return unrank_U(index, *um_table(m, q)); }

// ---- the encoder ------------------------------------------------------------

struct RegularEncoderParams {
  std::size_t n = 0;
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::size_t m = 0;            // floor((d/2) log2 n) - 1
  std::size_t block_count = 0;  // floor(n / m)
  std::size_t tail = 0;         // n - m * block_count
  std::uint64_t g = 0;          // |U_m|
  BigInt capacity;              // g^block_count * q^tail
  std::optional<std::size_t> capacity_digits;  // largest k with q^k <= capacity
  std::size_t message_length = 0;              // k used by pi_encode / pi_decode
  std::shared_ptr<const UmTable> table;
};

inline std::size_t regular_block_length(std::size_t n, std::uint32_t d) {
  const std::size_t half = floor_half_d_log2(n, d);
  return half == 0 ? 0 : half - 1;
}

/// Derives the encoder layout. message_length defaults to the largest k that
/// fits; pass a smaller value to use fewer message symbols.
inline RegularEncoderParams make_regular_params(std::size_t n, std::uint32_t q, std::uint32_t d,
                                                std::optional<std::size_t> message_length = std::nullopt,
                                                const std::filesystem::path& cache_dir = {}) {
  if (q < 2) throw ParameterError("alphabet size must be at least 2");
  if (d == 0) throw ParameterError("regularity parameter d must be positive");
  if (n == 0) throw ParameterError("length must be positive");
  RegularEncoderParams p;
  p.n = n;
  p.q = q;
  p.d = d;
  p.m = regular_block_length(n, d);
  require_block_length(p.m);
  if (p.m > n) {
    throw ParameterError("block length m=" + std::to_string(p.m) + " exceeds n=" + std::to_string(n));
  }
  p.block_count = n / p.m;
  p.tail = n - p.m * p.block_count;
  p.table = um_table(p.m, q, cache_dir);
  p.g = p.table->size();
  p.capacity = boost::multiprecision::pow(BigInt(p.g), static_cast<unsigned>(p.block_count)) *
               boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(p.tail));
  if (p.capacity >= 1) {
    std::size_t k = 0;
    BigInt qk = q;
    while (qk <= p.capacity) {
      ++k;
      qk *= q;
    }
    p.capacity_digits = k;
  }
  if (message_length) {
    if (!p.capacity_digits || *message_length > *p.capacity_digits) {
      throw ParameterError("message length " + std::to_string(*message_length) + " exceeds encoder capacity");
    }
    p.message_length = *message_length;
  } else {
    p.message_length = p.capacity_digits.value_or(0);
  }
  return p;
}

inline QaryString pi_encode(const QaryString& message, const RegularEncoderParams& p) {
  if (message.q() != p.q) throw ParameterError("message alphabet differs from encoder alphabet");
  if (!p.capacity_digits || message.size() > *p.capacity_digits) {
    throw ParameterError("message of length " + std::to_string(message.size()) + " exceeds encoder capacity");
  }
  if (message.size() != p.message_length) {
    throw ParameterError("message length " + std::to_string(message.size()) + " differs from configured k=" +
                         std::to_string(p.message_length));
  }
  BigInt x = 0;
  for (Symbol s : message) x = x * p.q + s;

  std::vector<Symbol> out(p.n);
  for (std::size_t i = 0; i < p.tail; ++i) {
    out[p.n - 1 - i] = static_cast<Symbol>(static_cast<std::uint64_t>(x % p.q));
    x /= p.q;
  }
  for (std::size_t b = p.block_count; b-- > 0;) {
    const auto digit = static_cast<std::uint64_t>(x % p.g);
    x /= p.g;
    const auto block = unrank_U(digit, *p.table);
    std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(b * p.m));
  }
  if (x != 0) throw InternalError("message integer exceeded the mixed-radix capacity");
  QaryString result(p.q, std::move(out));
  if (!is_d_regular_qary(result, p.d)) throw InternalError("encoder output is not d-regular");
  return result;
}

inline QaryString pi_decode(const QaryString& alpha, const RegularEncoderParams& p) {
  if (alpha.q() != p.q || alpha.size() != p.n) throw FormatError("encoded string has wrong length or alphabet");
  BigInt x = 0;
  for (std::size_t b = 0; b < p.block_count; ++b) {
    std::vector<Symbol> block(alpha.begin() + static_cast<std::ptrdiff_t>(b * p.m),
                              alpha.begin() + static_cast<std::ptrdiff_t>((b + 1) * p.m));
    const auto code = p.table->pack(block);
    const auto it = std::lower_bound(p.table->members.begin(), p.table->members.end(), code);
    if (it == p.table->members.end() || *it != code) {
      throw FormatError("block " + std::to_string(b + 1) + " is not a member of U_m");
    }
    x = x * p.g + static_cast<std::uint64_t>(it - p.table->members.begin());
  }
  for (std::size_t i = 0; i < p.tail; ++i) x = x * p.q + alpha[p.m * p.block_count + i];

  std::vector<Symbol> msg(p.message_length);
  for (std::size_t i = p.message_length; i-- > 0;) {
    msg[i] = static_cast<Symbol>(static_cast<std::uint64_t>(x % p.q));
    x /= p.q;
  }
  if (x != 0) throw FormatError("encoded value exceeds the message space");
  return QaryString(p.q, std::move(msg));
}

struct CapacityReport {
  std::size_t n = 0;
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::size_t m = 0;
  std::size_t block_count = 0;
  std::size_t tail = 0;
  std::uint64_t g = 0;
  BigInt capacity;
  std::optional<std::size_t> capacity_digits;
  bool exceeds_q_pow_n_minus_1 = false;  // capacity > q^(n-1)
};

inline CapacityReport capacity_report(std::size_t n, std::uint32_t q, std::uint32_t d,
                                      const std::filesystem::path& cache_dir = {}) {
  const auto p = make_regular_params(n, q, d, std::nullopt, cache_dir);
  CapacityReport r{p.n, p.q, p.d, p.m, p.block_count, p.tail, p.g, p.capacity, p.capacity_digits, false};
  r.exceeds_q_pow_n_minus_1 = p.capacity > boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n - 1));
  return r;
}

}  // namespace qdel
