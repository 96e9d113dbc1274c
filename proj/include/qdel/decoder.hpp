#pragma once

// Two-deletion decoding against a QarySketch.
//
//   1. phi(received) is a subsequence of phi(alpha), so the base sketch
//      recovers the skeleton a = phi(alpha).
//   2. s1 and s2 give the sum and the sum of squares of the two deleted
//      symbols; solve_deleted_pair turns those into the unordered pair.
//   3. Every way of inserting that pair into the received word whose phi is
//      a is enumerated (candidates), and s3 selects among them.
//
// Step 3 works on insertion slots of the received word. Inserting v1 before
// received[s1] and v2 before received[s2] (s1 <= s2) changes phi only next to
// the two new symbols; elsewhere phi(alpha) is phi(received) shifted by 0, 1
// or 2, and those stretches are checked in O(1) from precomputed prefix data.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdel/binary_base.hpp"
#include "qdel/errors.hpp"
#include "qdel/modular.hpp"
#include "qdel/phi.hpp"
#include "qdel/sketch.hpp"
#include "qdel/strings.hpp"

namespace qdel {

/// Where the two deleted symbols sit relative to the runs of phi(alpha).
enum class ProofCase {
  kSameRun = 0,          // both deletions come from one run
  kBothSurvive = 1,      // both runs keep symbols after the deletions
  kBothVanish = 2,       // both runs had length 1
  kFirstVanishes = 3,    // run k1 had length 1, run k2 survives
  kSecondVanishes = 4,   // run k1 survives, run k2 had length 1
};

inline const char* to_string(ProofCase c) {
  switch (c) {
    case ProofCase::kSameRun: return "same-run";
    case ProofCase::kBothSurvive: return "both-survive";
    case ProofCase::kBothVanish: return "both-vanish";
    case ProofCase::kFirstVanishes: return "first-vanishes";
    case ProofCase::kSecondVanishes: return "second-vanishes";
  }
  return "unknown";
}

namespace detail {

// Run index (1-based) of every position of a binary skeleton.
inline std::vector<std::size_t> run_index(const BinaryString& a) {
  std::vector<std::size_t> idx(a.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == 0 || a[i] != a[i - 1]) ++k;
    idx[i] = k;
  }
  return idx;
}

inline ProofCase classify(std::size_t k1, std::size_t k2, std::size_t len1, std::size_t len2) {
  if (k1 == k2) return ProofCase::kSameRun;
  const bool first = len1 > 1, second = len2 > 1;
  if (first && second) return ProofCase::kBothSurvive;
  if (!first && !second) return ProofCase::kBothVanish;
  return first ? ProofCase::kSecondVanishes : ProofCase::kFirstVanishes;
}

inline BinaryString skeleton_of(const QaryString& x) { return x.empty() ? BinaryString{} : phi(x); }

inline std::string strip_list_suffix(const std::string& id) {
  constexpr std::string_view kList = "+list";
  if (id.size() > kList.size() && id.compare(id.size() - kList.size(), kList.size(), kList) == 0) {
    return id.substr(0, id.size() - kList.size());
  }
  return id;
}

}  // namespace detail

/// Run indices k1 <= k2 of phi(alpha) holding the symbols at 1-based
/// positions pos1 < pos2, and the resulting case label.
struct DeletionRuns {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  ProofCase proof_case = ProofCase::kSameRun;
};

inline DeletionRuns classify_deletion(const QaryString& alpha, std::size_t pos1, std::size_t pos2) {
  if (pos1 < 1 || pos1 >= pos2 || pos2 > alpha.size()) throw ParameterError("need 1 <= pos1 < pos2 <= n");
  const auto rd = run_decompose(alpha);
  const auto idx = detail::run_index(phi(alpha));
  DeletionRuns r;
  r.k1 = idx[pos1 - 1];
  r.k2 = idx[pos2 - 1];
  r.proof_case = detail::classify(r.k1, r.k2, rd.lengths[r.k1 - 1], rd.lengths[r.k2 - 1]);
  return r;
}

/// One reconstruction of alpha from the received word.
struct CandidateInsertion {
  std::size_t k1 = 0;                       // run of the first inserted symbol
  std::size_t k2 = 0;                       // run of the second
  std::pair<Symbol, Symbol> values;         // (symbol at positions[0], symbol at positions[1])
  std::array<std::size_t, 2> positions{};   // 1-based positions in `reconstructed`
  QaryString reconstructed;
  std::uint64_t s3 = 0;
  ProofCase proof_case = ProofCase::kSameRun;
};

/// All distinct strings alpha of length |received|+2 with phi(alpha) equal to
/// `skeleton` that arise from `received` by inserting the two symbols of
/// `pair` (in either order).
inline std::vector<CandidateInsertion> insertion_candidates(const QaryString& received, const BinaryString& skeleton,
                                                            std::pair<Symbol, Symbol> pair) {
  const std::size_t m = received.size();
  const std::size_t n = m + 2;
  if (skeleton.size() != n) throw ParameterError("skeleton length must be |received| + 2");
  if (pair.first >= received.q() || pair.second >= received.q()) throw ParameterError("inserted symbol outside alphabet");

  const auto& rv = received.vec();
  const BinaryString bp = detail::skeleton_of(received);
  const BinaryString& a = skeleton;

  // longest common prefix of a and phi(received)
  std::size_t lcp = 0;
  while (lcp < m && a[lcp] == bp[lcp]) ++lcp;
  // next_bad[i] = least i' >= i with a[i'] != bp[i'-1], for 1 <= i <= m+1
  std::vector<std::size_t> next_bad(m + 2, m + 1);
  for (std::size_t i = m; i >= 1; --i) next_bad[i] = a[i] != bp[i - 1] ? i : next_bad[i + 1];
  // a[i] == bp[i-2] for all i >= tail_from
  std::size_t tail_from = n;
  while (tail_from >= 3 && a[tail_from - 1] == bp[tail_from - 3]) --tail_from;

  const auto run_of = detail::run_index(a);
  const auto rl = run_lengths(a);

  std::vector<std::pair<Symbol, Symbol>> orders{pair};
  if (pair.first != pair.second) orders.emplace_back(pair.second, pair.first);

  std::vector<CandidateInsertion> out;
  std::set<std::vector<Symbol>> seen;

  auto emit = [&](std::size_t s1, Symbol v1, std::size_t s2, Symbol v2) {
    std::vector<Symbol> x;
    x.reserve(n);
    x.insert(x.end(), rv.begin(), rv.begin() + static_cast<std::ptrdiff_t>(s1));
    x.push_back(v1);
    x.insert(x.end(), rv.begin() + static_cast<std::ptrdiff_t>(s1), rv.begin() + static_cast<std::ptrdiff_t>(s2));
    x.push_back(v2);
    x.insert(x.end(), rv.begin() + static_cast<std::ptrdiff_t>(s2), rv.end());
    if (!seen.insert(x).second) return;
    CandidateInsertion c;
    c.positions = {s1 + 1, s2 + 2};
    c.values = {v1, v2};
    c.k1 = run_of[s1];
    c.k2 = run_of[s2 + 1];
    c.proof_case = detail::classify(c.k1, c.k2, rl.lengths[c.k1 - 1], rl.lengths[c.k2 - 1]);
    c.reconstructed = QaryString(received.q(), std::move(x));
    c.s3 = s3(c.reconstructed);
    out.push_back(std::move(c));
  };

  for (auto [v1, v2] : orders) {
    for (std::size_t s1 = 0; s1 <= std::min(lcp, m); ++s1) {
      // an equal left neighbour means the same string comes from slot s1-1
      if (s1 > 0 && rv[s1 - 1] == v1) continue;
      const std::uint8_t at_p1 = s1 == 0 ? 1 : (v1 >= rv[s1 - 1]);
      if (a[s1] != at_p1) continue;

      // both symbols in the same slot: ... received[s1-1], v1, v2, received[s1] ...
      if (a[s1 + 1] == (v2 >= v1 ? 1 : 0) && (s1 == m || a[s1 + 2] == (rv[s1] >= v2 ? 1 : 0)) &&
          s1 + 3 >= tail_from) {
        emit(s1, v1, s1, v2);
      }

      if (s1 == m || a[s1 + 1] != (rv[s1] >= v1 ? 1 : 0)) continue;
      const std::size_t hi = next_bad[std::min(s1 + 2, m + 1)] - 1;
      const std::size_t lo = std::max(s1 + 1, tail_from >= 3 ? tail_from - 3 : std::size_t{0});
      for (std::size_t s2 = lo; s2 <= std::min(hi, m); ++s2) {
        if (rv[s2 - 1] == v2) continue;
        if (a[s2 + 1] != (v2 >= rv[s2 - 1] ? 1 : 0)) continue;
        if (s2 < m && a[s2 + 2] != (rv[s2] >= v2 ? 1 : 0)) continue;
        emit(s1, v1, s2, v2);
      }
    }
  }
  return out;
}

/// The sketch without s3, as used for list decoding.
struct PartialSketch {
  std::size_t n = 0;
  std::uint32_t q = 0;
  Residue s1 = 0;
  Residue s2 = 0;
  Bits base_bits;
  std::string base_id;
};

inline PartialSketch partial(const QarySketch& s) { return {s.n, s.q, s.s1, s.s2, s.base_bits, s.base_id}; }

struct DecodeReport {
  DeletedPairSolution solution;
  std::vector<BinaryString> skeletons;
  std::vector<CandidateInsertion> candidates;  // consistent with phi, s1 and s2
  std::vector<std::size_t> survivors;          // indices into candidates also matching s3
};

namespace detail {

inline QaryString prepare_received(const QaryString& received, std::size_t n, std::uint32_t q,
                                   const BaseBinarySketcher& base, const std::string& base_id) {
  require_odd_prime(q);
  if (received.q() != q) throw ParameterError("received word alphabet differs from sketch alphabet");
  if (base.input_length() != n) throw ParameterError("base sketcher length does not match sketch n");
  if (strip_list_suffix(base.id()) != strip_list_suffix(base_id)) {
    throw ParameterError("sketch was made with base '" + base_id + "', decoder given '" + base.id() + "'");
  }
  if (n < 2) throw ParameterError("two-deletion decoding needs n >= 2");
  if (received.size() + 2 < n || received.size() > n) {
    throw ParameterError("received length " + std::to_string(received.size()) + " is not within 2 of n=" +
                         std::to_string(n));
  }
  return truncate_to(received, n - 2);
}

// Candidates for every skeleton, merged. Skeletons differ, so do their candidates.
inline void collect_candidates(DecodeReport& report, const QaryString& received, std::uint32_t q) {
  if (!report.solution.values) return;
  const auto [t1, t2] = *report.solution.values;
  (void)q;
  for (const auto& a : report.skeletons) {
    auto c = insertion_candidates(received, a, {static_cast<Symbol>(t1), static_cast<Symbol>(t2)});
    for (auto& x : c) report.candidates.push_back(std::move(x));
  }
}

inline DecodeReport partial_report(const QaryString& received, std::size_t n, std::uint32_t q, Residue sk1,
                                   Residue sk2, std::span<const std::uint8_t> base_bits, const BaseBinarySketcher& base,
                                   const std::string& base_id, bool list_base) {
  const QaryString rx = prepare_received(received, n, q, base, base_id);
  DecodeReport report;
  const BinaryString bp = skeleton_of(rx);
  if (list_base && base.list_size()) {
    report.skeletons = base.decode_list(bp, base_bits);
  } else {
    report.skeletons.push_back(base.decode_unique(bp, base_bits));
  }
  const Residue d1 = (sk1 + q - s1(rx)) % q;
  const Residue d2 = (sk2 + q - s2(rx)) % q;
  report.solution = solve_deleted_pair(d1, d2, q);
  collect_candidates(report, rx, q);
  if (rx.size() != received.size()) {
    // a truncated word loses information; keep candidates holding all of it
    std::erase_if(report.candidates,
                  [&](const CandidateInsertion& c) { return !is_subsequence(received, c.reconstructed); });
  }
  return report;
}

// Swapping the two inserted values at fixed positions moves s3 by exactly
// (k2-k1)(v2-v1) mod nq, which is nonzero whenever k1 != k2 and v1 != v2.
inline void check_swap_separation(const std::vector<CandidateInsertion>& cands, std::uint64_t mod) {
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      const auto& x = cands[i];
      const auto& y = cands[j];
      if (x.positions != y.positions || x.values.first != y.values.second || x.values.second != y.values.first) continue;
      const auto dk = static_cast<std::int64_t>(x.k2) - static_cast<std::int64_t>(x.k1);
      const auto dv = static_cast<std::int64_t>(x.values.second) - static_cast<std::int64_t>(x.values.first);
      const auto m = static_cast<std::int64_t>(mod);
      const std::int64_t expected = ((dk * dv) % m + m) % m;
      const std::int64_t actual = ((static_cast<std::int64_t>(x.s3) - static_cast<std::int64_t>(y.s3)) % m + m) % m;
      if (expected != actual || (dk != 0 && dv != 0 && actual == 0)) {
        throw InternalError("s3 separation of swapped candidates violated");
      }
    }
  }
}

}  // namespace detail

/// Full decode diagnostics; never throws on ambiguity. Base-sketch failures
/// propagate as DecodeError.
inline DecodeReport decode_report(const QaryString& received, const QarySketch& sketch, const BaseBinarySketcher& base) {
  auto report = detail::partial_report(received, sketch.n, sketch.q, sketch.s1, sketch.s2, sketch.base_bits, base,
                                       sketch.base_id, false);
  detail::check_swap_separation(report.candidates, s3_modulus(sketch.n, sketch.q));
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    if (report.candidates[i].s3 == sketch.s3) report.survivors.push_back(i);
  }
  return report;
}

/// Every string consistent with the whole sketch.
inline std::vector<QaryString> decode_candidates(const QaryString& received, const QarySketch& sketch,
                                                 const BaseBinarySketcher& base) {
  const auto report = decode_report(received, sketch, base);
  std::vector<QaryString> out;
  for (auto i : report.survivors) out.push_back(report.candidates[i].reconstructed);
  return out;
}

/// The string alpha with full_sketch(alpha) == sketch that contains `received`.
/// `received` may be 0, 1 or 2 deletions short of n.
inline QaryString decode_unique(const QaryString& received, const QarySketch& sketch, const BaseBinarySketcher& base) {
  const auto report = decode_report(received, sketch, base);
  if (!report.solution.values) {
    throw DecodeError(DecodeFailure::kInconsistent, "s1/s2 admit no pair of deleted symbols");
  }
  if (report.survivors.empty()) throw DecodeError(DecodeFailure::kInconsistent, "no reconstruction matches the sketch");
  if (report.survivors.size() > 1) {
    throw DecodeError(DecodeFailure::kAmbiguous, std::to_string(report.survivors.size()) +
                                                     " reconstructions match the whole sketch");
  }
  return report.candidates[report.survivors.front()].reconstructed;
}

/// Candidates consistent with the base sketch, s1 and s2. Uses the base's
/// list decoder when it has one.
inline std::vector<QaryString> decode_list(const QaryString& received, const PartialSketch& sketch,
                                           const BaseBinarySketcher& base) {
  const auto report = detail::partial_report(received, sketch.n, sketch.q, sketch.s1, sketch.s2, sketch.base_bits, base,
                                             sketch.base_id, true);
  if (!report.solution.values) {
    throw DecodeError(DecodeFailure::kInconsistent, "s1/s2 admit no pair of deleted symbols");
  }
  if (report.candidates.empty()) throw DecodeError(DecodeFailure::kInconsistent, "no reconstruction matches the sketch");
  std::vector<QaryString> out;
  for (auto& c : report.candidates) out.push_back(c.reconstructed);
  return out;
}

// ---- brute-force oracle --------------------------------------------------

/// Every distinct string of length |y| + k containing y, for k <= 2.
inline std::vector<QaryString> supersequences(const QaryString& y, std::size_t k) {
  std::set<std::vector<Symbol>> level{y.vec()};
  for (std::size_t step = 0; step < k; ++step) {
    std::set<std::vector<Symbol>> next;
    for (const auto& s : level) {
      for (std::size_t slot = 0; slot <= s.size(); ++slot) {
        for (Symbol v = 0; v < y.q(); ++v) {
          if (slot > 0 && s[slot - 1] == v) continue;
          auto t = s;
          t.insert(t.begin() + static_cast<std::ptrdiff_t>(slot), v);
          next.insert(std::move(t));
        }
      }
    }
    level = std::move(next);
  }
  std::vector<QaryString> out;
  out.reserve(level.size());
  for (const auto& s : level) out.emplace_back(y.q(), s);
  return out;
}

/// Enumerates all supersequences of `received` of length n and keeps those
/// whose full sketch equals `sketch`.
inline std::vector<QaryString> brute_force_decode(const QaryString& received, const QarySketch& sketch,
                                                  const BaseBinarySketcher& base) {
  if (received.size() > sketch.n || received.size() + 2 < sketch.n) return {};
  std::vector<QaryString> out;
  for (auto& x : supersequences(received, sketch.n - received.size())) {
    if (full_sketch(x, base) == sketch) out.push_back(std::move(x));
  }
  return out;
}

/// Same, ignoring s3.
inline std::vector<QaryString> brute_force_list_decode(const QaryString& received, const PartialSketch& sketch,
                                                       const BaseBinarySketcher& base) {
  if (received.size() > sketch.n || received.size() + 2 < sketch.n) return {};
  std::vector<QaryString> out;
  for (auto& x : supersequences(received, sketch.n - received.size())) {
    const auto s = full_sketch(x, base);
    if (s.s1 == sketch.s1 && s.s2 == sketch.s2 && s.base_bits == sketch.base_bits) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace qdel
