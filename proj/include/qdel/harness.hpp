#pragma once

// Verification suites shared by the CLI `verify` command and the acceptance
// runner. Each property yields one PASS/FAIL row with counts.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qdel/binary_base.hpp"
#include "qdel/channel.hpp"
#include "qdel/code.hpp"
#include "qdel/decoder.hpp"
#include "qdel/modular.hpp"
#include "qdel/phi.hpp"
#include "qdel/regular.hpp"
#include "qdel/sketch.hpp"
#include "qdel/strings.hpp"

namespace qdel {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

using SuiteResults = std::vector<PropertyResult>;

inline bool all_pass(const SuiteResults& r) {
  return std::all_of(r.begin(), r.end(), [](const PropertyResult& p) { return p.pass; });
}

inline std::string format_result(const PropertyResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << r.suite << '\t' << r.name << '\t' << (r.pass ? "PASS" : "FAIL") << '\t' << r.detail << '\t' << r.seconds;
  return os.str();
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Calls f(symbols) for every string of length n over Z_q, in lexicographic order.
template <typename F>
void for_each_string(std::size_t n, std::uint32_t q, F&& f) {
  std::vector<Symbol> v(n, 0);
  while (true) {
    f(static_cast<const std::vector<Symbol>&>(v));
    std::size_t i = n;
    while (i > 0 && v[i - 1] == q - 1) v[--i] = 0;
    if (i == 0) return;
    ++v[i - 1];
  }
}

// Short words packed with their length: value in base q, times 16, plus length.
inline std::uint64_t pack_word(std::span<const Symbol> v, std::uint32_t q) {
  std::uint64_t x = 0;
  for (Symbol s : v) x = x * q + s;
  return x * 16 + v.size();
}

inline std::vector<Symbol> unpack_word(std::uint64_t key, std::uint32_t q) {
  std::vector<Symbol> v(key % 16);
  key /= 16;
  for (std::size_t i = v.size(); i-- > 0;) {
    v[i] = static_cast<Symbol>(key % q);
    key /= q;
  }
  return v;
}

// Distinct words at most two deletions away from v, packed.
inline std::vector<std::uint64_t> packed_ball(const std::vector<Symbol>& v, std::uint32_t q) {
  std::vector<std::uint64_t> out;
  const std::size_t n = v.size();
  std::vector<Symbol> w;
  w.reserve(n);
  out.push_back(pack_word(v, q));
  for (std::size_t i = 0; i < n; ++i) {
    w.assign(v.begin(), v.end());
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(pack_word(w, q));
    for (std::size_t j = i + 1; j < n; ++j) {
      w.assign(v.begin(), v.end());
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      out.push_back(pack_word(w, q));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::uint64_t pack_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw ParameterError("base sketch too wide to pack");
  std::uint64_t x = 0;
  for (auto b : bits) x = (x << 1) | b;
  return x;
}

inline std::vector<std::uint32_t> odd_primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 3; p <= limit; p += 2) {
    if (is_odd_prime(p)) out.push_back(p);
  }
  return out;
}

inline QaryString random_string(std::size_t n, std::uint32_t q, std::mt19937_64& gen) {
  std::vector<Symbol> v(n);
  for (auto& s : v) s = static_cast<Symbol>(gen() % q);
  return QaryString(q, std::move(v));
}

inline std::string join_counts(std::initializer_list<std::pair<const char*, std::uint64_t>> items) {
  std::string out;
  for (const auto& [k, v] : items) {
    if (!out.empty()) out += ' ';
    out += k;
    out += '=';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace detail

// ---- phi ---------------------------------------------------------------------

/// Exhaustive subsequence preservation of phi under one and two deletions,
/// plus run decomposition round-trip and run-sum totals.
inline SuiteResults phi_suite(const std::vector<std::uint32_t>& qs, std::size_t n_lo, std::size_t n_hi) {
  detail::Stopwatch sw;
  std::uint64_t strings = 0, singles = 0, pairs = 0, bad1 = 0, bad2 = 0, bad_runs = 0, bad_sums = 0;
  for (auto q : qs) {
    for (std::size_t n = std::max<std::size_t>(n_lo, 1); n <= n_hi; ++n) {
      detail::for_each_string(n, q, [&](const std::vector<Symbol>& v) {
        ++strings;
        const QaryString alpha(q, v);
        const BinaryString a = phi(alpha);
        const auto rd = run_decompose(alpha);
        if (rd.expand() != a) ++bad_runs;
        std::uint64_t total = 0, run_total = 0;
        for (Symbol s : v) total += s;
        for (auto b : rd.sums) run_total += b;
        if (total != run_total) ++bad_sums;
        for (std::size_t i = 1; i <= n; ++i) {
          if (n >= 2) {
            ++singles;
            if (!is_subsequence(phi(delete_at(alpha, {i})), a)) ++bad1;
          }
          for (std::size_t j = i + 1; j <= n && n >= 3; ++j) {
            ++pairs;
            if (!is_subsequence(phi(delete_at(alpha, {i, j})), a)) ++bad2;
          }
        }
      });
    }
  }
  const double t = sw.seconds();
  return {
      {"phi", "single_deletion_subsequence", bad1 == 0,
       detail::join_counts({{"strings", strings}, {"patterns", singles}, {"violations", bad1}}), t},
      {"phi", "double_deletion_subsequence", bad2 == 0,
       detail::join_counts({{"strings", strings}, {"patterns", pairs}, {"violations", bad2}}), t},
      {"phi", "run_roundtrip", bad_runs == 0, detail::join_counts({{"strings", strings}, {"violations", bad_runs}}), t},
      {"phi", "run_sum_total", bad_sums == 0, detail::join_counts({{"strings", strings}, {"violations", bad_sums}}), t},
  };
}

// ---- solver --------------------------------------------------------------------

inline SuiteResults solver_suite(std::uint32_t q_max) {
  detail::Stopwatch sw;
  std::uint64_t primes = 0, pairs = 0, bad_pairs = 0, residues = 0, bad_roots = 0;
  for (auto q : detail::odd_primes_up_to(q_max)) {
    ++primes;
    for (Residue a = 0; a < q; ++a) {
      ++residues;
      const auto r = sqrt_mod(a, q);
      const bool is_qr = a == 0 || detail::pow_mod(a, (q - 1) / 2, q) == 1;
      if (r.has_value() != is_qr) ++bad_roots;
      else if (r && (*r > (q - 1) / 2 || detail::mul_mod(*r, *r, q) != a)) ++bad_roots;
    }
    for (Residue v1 = 0; v1 < q; ++v1) {
      for (Residue v2 = 0; v2 < q; ++v2) {
        ++pairs;
        const auto sol = solve_deleted_pair((v1 + v2) % q, (v1 * v1 + v2 * v2) % q, q);
        if (!sol.values || *sol.values != std::pair{std::min(v1, v2), std::max(v1, v2)}) ++bad_pairs;
      }
    }
  }
  const double t = sw.seconds();
  return {
      {"solver", "pair_recovery", bad_pairs == 0 && primes > 0,
       detail::join_counts({{"primes", primes}, {"pairs", pairs}, {"failures", bad_pairs}}), t},
      {"solver", "canonical_sqrt", bad_roots == 0 && primes > 0,
       detail::join_counts({{"primes", primes}, {"residues", residues}, {"failures", bad_roots}}), t},
  };
}

// ---- decoder -------------------------------------------------------------------

struct DecoderTally {
  std::uint64_t strings = 0;
  std::uint64_t received = 0;       // distinct (sketch, received word) pairs decoded
  std::uint64_t pairs = 0;          // (string, received word) pairs
  std::uint64_t recovered = 0;      // decoder returned exactly the string
  std::uint64_t ambiguous = 0;      // pairs whose received word fits several strings
  std::uint64_t oracle_mismatch = 0;
  std::uint64_t errors = 0;         // decoder threw
  std::uint64_t max_candidates = 0;
  std::uint64_t list_pairs = 0;
  std::uint64_t list_missing = 0;
  std::uint64_t list_oracle_mismatch = 0;
  std::uint64_t list_over_two = 0;  // received words whose list exceeds 2
  std::uint64_t list_max = 0;
  std::array<std::uint64_t, 5> cases{};  // indexed by ProofCase
  // first failure found, for reporting
  std::optional<std::pair<std::vector<Symbol>, std::vector<Symbol>>> witness;

  void merge(const DecoderTally& o) {
    strings += o.strings;
    received += o.received;
    pairs += o.pairs;
    recovered += o.recovered;
    ambiguous += o.ambiguous;
    oracle_mismatch += o.oracle_mismatch;
    errors += o.errors;
    max_candidates = std::max(max_candidates, o.max_candidates);
    list_pairs += o.list_pairs;
    list_missing += o.list_missing;
    list_oracle_mismatch += o.list_oracle_mismatch;
    list_over_two += o.list_over_two;
    list_max = std::max(list_max, o.list_max);
    for (std::size_t i = 0; i < cases.size(); ++i) cases[i] += o.cases[i];
    if (!witness) witness = o.witness;
  }
};

namespace detail {

// For each string group sharing a sketch key, every received word within two
// deletions and the strings it came from. That set is exactly what a brute
// force decoder would return, so it serves as the oracle.
template <typename Key, typename KeyOf, typename Visit>
void visit_sketch_groups(std::size_t n, std::uint32_t q, KeyOf key_of, Visit visit) {
  std::vector<std::pair<Key, std::uint64_t>> keyed;
  for_each_string(n, q, [&](const std::vector<Symbol>& v) { keyed.emplace_back(key_of(v), pack_word(v, q)); });
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> words;  // (received, source)
  for (std::size_t lo = 0; lo < keyed.size();) {
    std::size_t hi = lo;
    while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
    words.clear();
    for (std::size_t i = lo; i < hi; ++i) {
      for (auto y : packed_ball(unpack_word(keyed[i].second, q), q)) words.emplace_back(y, keyed[i].second);
    }
    std::sort(words.begin(), words.end());
    std::vector<std::uint64_t> sources;
    for (std::size_t a = 0; a < words.size();) {
      std::size_t b = a;
      sources.clear();
      while (b < words.size() && words[b].first == words[a].first) sources.push_back(words[b++].second);
      visit(unpack_word(keyed[lo].second, q), words[a].first, sources);
      a = b;
    }
    lo = hi;
  }
}

inline std::vector<std::uint64_t> pack_all(const std::vector<QaryString>& xs, std::uint32_t q) {
  std::vector<std::uint64_t> out;
  for (const auto& x : xs) out.push_back(pack_word(x.symbols(), q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Exhaustive decode of every string of length n over Z_q from every received
/// word at most two deletions away, compared with the grouping oracle, for
/// both the unique decoder and the list decoder.
inline DecoderTally decoder_exhaustive(std::size_t n, std::uint32_t q, const BaseBinarySketcher& base) {
  DecoderTally t;
  using FullKey = std::tuple<Residue, Residue, std::uint64_t, std::uint64_t>;
  using PartKey = std::tuple<Residue, Residue, std::uint64_t>;

  detail::for_each_string(n, q, [&](const std::vector<Symbol>& v) {
    ++t.strings;
    const QaryString alpha(q, v);
    const auto idx = detail::run_index(phi(alpha));
    const auto rl = run_decompose(alpha);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto c = detail::classify(idx[i], idx[j], rl.lengths[idx[i] - 1], rl.lengths[idx[j] - 1]);
        ++t.cases[static_cast<std::size_t>(c)];
      }
    }
  });

  detail::visit_sketch_groups<FullKey>(
      n, q,
      [&](const std::vector<Symbol>& v) {
        const auto s = full_sketch(QaryString(q, v), base);
        return FullKey{s.s1, s.s2, s.s3, detail::pack_bits(s.base_bits)};
      },
      [&](const std::vector<Symbol>& rep, std::uint64_t y, const std::vector<std::uint64_t>& oracle) {
        ++t.received;
        t.pairs += oracle.size();
        const auto sketch = full_sketch(QaryString(q, rep), base);
        const QaryString rx(q, detail::unpack_word(y, q));
        std::vector<std::uint64_t> got;
        try {
          got = detail::pack_all(decode_candidates(rx, sketch, base), q);
        } catch (const DecodeError&) {
          ++t.errors;
        }
        t.max_candidates = std::max<std::uint64_t>(t.max_candidates, got.size());
        if (got != oracle) ++t.oracle_mismatch;
        if (oracle.size() > 1) {
          t.ambiguous += oracle.size();
          if (!t.witness) t.witness = {detail::unpack_word(oracle[0], q), detail::unpack_word(oracle[1], q)};
        } else if (got == oracle) {
          ++t.recovered;
        }
      });

  detail::visit_sketch_groups<PartKey>(
      n, q,
      [&](const std::vector<Symbol>& v) {
        const auto s = full_sketch(QaryString(q, v), base);
        return PartKey{s.s1, s.s2, detail::pack_bits(s.base_bits)};
      },
      [&](const std::vector<Symbol>& rep, std::uint64_t y, const std::vector<std::uint64_t>& oracle) {
        t.list_pairs += oracle.size();
        const auto sketch = partial(full_sketch(QaryString(q, rep), base));
        const QaryString rx(q, detail::unpack_word(y, q));
        std::vector<std::uint64_t> got;
        try {
          got = detail::pack_all(decode_list(rx, sketch, base), q);
        } catch (const DecodeError&) {
          ++t.errors;
        }
        for (auto o : oracle) {
          if (!std::binary_search(got.begin(), got.end(), o)) ++t.list_missing;
        }
        if (got != oracle) ++t.list_oracle_mismatch;
        t.list_max = std::max<std::uint64_t>(t.list_max, got.size());
        if (got.size() > 2) ++t.list_over_two;
      });
  return t;
}

struct RandomDecoderTally {
  std::uint64_t trials = 0;
  std::uint64_t recovered = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t failed = 0;
  std::uint64_t list_missing = 0;
  std::uint64_t list_over_two = 0;
  std::uint64_t list_max = 0;
  std::uint64_t oracle_trials = 0;
  std::uint64_t oracle_mismatch = 0;
};

/// Random strings and random deletion pairs; every `oracle_every`-th trial is
/// also checked against brute-force supersequence search (0 disables).
inline RandomDecoderTally decoder_random(std::size_t trials, const std::vector<std::size_t>& ns,
                                         const std::vector<std::uint32_t>& qs, const std::string& base_id,
                                         std::uint64_t seed, std::size_t oracle_every,
                                         const std::filesystem::path& cache_dir = {}) {
  RandomDecoderTally t;
  std::mt19937_64 gen(seed);
  std::map<std::size_t, BaseSketcherPtr> bases;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = ns[gen() % ns.size()];
    const std::uint32_t q = qs[gen() % qs.size()];
    auto& base = bases[n];
    if (!base) base = make_base_sketcher(base_id, n, cache_dir);
    const QaryString alpha = detail::random_string(n, q, gen);
    const QaryString rx = delete_at(alpha, draw_positions(n, 2, gen));
    const auto sketch = full_sketch(alpha, *base);
    ++t.trials;
    try {
      const auto got = decode_candidates(rx, sketch, *base);
      if (got.size() == 1 && got[0] == alpha) ++t.recovered;
      else if (got.size() > 1) ++t.ambiguous;
      else ++t.failed;
      if (oracle_every != 0 && trial % oracle_every == 0) {
        ++t.oracle_trials;
        auto oracle = brute_force_decode(rx, sketch, *base);
        auto mine = got;
        std::sort(oracle.begin(), oracle.end());
        std::sort(mine.begin(), mine.end());
        if (oracle != mine) ++t.oracle_mismatch;
      }
    } catch (const DecodeError&) {
      ++t.failed;
    }
    try {
      const auto list = decode_list(rx, partial(sketch), *base);
      if (std::find(list.begin(), list.end(), alpha) == list.end()) ++t.list_missing;
      if (list.size() > 2) ++t.list_over_two;
      t.list_max = std::max<std::uint64_t>(t.list_max, list.size());
    } catch (const DecodeError&) {
      ++t.list_missing;
    }
  }
  return t;
}

struct DecoderSuiteOptions {
  std::vector<std::uint32_t> qs{3, 5};
  std::size_t n_lo = 5;
  std::size_t n_hi = 7;
  std::string base = "identity";
  std::size_t random_trials = 0;
  std::vector<std::size_t> random_ns{10, 11, 12, 13, 14};
  std::vector<std::uint32_t> random_qs{3, 5, 7};
  std::string random_base = "greedy";
  std::size_t oracle_every = 10;
  std::uint64_t seed = 1;
  std::size_t min_case_count = 100;
  std::filesystem::path cache_dir;
};

inline SuiteResults decoder_suite(const DecoderSuiteOptions& o) {
  SuiteResults out;
  detail::Stopwatch sw;
  DecoderTally total;
  std::ostringstream grid;
  for (auto q : o.qs) {
    for (std::size_t n = o.n_lo; n <= o.n_hi; ++n) {
      const auto base = make_base_sketcher(o.base, n, o.cache_dir);
      const auto t = decoder_exhaustive(n, q, *base);
      grid << " q" << q << "n" << n << ":amb=" << t.ambiguous << "/list_max=" << t.list_max;
      total.merge(t);
    }
  }
  const double te = sw.seconds();
  std::string witness;
  if (total.witness) {
    witness = " witness=(" + format_string(total.witness->first) + ")|(" + format_string(total.witness->second) + ")";
  }
  out.push_back({"decoder", "exhaustive_unique_recovery", total.recovered == total.pairs && total.pairs > 0,
                 detail::join_counts({{"strings", total.strings},
                                      {"pairs", total.pairs},
                                      {"recovered", total.recovered},
                                      {"ambiguous", total.ambiguous},
                                      {"max_candidates", total.max_candidates}}) +
                     witness + grid.str(),
                 te});
  out.push_back({"decoder", "exhaustive_oracle_agreement", total.oracle_mismatch == 0 && total.errors == 0,
                 detail::join_counts({{"received", total.received},
                                      {"mismatches", total.oracle_mismatch},
                                      {"errors", total.errors}}),
                 te});
  out.push_back({"decoder", "exhaustive_list_contains_truth", total.list_missing == 0 && total.list_oracle_mismatch == 0,
                 detail::join_counts({{"pairs", total.list_pairs},
                                      {"missing", total.list_missing},
                                      {"oracle_mismatches", total.list_oracle_mismatch}}),
                 te});
  out.push_back({"decoder", "exhaustive_list_size_at_most_2", total.list_max <= 2,
                 detail::join_counts({{"max_list", total.list_max}, {"words_over_2", total.list_over_two}}), te});
  bool cases_ok = true;
  for (std::size_t c = 1; c <= 4; ++c) cases_ok = cases_ok && total.cases[c] >= o.min_case_count;
  out.push_back({"decoder", "case_coverage", cases_ok,
                 detail::join_counts({{"same_run", total.cases[0]},
                                      {"both_survive", total.cases[1]},
                                      {"both_vanish", total.cases[2]},
                                      {"first_vanishes", total.cases[3]},
                                      {"second_vanishes", total.cases[4]}}),
                 te});

  if (o.random_trials > 0) {
    detail::Stopwatch sr;
    const auto r = decoder_random(o.random_trials, o.random_ns, o.random_qs, o.random_base, o.seed, o.oracle_every,
                                  o.cache_dir);
    const double tr = sr.seconds();
    out.push_back({"decoder", "random_unique_recovery", r.recovered == r.trials,
                   detail::join_counts({{"trials", r.trials},
                                        {"recovered", r.recovered},
                                        {"ambiguous", r.ambiguous},
                                        {"failed", r.failed}}),
                   tr});
    out.push_back({"decoder", "random_oracle_agreement", r.oracle_mismatch == 0,
                   detail::join_counts({{"checked", r.oracle_trials}, {"mismatches", r.oracle_mismatch}}), tr});
    out.push_back({"decoder", "random_list", r.list_missing == 0 && r.list_max <= 2,
                   detail::join_counts({{"trials", r.trials},
                                        {"missing", r.list_missing},
                                        {"max_list", r.list_max},
                                        {"over_2", r.list_over_two}}),
                   tr});
  }
  return out;
}

// ---- counts ------------------------------------------------------------------

inline SuiteResults counts_suite(const std::vector<std::uint32_t>& qs = {3, 5, 7}, std::size_t m_max = 9) {
  detail::Stopwatch sw;
  SuiteResults out;
  std::ostringstream closed, poly, bounds, rec;
  bool closed_ok = true, poly_ok = true, bounds_ok = true, rec_ok = true, lower_ok = true;
  std::map<std::pair<std::size_t, std::uint32_t>, TripleCounts> counts;
  for (auto q : qs) {
    for (std::size_t m = 3; m <= m_max; ++m) counts[{m, q}] = count_triples(m, q);
  }
  for (auto q : qs) {
    const BigInt f3 = counts[{3, q}].f0, f4 = counts[{4, q}].f0, f5 = counts[{5, q}].f0;
    const bool ok = f3 == f0_closed_form_3(q) && f4 == f0_closed_form_4(q) && f5 == f0_inclusion_exclusion_5(q);
    closed_ok = closed_ok && ok;
    closed << " q" << q << ":" << f3 << "," << f4 << "," << f5;
    const auto p5 = f0_polynomial_5(q);
    const bool pok = BigRational(f5) == p5;
    poly_ok = poly_ok && pok;
    poly << " q" << q << ":enum=" << f5 << ",formula=" << p5;
    for (std::size_t m = 3; m <= m_max; ++m) {
      const auto r = verify_Fm_bound(m, q);
      bounds_ok = bounds_ok && r.holds;
      const auto& c = counts[{m, q}];
      if (c.g + c.f0 + c.f1 < c.total) lower_ok = false;
      if (m == 3 || m == m_max) {
        bounds << " m" << m << "q" << q << ":" << r.f1 << "<" << r.f0 << "<";
        bounds.setf(std::ios::fixed);
        bounds.precision(6);
        bounds << static_cast<double>(r.bound);
      }
    }
    if (q <= 5) {
      for (std::size_t m = 6; m <= m_max; ++m) {
        const BigInt f = counts[{m, q}].f0, f1 = counts[{m - 1, q}].f0, f2 = counts[{m - 2, q}].f0,
                     f3m = counts[{m - 3, q}].f0;
        const BigInt Q = q;
        const bool ok6 = 6 * f <= 12 * f1 + 3 * (Q + 1) * (Q - 2) * f2 + 2 * Q * (Q - 1) * (Q - 2) * f3m;
        rec_ok = rec_ok && ok6;
        if (!ok6) rec << " m" << m << "q" << q;
      }
    }
  }
  const double t = sw.seconds();
  out.push_back({"counts", "closed_forms_m3_m4_m5", closed_ok, "F0(3),F0(4),F0(5):" + closed.str(), t});
  out.push_back({"counts", "f5_polynomial", poly_ok, poly.str().substr(1), t});
  out.push_back({"counts", "bound_F1_lt_F0_lt_0.99q^m", bounds_ok, bounds.str().substr(1), t});
  out.push_back({"counts", "recurrence_upper_bound", rec_ok, rec_ok ? "m=6..9 q<=5" : "violations:" + rec.str(), t});
  out.push_back({"counts", "G_lower_bound", lower_ok, "G >= q^m - F0 - F1", t});
  return out;
}

// ---- regular -------------------------------------------------------------------

struct RegularSuiteOptions {
  std::size_t n = 64;
  std::uint32_t q = 3;
  std::uint32_t d = 3;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::size_t rank_m_max = 8;
  std::filesystem::path cache_dir;
};

inline SuiteResults regular_suite(const RegularSuiteOptions& o) {
  SuiteResults out;
  detail::Stopwatch sw;
  const auto p = make_regular_params(o.n, o.q, o.d, std::nullopt, o.cache_dir);
  const std::size_t k = p.message_length;
  std::mt19937_64 gen(o.seed);
  std::set<std::vector<Symbol>> messages, outputs;
  std::uint64_t roundtrip_bad = 0, irregular = 0;
  while (messages.size() < o.trials) {
    const auto msg = detail::random_string(k, o.q, gen);
    if (!messages.insert(msg.vec()).second) continue;
    const auto enc = pi_encode(msg, p);
    if (!is_d_regular_qary(enc, o.d)) ++irregular;
    if (pi_decode(enc, p) != msg) ++roundtrip_bad;
    outputs.insert(enc.vec());
  }
  const auto zero = pi_encode(QaryString(o.q, std::vector<Symbol>(k, 0)), p);
  const auto block0 = unrank_U(0, *p.table);
  bool zero_ok = true;
  for (std::size_t b = 0; b < p.block_count; ++b) {
    for (std::size_t i = 0; i < p.m; ++i) zero_ok = zero_ok && zero[b * p.m + i] == block0[i];
  }
  for (std::size_t i = p.m * p.block_count; i < p.n; ++i) zero_ok = zero_ok && zero[i] == 0;
  const double t = sw.seconds();
  const std::string params = "n=" + std::to_string(o.n) + " q=" + std::to_string(o.q) + " d=" + std::to_string(o.d) +
                             " m=" + std::to_string(p.m) + " k=" + std::to_string(k);
  out.push_back({"regular", "roundtrip", roundtrip_bad == 0,
                 params + " " + detail::join_counts({{"trials", messages.size()}, {"failures", roundtrip_bad}}), t});
  out.push_back({"regular", "outputs_regular", irregular == 0,
                 detail::join_counts({{"trials", messages.size()}, {"irregular", irregular}}), t});
  out.push_back({"regular", "injective", outputs.size() == messages.size(),
                 detail::join_counts({{"messages", messages.size()}, {"distinct_outputs", outputs.size()}}), t});
  out.push_back({"regular", "zero_message", zero_ok, "all-zero message maps to repeated first block", t});

  detail::Stopwatch sr;
  std::uint64_t checked = 0, bad = 0;
  for (std::size_t m = 3; m <= o.rank_m_max; ++m) {
    const auto table = um_table(m, o.q, o.cache_dir);
    for (std::uint64_t i = 0; i < table->size(); ++i) {
      ++checked;
      const auto v = unrank_U(i, *table);
      if (!is_in_U_m(v) || rank_U(v, *table) != i) ++bad;
    }
    if (table->size() != count_G(m, o.q)) ++bad;
  }
  out.push_back({"regular", "rank_unrank", bad == 0,
                 detail::join_counts({{"m_max", o.rank_m_max}, {"members", checked}, {"failures", bad}}), sr.seconds()});
  return out;
}

// ---- code -------------------------------------------------------------------------

namespace detail {

// Length of a longest common subsequence of two equal-length words.
inline std::size_t lcs_length(std::span<const Symbol> x, std::span<const Symbol> y) {
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

}  // namespace detail

struct CodeSuiteOptions {
  std::uint32_t q = 3;
  std::size_t n = 5;
  std::string base = "identity";
  std::size_t random_trials = 0;
  std::vector<std::size_t> random_ns{10, 11, 12, 13, 14};
  std::vector<std::uint32_t> random_qs{3, 5, 7};
  std::string random_base = "greedy";
  std::size_t sampled_pairs = 0;
  std::uint64_t seed = 1;
  std::filesystem::path cache_dir;
};

inline SuiteResults code_suite(const CodeSuiteOptions& o) {
  SuiteResults out;
  detail::Stopwatch sw;
  const auto p = make_code_params(o.n, o.q, o.base, "identity", std::nullopt, o.cache_dir);
  std::vector<QaryString> messages, codewords;
  detail::for_each_string(p.message_length(), o.q, [&](const std::vector<Symbol>& v) {
    messages.emplace_back(o.q, v);
    codewords.push_back(encode(messages.back(), p));
  });

  std::map<std::vector<Symbol>, std::size_t> owner;
  std::set<std::pair<std::size_t, std::size_t>> clashes;
  std::uint64_t words = 0, recovered = 0, ambiguous = 0, uncorrectable = 0, wrong = 0;
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    std::set<QaryString> ball;
    for (std::size_t t = 0; t <= 2; ++t) ball.merge(deletion_ball(codewords[i], t));
    for (const auto& y : ball) {
      ++words;
      if (y.size() + 2 == p.codeword_length) {
        auto [it, fresh] = owner.emplace(y.vec(), i);
        if (!fresh && it->second != i) clashes.emplace(it->second, i);
      }
      const auto r = decode_all(y, p);
      if (r.messages.size() == 1 && r.messages[0] == messages[i]) ++recovered;
      else if (r.messages.size() > 1) ++ambiguous;
      else if (r.messages.empty()) ++uncorrectable;
      else ++wrong;
    }
  }
  const double te = sw.seconds();
  const std::string dims = "q=" + std::to_string(o.q) + " n=" + std::to_string(o.n) + " N=" +
                           std::to_string(p.codeword_length) + " ";
  out.push_back({"code", "exhaustive_pairwise_disjoint", clashes.empty(),
                 dims + detail::join_counts({{"codewords", codewords.size()}, {"clashing_pairs", clashes.size()}}), te});
  out.push_back({"code", "exhaustive_roundtrip", recovered == words,
                 dims + detail::join_counts({{"received", words},
                                             {"recovered", recovered},
                                             {"ambiguous", ambiguous},
                                             {"uncorrectable", uncorrectable},
                                             {"wrong", wrong}}),
                 te});

  if (o.random_trials > 0 || o.sampled_pairs > 0) {
    std::mt19937_64 gen(o.seed);
    std::map<std::pair<std::size_t, std::uint32_t>, CodeParams> params;
    auto params_for = [&](std::size_t n, std::uint32_t q) -> const CodeParams& {
      auto it = params.find({n, q});
      if (it == params.end()) {
        it = params.emplace(std::pair{n, q}, make_code_params(n, q, o.random_base, "identity", std::nullopt, o.cache_dir))
                 .first;
      }
      return it->second;
    };
    if (o.random_trials > 0) {
      detail::Stopwatch sr;
      std::uint64_t ok = 0, amb = 0, unc = 0, bad = 0;
      for (std::size_t trial = 0; trial < o.random_trials; ++trial) {
        const std::size_t n = o.random_ns[gen() % o.random_ns.size()];
        const std::uint32_t q = o.random_qs[gen() % o.random_qs.size()];
        const auto& cp = params_for(n, q);
        const auto msg = detail::random_string(n, q, gen);
        const auto cw = encode(msg, cp);
        const auto y = delete_at(cw, draw_positions(cw.size(), 2, gen));
        const auto r = decode_all(y, cp);
        if (r.messages.size() == 1 && r.messages[0] == msg) ++ok;
        else if (r.messages.size() > 1) ++amb;
        else if (r.messages.empty()) ++unc;
        else ++bad;
      }
      out.push_back({"code", "random_roundtrip", ok == o.random_trials,
                     detail::join_counts({{"trials", o.random_trials},
                                          {"recovered", ok},
                                          {"ambiguous", amb},
                                          {"uncorrectable", unc},
                                          {"wrong", bad}}),
                     sr.seconds()});
    }
    if (o.sampled_pairs > 0) {
      detail::Stopwatch sp;
      std::uint64_t clash = 0, checked = 0;
      while (checked < o.sampled_pairs) {
        const std::size_t n = o.random_ns[gen() % o.random_ns.size()];
        const std::uint32_t q = o.random_qs[gen() % o.random_qs.size()];
        const auto& cp = params_for(n, q);
        const auto a = detail::random_string(n, q, gen);
        const auto b = detail::random_string(n, q, gen);
        if (a == b) continue;
        ++checked;
        const auto ca = encode(a, cp), cb = encode(b, cp);
        if (detail::lcs_length(ca.symbols(), cb.symbols()) + 2 >= cp.codeword_length) ++clash;
      }
      out.push_back({"code", "sampled_pairwise_disjoint", clash == 0,
                     detail::join_counts({{"pairs", checked}, {"clashing", clash}}), sp.seconds()});
    }
  }
  return out;
}

}  // namespace qdel
