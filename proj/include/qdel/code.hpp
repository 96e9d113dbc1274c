#pragma once

// Systematic 2-deletion code built from the sketch.
//
//   codeword = payload | S | H | H | H
//
// S is the serialized full sketch of the payload and H the inner binary
// sketch of S, each written one bit per symbol so a symbol deletion there is
// a bit deletion. In regular mode the payload is pi_encode(message).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdel/binary_base.hpp"
#include "qdel/decoder.hpp"
#include "qdel/errors.hpp"
#include "qdel/regular.hpp"
#include "qdel/sketch.hpp"
#include "qdel/strings.hpp"

namespace qdel {

struct CodeParams {
  std::size_t n = 0;  // payload length
  std::uint32_t q = 0;
  BaseSketcherPtr base;   // on phi(payload), length n
  BaseSketcherPtr inner;  // on S, length L_S
  std::size_t sketch_symbols = 0;  // L_S
  std::size_t hash_symbols = 0;    // L_H
  std::size_t codeword_length = 0; // N = n + L_S + 3 L_H
  std::optional<RegularEncoderParams> regular;

  std::size_t message_length() const noexcept { return regular ? regular->message_length : n; }
};

inline CodeParams make_code_params(std::size_t n, std::uint32_t q, std::string_view base_id = "identity",
                                   std::string_view inner_id = "identity",
                                   std::optional<std::uint32_t> regular_d = std::nullopt,
                                   const std::filesystem::path& cache_dir = {}) {
  require_odd_prime(q);
  if (n < 2) throw ParameterError("message length n must be at least 2");
  CodeParams p;
  p.n = n;
  p.q = q;
  p.base = make_base_sketcher(base_id, n, cache_dir);
  p.sketch_symbols = sketch_layout(q, *p.base).total();
  p.inner = make_base_sketcher(inner_id, p.sketch_symbols, cache_dir);
  p.hash_symbols = p.inner->sketch_length();
  p.codeword_length = n + p.sketch_symbols + 3 * p.hash_symbols;
  if (regular_d) p.regular = make_regular_params(n, q, *regular_d, std::nullopt, cache_dir);
  return p;
}

namespace detail {

inline QaryString encode_payload(const QaryString& payload, const CodeParams& p) {
  const Bits s = serialize_sketch(full_sketch(payload, *p.base));
  const Bits h = p.inner->compute(BinaryString(s));
  std::vector<Symbol> out = payload.vec();
  out.reserve(p.codeword_length);
  out.insert(out.end(), s.begin(), s.end());
  for (int copy = 0; copy < 3; ++copy) out.insert(out.end(), h.begin(), h.end());
  if (out.size() != p.codeword_length) throw InternalError("codeword length differs from N");
  return QaryString(p.q, std::move(out));
}

inline std::optional<Bits> region_bits(const QaryString& x, std::size_t from, std::size_t len) {
  Bits out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const Symbol v = x[from + i];
    if (v > 1) return std::nullopt;
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

}  // namespace detail

inline QaryString encode(const QaryString& message, const CodeParams& p) {
  if (message.q() != p.q) throw ParameterError("message alphabet differs from code alphabet");
  if (message.size() != p.message_length()) {
    throw ParameterError("message length " + std::to_string(message.size()) + " != " +
                         std::to_string(p.message_length()));
  }
  return detail::encode_payload(p.regular ? pi_encode(message, *p.regular) : message, p);
}

struct CodeDecodeResult {
  std::vector<QaryString> messages;  // verified, distinct
  std::size_t distributions = 0;     // deletion splits over the five regions that were tried
  std::size_t candidates = 0;        // payload candidates before verification
};

/// Every message whose codeword contains `received`. A received word of
/// length N-t (t <= 2) is split over the five regions in every way; each split
/// yields H from an intact copy, S via the inner base and payload candidates
/// via the sketch decoder.
inline CodeDecodeResult decode_all(const QaryString& received, const CodeParams& p) {
  if (received.q() != p.q) throw ParameterError("received alphabet differs from code alphabet");
  if (received.size() > p.codeword_length) {
    throw ParameterError("received length " + std::to_string(received.size()) + " exceeds N=" +
                         std::to_string(p.codeword_length));
  }
  if (received.size() + 2 < p.codeword_length) {
    throw DecodeError(DecodeFailure::kInconsistent, "received word is " +
                                                        std::to_string(p.codeword_length - received.size()) +
                                                        " symbols short; at most 2 deletions are correctable");
  }
  const std::size_t t = p.codeword_length - received.size();
  const std::array<std::size_t, 5> len{p.n, p.sketch_symbols, p.hash_symbols, p.hash_symbols, p.hash_symbols};

  CodeDecodeResult result;
  std::set<std::vector<Symbol>> payloads;
  std::set<std::vector<Symbol>> accepted;

  std::array<std::size_t, 5> del{};
  auto try_split = [&]() {
    ++result.distributions;
    std::array<std::size_t, 5> start{};
    for (std::size_t r = 1; r < 5; ++r) start[r] = start[r - 1] + len[r - 1] - del[r - 1];

    // H from an intact copy; every copy must fit inside it.
    std::optional<Bits> h;
    for (std::size_t r = 2; r < 5 && !h; ++r) {
      if (del[r] == 0) h = detail::region_bits(received, start[r], len[r]);
    }
    if (!h) return;
    const BinaryString hs(*h);
    for (std::size_t r = 2; r < 5; ++r) {
      const auto copy = detail::region_bits(received, start[r], len[r] - del[r]);
      if (!copy || !is_subsequence(BinaryString(*copy), hs)) return;
    }

    const auto s_region = detail::region_bits(received, start[1], len[1] - del[1]);
    if (!s_region) return;
    Bits s_bits;
    if (del[1] == 0) {
      if (p.inner->compute(BinaryString(*s_region)) != *h) return;
      s_bits = *s_region;
    } else {
      try {
        const auto rx = truncate_to(BinaryString(*s_region), len[1] - 2);
        s_bits = p.inner->decode_unique(rx, *h).vec();
      } catch (const DecodeError&) {
        return;
      }
    }

    QarySketch sketch;
    try {
      sketch = deserialize_sketch(s_bits, p.q, *p.base);
    } catch (const FormatError&) {
      return;
    }

    const QaryString m_region(p.q, std::vector<Symbol>(received.begin() + static_cast<std::ptrdiff_t>(start[0]),
                                                       received.begin() + static_cast<std::ptrdiff_t>(start[0] + len[0] - del[0])));
    std::vector<QaryString> cands;
    if (del[0] == 0) {
      cands.push_back(m_region);
    } else {
      try {
        cands = decode_candidates(m_region, sketch, *p.base);
      } catch (const DecodeError&) {
        return;
      }
    }
    for (auto& c : cands) payloads.insert(c.vec());
  };

  for (del[0] = 0; del[0] <= t; ++del[0])
    for (del[1] = 0; del[0] + del[1] <= t; ++del[1])
      for (del[2] = 0; del[0] + del[1] + del[2] <= t; ++del[2])
        for (del[3] = 0; del[0] + del[1] + del[2] + del[3] <= t; ++del[3]) {
          del[4] = t - del[0] - del[1] - del[2] - del[3];
          if (del[4] <= len[4] && del[0] <= len[0] && del[1] <= len[1] && del[2] <= len[2] && del[3] <= len[3]) {
            try_split();
          }
        }

  result.candidates = payloads.size();
  for (const auto& v : payloads) {
    const QaryString payload(p.q, v);
    QaryString message = payload;
    if (p.regular) {
      try {
        message = pi_decode(payload, *p.regular);
      } catch (const FormatError&) {
        continue;
      }
    }
    if (is_subsequence(received, encode(message, p))) accepted.insert(message.vec());
  }
  for (const auto& v : accepted) result.messages.emplace_back(p.q, v);
  return result;
}

inline QaryString decode(const QaryString& received, const CodeParams& p) {
  const auto r = decode_all(received, p);
  if (r.messages.empty()) throw DecodeError(DecodeFailure::kInconsistent, "no codeword contains the received word");
  if (r.messages.size() > 1) {
    throw DecodeError(DecodeFailure::kAmbiguous,
                      std::to_string(r.messages.size()) + " distinct codewords contain the received word");
  }
  return r.messages.front();
}

// ---- redundancy accounting -------------------------------------------------

struct RedundancyReport {
  std::size_t n = 0;
  std::uint32_t q = 0;
  std::string base_id;
  std::string inner_id;
  std::size_t base_bits = 0;     // l(n) as implemented
  std::size_t residue_bits = 0;  // each of s1, s2
  std::size_t s3_bits = 0;
  std::size_t sketch_bits = 0;   // |S|
  std::size_t hash_bits = 0;     // |H|
  std::size_t codeword_length = 0;
  double reference_sketch_bits = 0;   // l(n) + log2 n + 3 log2 q
  double headline_bits = 0;           // 5 log2 n + 10 log2 log2 n + 3 log2 q
  double code_overhead_bits = 0;      // (N - n) log2 q
  std::string note;
};

inline RedundancyReport redundancy_report(const CodeParams& p) {
  RedundancyReport r;
  r.n = p.n;
  r.q = p.q;
  r.base_id = p.base->id();
  r.inner_id = p.inner->id();
  const auto layout = sketch_layout(p.q, *p.base);
  r.base_bits = layout.base_width;
  r.residue_bits = layout.residue_width;
  r.s3_bits = layout.s3_width;
  r.sketch_bits = layout.total();
  r.hash_bits = p.hash_symbols;
  r.codeword_length = p.codeword_length;
  const double ln = std::log2(static_cast<double>(p.n));
  const double lq = std::log2(static_cast<double>(p.q));
  r.reference_sketch_bits = static_cast<double>(r.base_bits) + ln + 3 * lq;
  r.headline_bits = 5 * ln + 10 * std::log2(std::max(ln, 1.0)) + 3 * lq;
  r.code_overhead_bits = static_cast<double>(p.codeword_length - p.n) * lq;
  const std::string base = detail::strip_list_suffix(r.base_id);
  if (base == "identity") {
    r.note = "identity base is an oracle, l(n)=n, no redundancy claim";
  } else {
    r.note = "greedy base width is measured from its color table";
  }
  r.note += "; headline constants need an external binary base that is not implemented";
  return r;
}

// ---- params files ------------------------------------------------------------

/// Settings read from a "key=value" params file. Unset keys stay empty.
struct ParamsFile {
  std::optional<std::size_t> n;
  std::optional<std::uint32_t> q;
  std::optional<std::uint32_t> d;
  std::optional<std::string> base;
  std::optional<std::string> inner_base;
  std::optional<bool> regular_mode;
  std::optional<std::string> cache_dir;
};

inline ParamsFile parse_params(std::istream& in) {
  ParamsFile f;
  std::string line;
  std::size_t lineno = 0;
  auto number = [&](const std::string& key, const std::string& v) -> std::uint64_t {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || v.empty() || v[0] == '-') {
      throw FormatError("params line " + std::to_string(lineno) + ": " + key + " needs a non-negative integer");
    }
    return x;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("params line " + std::to_string(lineno) + " has no '='");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "n") f.n = number(key, value);
    else if (key == "q") f.q = static_cast<std::uint32_t>(number(key, value));
    else if (key == "d") f.d = static_cast<std::uint32_t>(number(key, value));
    else if (key == "base") f.base = value;
    else if (key == "inner_base") f.inner_base = value;
    else if (key == "cache_dir") f.cache_dir = value;
    else if (key == "regular_mode") {
      if (value == "on") f.regular_mode = true;
      else if (value == "off") f.regular_mode = false;
      else throw FormatError("params line " + std::to_string(lineno) + ": regular_mode must be on or off");
    } else {
      throw FormatError("params line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return f;
}

inline ParamsFile load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open params file " + path.string());
  return parse_params(in);
}

}  // namespace qdel
