#pragma once

// The three modular sketches and the combined sketch
//
//   s1 = sum alpha_i            (mod q)
//   s2 = sum alpha_i^2          (mod q)
//   s3 = sum_k k * beta_k       (mod n*q), beta_k the k-th run sum
//
// bundled with the base binary sketch of phi(alpha).

#include <cstddef>
#include <cstdint>
#include <string>

#include "qdel/binary_base.hpp"
#include "qdel/errors.hpp"
#include "qdel/modular.hpp"
#include "qdel/phi.hpp"
#include "qdel/strings.hpp"

namespace qdel {

inline Residue s1(const QaryString& alpha) {
  Residue acc = 0;
  for (Symbol v : alpha) acc = (acc + v) % alpha.q();
  return acc;
}

inline Residue s2(const QaryString& alpha) {
  Residue acc = 0;
  for (Symbol v : alpha) acc = (acc + static_cast<Residue>(v) * v % alpha.q()) % alpha.q();
  return acc;
}

inline std::uint64_t s3_modulus(std::size_t n, std::uint32_t q) { return static_cast<std::uint64_t>(n) * q; }

/// Run-weighted sum, reduced mod n*q where n = |alpha|. One pass; the run
/// index advances whenever the phi bit flips.
inline std::uint64_t s3(const QaryString& alpha) {
  if (alpha.empty()) throw ParameterError("s3 of an empty string");
  const std::uint64_t mod = s3_modulus(alpha.size(), alpha.q());
  unsigned __int128 acc = alpha[0];
  std::uint64_t run = 1;
  bool bit = true;
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    const bool b = alpha[i] >= alpha[i - 1];
    if (b != bit) {
      ++run;
      bit = b;
    }
    acc = (acc + static_cast<unsigned __int128>(run) * alpha[i]) % mod;
  }
  return static_cast<std::uint64_t>(acc % mod);
}

/// Field widths of the serialized sketch.
struct SketchLayout {
  std::size_t base_width = 0;
  std::size_t residue_width = 0;  // s1 and s2, ceil(log2 q) each
  std::size_t s3_width = 0;       // ceil(log2 nq)

  std::size_t total() const noexcept { return base_width + 2 * residue_width + s3_width; }
};

inline SketchLayout sketch_layout(std::size_t n, std::uint32_t q, std::size_t base_width) {
  return {base_width, bits_for(q), bits_for(s3_modulus(n, q))};
}

inline SketchLayout sketch_layout(std::uint32_t q, const BaseBinarySketcher& base) {
  return sketch_layout(base.input_length(), q, base.sketch_length());
}

struct QarySketch {
  std::size_t n = 0;
  std::uint32_t q = 0;
  Residue s1 = 0;
  Residue s2 = 0;
  std::uint64_t s3 = 0;
  Bits base_bits;
  std::string base_id;

  friend bool operator==(const QarySketch&, const QarySketch&) = default;
};

inline QarySketch full_sketch(const QaryString& alpha, const BaseBinarySketcher& base) {
  require_odd_prime(alpha.q());
  if (alpha.size() != base.input_length()) {
    throw ParameterError("string length " + std::to_string(alpha.size()) + " does not match base sketcher n=" +
                         std::to_string(base.input_length()));
  }
  QarySketch s;
  s.n = alpha.size();
  s.q = alpha.q();
  s.s1 = qdel::s1(alpha);
  s.s2 = qdel::s2(alpha);
  s.s3 = qdel::s3(alpha);
  s.base_bits = base.compute(phi(alpha));
  s.base_id = base.id();
  return s;
}

/// base_bits, then s1 and s2 as ceil(log2 q)-bit fields, then s3 as a
/// ceil(log2 nq)-bit field; all big-endian.
inline Bits serialize_sketch(const QarySketch& s) {
  const auto layout = sketch_layout(s.n, s.q, s.base_bits.size());
  Bits out = s.base_bits;
  append_bits(out, s.s1, layout.residue_width);
  append_bits(out, s.s2, layout.residue_width);
  append_bits(out, s.s3, layout.s3_width);
  return out;
}

inline QarySketch deserialize_sketch(std::span<const std::uint8_t> bits, std::size_t n, std::uint32_t q,
                                     const std::string& base_id, std::size_t base_width) {
  const auto layout = sketch_layout(n, q, base_width);
  if (bits.size() != layout.total()) {
    throw FormatError("serialized sketch has " + std::to_string(bits.size()) + " bits, expected " +
                      std::to_string(layout.total()));
  }
  for (auto b : bits) {
    if (b > 1) throw FormatError("serialized sketch contains a non-bit");
  }
  QarySketch s;
  s.n = n;
  s.q = q;
  s.base_id = base_id;
  s.base_bits.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(base_width));
  std::size_t off = base_width;
  s.s1 = read_bits(bits, off, layout.residue_width);
  off += layout.residue_width;
  s.s2 = read_bits(bits, off, layout.residue_width);
  off += layout.residue_width;
  s.s3 = read_bits(bits, off, layout.s3_width);
  if (s.s1 >= q || s.s2 >= q) throw FormatError("sketch residue out of range for q=" + std::to_string(q));
  if (s.s3 >= s3_modulus(n, q)) throw FormatError("s3 field out of range for n*q");
  return s;
}

inline QarySketch deserialize_sketch(std::span<const std::uint8_t> bits, std::uint32_t q,
                                     const BaseBinarySketcher& base) {
  return deserialize_sketch(bits, base.input_length(), q, base.id(), base.sketch_length());
}

/// Hex dump, most significant bit first; the last nibble is zero-padded on
/// the right.
inline std::string bits_to_hex(std::span<const std::uint8_t> bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    unsigned nib = 0;
    for (std::size_t j = 0; j < 4; ++j) nib = (nib << 1) | (i + j < bits.size() ? bits[i + j] : 0U);
    out += kDigits[nib];
  }
  return out;
}

inline Bits hex_to_bits(std::string_view hex, std::size_t bit_count) {
  if (hex.size() != (bit_count + 3) / 4) throw FormatError("hex length does not match bit count");
  Bits out;
  for (char c : hex) {
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw FormatError("bad hex digit");
    append_bits(out, v, 4);
  }
  for (std::size_t i = bit_count; i < out.size(); ++i) {
    if (out[i]) throw FormatError("nonzero padding in hex sketch");
  }
  out.resize(bit_count);
  return out;
}

}  // namespace qdel
