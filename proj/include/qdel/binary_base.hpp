#pragma once

// Pluggable binary 2-deletion sketch and two desk-scale implementations:
//
//   identity  the sketch is the string itself; an isolation oracle.
//   greedy    a first-fit coloring of the 2-deletion confusability graph of
//             {0,1}^n in lexicographic order; the sketch is the color.
//
// Both can be wrapped by ListDecodingAdapter to expose a list decoder.

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdel/errors.hpp"
#include "qdel/strings.hpp"

namespace qdel {

using Bits = std::vector<std::uint8_t>;

/// Fixed-width big-endian bit field.
inline void append_bits(Bits& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
}

inline std::uint64_t read_bits(std::span<const std::uint8_t> bits, std::size_t offset, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | bits[offset + i];
  return v;
}

/// Number of bits needed to write values 0..count-1.
inline std::size_t bits_for(std::uint64_t count) {
  return count <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(count - 1));
}

class BaseBinarySketcher {
 public:
  virtual ~BaseBinarySketcher() = default;

  virtual std::string id() const = 0;
  /// Configured input length n.
  virtual std::size_t input_length() const = 0;
  /// Output width l(n) in bits.
  virtual std::size_t sketch_length() const = 0;

  virtual Bits compute(const BinaryString& a) const = 0;

  /// Recovers a from a length n-2 subsequence and compute(a). Throws
  /// DecodeError when no consistent string exists.
  virtual BinaryString decode_unique(const BinaryString& received, std::span<const std::uint8_t> sketch) const = 0;

  /// Declared list size L when a list decoder is available.
  virtual std::optional<std::size_t> list_size() const { return std::nullopt; }

  virtual std::vector<BinaryString> decode_list(const BinaryString& received,
                                                std::span<const std::uint8_t> sketch) const {
    (void)received;
    (void)sketch;
    throw ParameterError("base sketcher '" + id() + "' has no list decoder");
  }

 protected:
  void check_decode_input(const BinaryString& received, std::span<const std::uint8_t> sketch) const {
    if (received.size() + 2 != input_length()) {
      throw ParameterError("received length " + std::to_string(received.size()) + " != n-2 for n=" +
                           std::to_string(input_length()));
    }
    if (sketch.size() != sketch_length()) {
      throw FormatError("base sketch has " + std::to_string(sketch.size()) + " bits, expected " +
                        std::to_string(sketch_length()));
    }
  }

  void check_input(const BinaryString& a) const {
    if (a.size() != input_length()) {
      throw ParameterError("base sketcher configured for n=" + std::to_string(input_length()) +
                           ", got length " + std::to_string(a.size()));
    }
  }
};

using BaseSketcherPtr = std::shared_ptr<const BaseBinarySketcher>;

class IdentitySketcher final : public BaseBinarySketcher {
 public:
  explicit IdentitySketcher(std::size_t n) : n_(n) {
    if (n < 1) throw ParameterError("identity sketcher needs n >= 1");
  }

  std::string id() const override { return "identity"; }
  std::size_t input_length() const override { return n_; }
  std::size_t sketch_length() const override { return n_; }

  Bits compute(const BinaryString& a) const override {
    check_input(a);
    return a.vec();
  }

  BinaryString decode_unique(const BinaryString& received, std::span<const std::uint8_t> sketch) const override {
    check_decode_input(received, sketch);
    BinaryString a(Bits(sketch.begin(), sketch.end()));
    if (!is_subsequence(received, a)) {
      throw DecodeError(DecodeFailure::kInconsistent, "received word is not a subsequence of the sketch");
    }
    return a;
  }

 private:
  std::size_t n_;
};

// ---- greedy coloring -----------------------------------------------------

namespace detail {

// Strings of length L are packed MSB-first into integers, so numeric order is
// lexicographic order.
inline std::uint32_t delete_bit(std::uint32_t x, std::size_t len, std::size_t pos) {
  const std::size_t tail = len - pos - 1;
  const std::uint32_t high = x >> (tail + 1);
  const std::uint32_t low = x & ((std::uint32_t{1} << tail) - 1);
  return (high << tail) | low;
}

inline std::uint32_t insert_bit(std::uint32_t x, std::size_t len, std::size_t slot, std::uint32_t bit) {
  const std::size_t tail = len - slot;
  const std::uint32_t high = tail >= 32 ? 0 : x >> tail;
  const std::uint32_t low = x & ((std::uint32_t{1} << tail) - 1);
  return (((high << 1) | bit) << tail) | low;
}

inline std::uint32_t bit_at(std::uint32_t x, std::size_t len, std::size_t pos) { return (x >> (len - pos - 1)) & 1U; }

// Distinct strings obtained by inserting one bit. Inserting b right after a b
// repeats an earlier insertion, so those slots are skipped.
inline void single_insertions(std::uint32_t x, std::size_t len, std::vector<std::uint32_t>& out) {
  for (std::size_t slot = 0; slot <= len; ++slot) {
    for (std::uint32_t b = 0; b < 2; ++b) {
      if (slot > 0 && bit_at(x, len, slot - 1) == b) continue;
      out.push_back(insert_bit(x, len, slot, b));
    }
  }
}

inline std::vector<std::uint32_t> double_insertions(std::uint32_t y, std::size_t len) {
  std::vector<std::uint32_t> once, twice;
  single_insertions(y, len, once);
  for (auto z : once) single_insertions(z, len + 1, twice);
  std::sort(twice.begin(), twice.end());
  twice.erase(std::unique(twice.begin(), twice.end()), twice.end());
  return twice;
}

inline std::vector<std::uint32_t> double_deletions(std::uint32_t x, std::size_t len) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < len; ++i) {
    if (i > 0 && bit_at(x, len, i) == bit_at(x, len, i - 1)) continue;
    const std::uint32_t y = delete_bit(x, len, i);
    for (std::size_t j = i; j + 1 < len; ++j) {
      if (j > i && bit_at(y, len - 1, j) == bit_at(y, len - 1, j - 1)) continue;
      out.push_back(delete_bit(y, len - 1, j));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::uint32_t pack(const BinaryString& a) {
  std::uint32_t x = 0;
  for (auto b : a) x = (x << 1) | b;
  return x;
}

inline BinaryString unpack(std::uint32_t x, std::size_t len) {
  Bits bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = static_cast<std::uint8_t>(bit_at(x, len, i));
  return BinaryString(std::move(bits));
}

}  // namespace detail

/// Color of every string of {0,1}^n, indexed by its lexicographic rank.
struct ColorTable {
  std::size_t n = 0;
  std::uint32_t color_count = 0;
  std::vector<std::uint32_t> colors;

  friend bool operator==(const ColorTable&, const ColorTable&) = default;
};

inline constexpr std::size_t kGreedyMaxN = 16;

/// First-fit coloring: each string, in lexicographic order, takes the
/// smallest color not held by an earlier string sharing a length n-2
/// subsequence with it.
inline ColorTable build_color_table(std::size_t n, std::size_t max_n = kGreedyMaxN) {
  if (n < 2 || n > max_n) {
    throw ParameterError("greedy sketcher supports 2 <= n <= " + std::to_string(max_n) + " (got " +
                         std::to_string(n) + ")");
  }
  ColorTable table;
  table.n = n;
  const std::uint32_t count = std::uint32_t{1} << n;
  table.colors.assign(count, 0);

  const std::size_t sub_len = n - 2;
  std::vector<std::vector<std::uint32_t>> supers(std::size_t{1} << sub_len);
  for (std::uint32_t y = 0; y < supers.size(); ++y) supers[y] = detail::double_insertions(y, sub_len);

  std::vector<std::uint32_t> seen;  // seen[c] == x+1 marks color c as taken for x
  for (std::uint32_t x = 0; x < count; ++x) {
    for (std::uint32_t y : detail::double_deletions(x, n)) {
      for (std::uint32_t z : supers[y]) {
        if (z >= x) break;
        seen[table.colors[z]] = x + 1;
      }
    }
    std::uint32_t c = 0;
    while (c < seen.size() && seen[c] == x + 1) ++c;
    if (c == seen.size()) seen.push_back(0);
    table.colors[x] = c;
  }
  table.color_count = static_cast<std::uint32_t>(seen.size());
  return table;
}

inline void save_color_table(const ColorTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write color table to " + path.string());
  out << "n=" << table.n << " colors=" << table.color_count << '\n';
  for (auto c : table.colors) out << c << '\n';
}

inline ColorTable load_color_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open color table " + path.string());
  std::string header;
  std::getline(in, header);
  ColorTable table;
  unsigned long long n = 0, k = 0;
  if (std::sscanf(header.c_str(), "n=%llu colors=%llu", &n, &k) != 2 || n < 2 || n > 30) {
    throw FormatError("bad color table header: '" + header + "'");
  }
  table.n = n;
  table.color_count = static_cast<std::uint32_t>(k);
  table.colors.reserve(std::size_t{1} << n);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const unsigned long long c = std::stoull(line);
    if (c >= k) throw FormatError("color " + line + " exceeds declared color count");
    table.colors.push_back(static_cast<std::uint32_t>(c));
  }
  if (table.colors.size() != (std::size_t{1} << n)) throw FormatError("color table has wrong number of rows");
  return table;
}

/// Process-wide table cache. With a cache directory, tables are also read
/// from / written to "<dir>/greedy_n<n>.txt".
inline std::shared_ptr<const ColorTable> color_table(std::size_t n, const std::filesystem::path& cache_dir = {},
                                                     std::size_t max_n = kGreedyMaxN) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const ColorTable>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  std::shared_ptr<const ColorTable> table;
  const auto file = cache_dir.empty() ? std::filesystem::path{} : cache_dir / ("greedy_n" + std::to_string(n) + ".txt");
  if (!file.empty() && std::filesystem::exists(file)) {
    auto loaded = load_color_table(file);
    if (loaded.n != n) throw FormatError("color table file " + file.string() + " is for a different n");
    table = std::make_shared<const ColorTable>(std::move(loaded));
  } else {
    table = std::make_shared<const ColorTable>(build_color_table(n, max_n));
    if (!file.empty()) {
      std::filesystem::create_directories(cache_dir);
      save_color_table(*table, file);
    }
  }
  cache.emplace(n, table);
  return table;
}

class GreedyColoringSketcher final : public BaseBinarySketcher {
 public:
  explicit GreedyColoringSketcher(std::size_t n, const std::filesystem::path& cache_dir = {},
                                  std::size_t max_n = kGreedyMaxN)
      : table_(color_table(n, cache_dir, max_n)), width_(std::max<std::size_t>(1, bits_for(table_->color_count))) {}

  std::string id() const override { return "greedy"; }
  std::size_t input_length() const override { return table_->n; }
  std::size_t sketch_length() const override { return width_; }
  std::uint32_t color_count() const noexcept { return table_->color_count; }
  const ColorTable& table() const noexcept { return *table_; }

  Bits compute(const BinaryString& a) const override {
    check_input(a);
    Bits out;
    append_bits(out, table_->colors[detail::pack(a)], width_);
    return out;
  }

  BinaryString decode_unique(const BinaryString& received, std::span<const std::uint8_t> sketch) const override {
    check_decode_input(received, sketch);
    const std::uint64_t color = read_bits(sketch, 0, width_);
    std::optional<std::uint32_t> found;
    for (std::uint32_t z : detail::double_insertions(detail::pack(received), received.size())) {
      if (table_->colors[z] != color) continue;
      if (found) throw InternalError("greedy coloring: two supersequences share a color");
      found = z;
    }
    if (!found) throw DecodeError(DecodeFailure::kInconsistent, "no supersequence carries the sketched color");
    return detail::unpack(*found, table_->n);
  }

 private:
  std::shared_ptr<const ColorTable> table_;
  std::size_t width_;
};

/// Exposes a unique decoder as a list decoder with L = 1.
class ListDecodingAdapter final : public BaseBinarySketcher {
 public:
  explicit ListDecodingAdapter(BaseSketcherPtr base) : base_(std::move(base)) {
    if (!base_) throw ParameterError("list adapter needs a base sketcher");
  }

  std::string id() const override { return base_->id() + "+list"; }
  std::size_t input_length() const override { return base_->input_length(); }
  std::size_t sketch_length() const override { return base_->sketch_length(); }
  Bits compute(const BinaryString& a) const override { return base_->compute(a); }

  BinaryString decode_unique(const BinaryString& received, std::span<const std::uint8_t> sketch) const override {
    return base_->decode_unique(received, sketch);
  }

  std::optional<std::size_t> list_size() const override { return 1; }

  std::vector<BinaryString> decode_list(const BinaryString& received,
                                        std::span<const std::uint8_t> sketch) const override {
    return {base_->decode_unique(received, sketch)};
  }

 private:
  BaseSketcherPtr base_;
};

inline BaseSketcherPtr list_wrapper(BaseSketcherPtr base) {
  return std::make_shared<const ListDecodingAdapter>(std::move(base));
}

inline BaseSketcherPtr identity_sketcher(std::size_t n) { return std::make_shared<const IdentitySketcher>(n); }

inline BaseSketcherPtr greedy_coloring_sketcher(std::size_t n, const std::filesystem::path& cache_dir = {}) {
  return std::make_shared<const GreedyColoringSketcher>(n, cache_dir);
}

/// Builds a sketcher from its id: "identity", "greedy", optionally suffixed "+list".
inline BaseSketcherPtr make_base_sketcher(std::string_view id, std::size_t n,
                                          const std::filesystem::path& cache_dir = {}) {
  constexpr std::string_view kList = "+list";
  if (id.size() > kList.size() && id.substr(id.size() - kList.size()) == kList) {
    return list_wrapper(make_base_sketcher(id.substr(0, id.size() - kList.size()), n, cache_dir));
  }
  if (id == "identity") return identity_sketcher(n);
  if (id == "greedy") return greedy_coloring_sketcher(n, cache_dir);
  throw ParameterError("unknown base sketcher '" + std::string(id) + "' (expected identity or greedy)");
}

}  // namespace qdel
