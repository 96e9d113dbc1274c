#pragma once

// String carriers for the q-ary and binary alphabets, deletion primitives and
// the shared text format (one string per line, decimal symbols separated by
// single spaces, empty line = empty string).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qdel/errors.hpp"

namespace qdel {

using Symbol = std::uint32_t;

/// A finite string over {0,...,q-1}. The alphabet size travels with the value.
class QaryString {
 public:
  QaryString() = default;

  QaryString(std::uint32_t q, std::vector<Symbol> symbols) : q_(q), symbols_(std::move(symbols)) {
    if (q_ < 2) throw ParameterError("alphabet size must be at least 2");
    for (Symbol s : symbols_) {
      if (s >= q_) {
        throw ParameterError("symbol " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(q_));
      }
    }
  }

  std::uint32_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }

  /// 0-based access; public position arguments elsewhere are 1-based.
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  const std::vector<Symbol>& vec() const noexcept { return symbols_; }

  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  friend bool operator==(const QaryString&, const QaryString&) = default;
  friend auto operator<=>(const QaryString&, const QaryString&) = default;

 private:
  std::uint32_t q_ = 2;
  std::vector<Symbol> symbols_;
};

class BinaryString {
 public:
  BinaryString() = default;

  explicit BinaryString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
      if (b > 1) throw ParameterError("binary string element must be 0 or 1");
    }
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  const std::vector<std::uint8_t>& vec() const noexcept { return bits_; }

  auto begin() const noexcept { return bits_.begin(); }
  auto end() const noexcept { return bits_.end(); }

  /// The same bits viewed as a q=2 string.
  QaryString as_qary() const { return QaryString(2, std::vector<Symbol>(bits_.begin(), bits_.end())); }

  friend bool operator==(const BinaryString&, const BinaryString&) = default;
  friend auto operator<=>(const BinaryString&, const BinaryString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

namespace detail {

template <typename T>
bool is_subsequence_of(std::span<const T> y, std::span<const T> x) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < x.size() && j < y.size(); ++i) {
    if (x[i] == y[j]) ++j;
  }
  return j == y.size();
}

template <typename T>
std::vector<T> erase_positions(std::span<const T> x, std::span<const std::size_t> positions) {
  std::vector<bool> drop(x.size(), false);
  for (std::size_t p : positions) {
    if (p < 1 || p > x.size()) {
      throw ParameterError("deletion position " + std::to_string(p) + " out of range 1.." +
                           std::to_string(x.size()));
    }
    if (drop[p - 1]) throw ParameterError("deletion positions must be distinct");
    drop[p - 1] = true;
  }
  std::vector<T> out;
  out.reserve(x.size() - positions.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!drop[i]) out.push_back(x[i]);
  }
  return out;
}

// Distinct subsequences obtained by deleting `t` more symbols, starting the
// search at `from`. Deleting a symbol equal to its left neighbour gives the
// same string as deleting the neighbour, so only run heads are tried.
template <typename T>
void collect_ball(std::vector<T>& work, std::size_t from, std::size_t t, std::set<std::vector<T>>& out) {
  if (t == 0) {
    out.insert(work);
    return;
  }
  for (std::size_t i = from; i < work.size(); ++i) {
    if (i > from && work[i] == work[i - 1]) continue;
    T v = work[i];
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(i));
    collect_ball(work, i, t - 1, out);
    work.insert(work.begin() + static_cast<std::ptrdiff_t>(i), v);
  }
}

}  // namespace detail

inline void require_same_alphabet(const QaryString& a, const QaryString& b) {
  if (a.q() != b.q()) {
    throw ParameterError("alphabet mismatch: q=" + std::to_string(a.q()) + " vs q=" +
                         std::to_string(b.q()));
  }
}

/// True iff `y` can be obtained from `x` by deleting symbols.
inline bool is_subsequence(const QaryString& y, const QaryString& x) {
  require_same_alphabet(y, x);
  return detail::is_subsequence_of(y.symbols(), x.symbols());
}

inline bool is_subsequence(const BinaryString& y, const BinaryString& x) {
  return detail::is_subsequence_of(y.bits(), x.bits());
}

/// Removes the symbols at the given 1-based positions.
inline QaryString delete_at(const QaryString& x, std::span<const std::size_t> positions) {
  return QaryString(x.q(), detail::erase_positions(x.symbols(), positions));
}

inline QaryString delete_at(const QaryString& x, std::initializer_list<std::size_t> positions) {
  return delete_at(x, std::span<const std::size_t>(positions.begin(), positions.size()));
}

inline BinaryString delete_at(const BinaryString& x, std::span<const std::size_t> positions) {
  return BinaryString(detail::erase_positions(x.bits(), positions));
}

/// All distinct subsequences of `x` of length |x| - t.
inline std::set<QaryString> deletion_ball(const QaryString& x, std::size_t t) {
  if (t > x.size()) throw ParameterError("cannot delete more symbols than the string holds");
  std::set<std::vector<Symbol>> raw;
  std::vector<Symbol> work = x.vec();
  detail::collect_ball(work, 0, t, raw);
  std::set<QaryString> out;
  for (auto& v : raw) out.emplace(x.q(), v);
  return out;
}

inline std::set<BinaryString> deletion_ball(const BinaryString& x, std::size_t t) {
  if (t > x.size()) throw ParameterError("cannot delete more symbols than the string holds");
  std::set<std::vector<std::uint8_t>> raw;
  std::vector<std::uint8_t> work = x.vec();
  detail::collect_ball(work, 0, t, raw);
  std::set<BinaryString> out;
  for (auto& v : raw) out.emplace(v);
  return out;
}

/// Drops trailing symbols until `x` has length `target`. Removing symbols from
/// a subsequence keeps it a subsequence, so a word with fewer than two
/// deletions can be fed to a decoder expecting exactly two.
inline QaryString truncate_to(const QaryString& x, std::size_t target) {
  if (x.size() < target) throw ParameterError("string shorter than requested length");
  return QaryString(x.q(), std::vector<Symbol>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(target)));
}

inline BinaryString truncate_to(const BinaryString& x, std::size_t target) {
  if (x.size() < target) throw ParameterError("string shorter than requested length");
  return BinaryString(
      std::vector<std::uint8_t>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(target)));
}

// ---- text format ---------------------------------------------------------

inline std::string format_string(std::span<const Symbol> symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(symbols[i]);
  }
  return out;
}

inline std::string format_string(const QaryString& x) { return format_string(x.symbols()); }

inline std::string format_string(const BinaryString& x) {
  std::vector<Symbol> tmp(x.begin(), x.end());
  return format_string(tmp);
}

inline std::ostream& operator<<(std::ostream& os, const QaryString& x) {
  return os << '(' << format_string(x) << ")_" << x.q();
}

inline std::ostream& operator<<(std::ostream& os, const BinaryString& x) {
  return os << '(' << format_string(x) << ')';
}

/// Parses one line of the text format. Tokens must be separated by single spaces.
inline QaryString parse_string(std::string_view line, std::uint32_t q) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<Symbol> symbols;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    std::string_view tok = line.substr(pos, end - pos);
    if (tok.empty()) throw FormatError("empty token (symbols must be separated by single spaces)");
    std::uint64_t value = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw FormatError("non-numeric symbol '" + std::string(tok) + "'");
      value = value * 10 + static_cast<std::uint64_t>(c - '0');
      if (value >= q) {
        throw FormatError("symbol " + std::string(tok) + " outside alphabet of size " + std::to_string(q));
      }
    }
    symbols.push_back(static_cast<Symbol>(value));
    pos = end + 1;
    if (end + 1 == line.size() && end < line.size()) throw FormatError("trailing space");
  }
  return QaryString(q, std::move(symbols));
}

inline std::vector<QaryString> read_strings(std::istream& in, std::uint32_t q) {
  std::vector<QaryString> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(parse_string(line, q));
  return out;
}

inline void write_strings(std::ostream& out, std::span<const QaryString> strings) {
  for (const auto& s : strings) out << format_string(s) << '\n';
}

}  // namespace qdel
