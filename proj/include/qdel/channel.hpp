#pragma once

// Deletion channel: explicit positions, or t <= 2 positions drawn from a
// seeded std::mt19937_64.
//
// Random draw (portable, fixed by the standard generator): the first position
// is 1 + g() % N; the second is 1 + g() % (N-1), bumped by one when it is at
// or after the first. Positions are reported sorted.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qdel/errors.hpp"
#include "qdel/strings.hpp"

namespace qdel {

enum class ChannelMode { kAdversarial, kRandom };

struct ChannelSpec {
  ChannelMode mode = ChannelMode::kAdversarial;
  std::vector<std::size_t> positions;  // 1-based, adversarial mode
  std::size_t count = 0;               // random mode
  std::uint64_t seed = 0;

  static ChannelSpec adversarial(std::vector<std::size_t> positions) {
    return {ChannelMode::kAdversarial, std::move(positions), 0, 0};
  }
  static ChannelSpec random(std::size_t count, std::uint64_t seed) { return {ChannelMode::kRandom, {}, count, seed}; }
};

inline std::vector<std::size_t> draw_positions(std::size_t length, std::size_t count, std::mt19937_64& gen) {
  if (count > 2) throw ParameterError("at most 2 deletions are supported");
  if (count > length) throw ParameterError("more deletions than symbols");
  std::vector<std::size_t> out;
  if (count >= 1) out.push_back(1 + static_cast<std::size_t>(gen() % length));
  if (count == 2) {
    std::size_t p = 1 + static_cast<std::size_t>(gen() % (length - 1));
    if (p >= out[0]) ++p;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Positions the channel deletes from a string of the given length.
inline std::vector<std::size_t> channel_positions(const ChannelSpec& spec, std::size_t length) {
  if (spec.mode == ChannelMode::kRandom) {
    std::mt19937_64 gen(spec.seed);
    return draw_positions(length, spec.count, gen);
  }
  auto pos = spec.positions;
  std::sort(pos.begin(), pos.end());
  if (pos.size() > 2) throw ParameterError("at most 2 deletions are supported");
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) throw ParameterError("deletion positions must be distinct");
  for (auto p : pos) {
    if (p < 1 || p > length) {
      throw ParameterError("deletion position " + std::to_string(p) + " outside 1.." + std::to_string(length));
    }
  }
  return pos;
}

inline QaryString corrupt(const QaryString& x, const ChannelSpec& spec) {
  const auto pos = channel_positions(spec, x.size());
  return delete_at(x, pos);
}

}  // namespace qdel
