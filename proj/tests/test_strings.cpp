#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "qdel/harness.hpp"
#include "qdel/strings.hpp"

namespace {

using qdel::QaryString;

QaryString S(std::uint32_t q, std::vector<qdel::Symbol> v) { return QaryString(q, std::move(v)); }

TEST(QaryString, RejectsOutOfRangeSymbols) {
  EXPECT_THROW(S(3, {0, 3}), qdel::ParameterError);
  EXPECT_THROW(S(1, {}), qdel::ParameterError);
  EXPECT_NO_THROW(S(3, {2, 1, 0}));
}

TEST(BinaryString, RejectsNonBits) { EXPECT_THROW(qdel::BinaryString({0, 2}), qdel::ParameterError); }

TEST(IsSubsequence, Examples) {
  EXPECT_TRUE(qdel::is_subsequence(S(3, {1, 0}), S(3, {1, 1, 0})));
  EXPECT_FALSE(qdel::is_subsequence(S(3, {0, 1}), S(3, {1, 0})));
  EXPECT_TRUE(qdel::is_subsequence(S(3, {2, 1, 1}), S(3, {2, 0, 1, 1, 0})));
  EXPECT_TRUE(qdel::is_subsequence(S(3, {}), S(3, {1})));
}

TEST(IsSubsequence, AlphabetMismatchThrows) {
  EXPECT_THROW(qdel::is_subsequence(S(3, {1}), S(5, {1})), qdel::ParameterError);
}

TEST(DeleteAt, Examples) {
  EXPECT_EQ(qdel::delete_at(S(3, {2, 0, 1, 1, 0}), {2, 5}), S(3, {2, 1, 1}));
  EXPECT_EQ(qdel::delete_at(S(3, {0, 0, 0}), {1}), S(3, {0, 0}));
  EXPECT_EQ(qdel::delete_at(S(5, {1, 2, 3}), {}), S(5, {1, 2, 3}));
}

TEST(DeleteAt, BadPositionsThrow) {
  EXPECT_THROW(qdel::delete_at(S(3, {0, 1}), {0}), qdel::ParameterError);
  EXPECT_THROW(qdel::delete_at(S(3, {0, 1}), {3}), qdel::ParameterError);
  EXPECT_THROW(qdel::delete_at(S(3, {0, 1}), {1, 1}), qdel::ParameterError);
}

TEST(DeletionBall, Examples) {
  EXPECT_EQ(qdel::deletion_ball(S(3, {0, 0, 0}), 1), (std::set<QaryString>{S(3, {0, 0})}));
  EXPECT_EQ(qdel::deletion_ball(S(3, {0, 1}), 1), (std::set<QaryString>{S(3, {0}), S(3, {1})}));
  EXPECT_EQ(qdel::deletion_ball(S(3, {1, 0, 1}), 2), (std::set<QaryString>{S(3, {1}), S(3, {0})}));
  EXPECT_EQ(qdel::deletion_ball(S(3, {2, 1}), 0), (std::set<QaryString>{S(3, {2, 1})}));
  EXPECT_THROW(qdel::deletion_ball(S(3, {1}), 2), qdel::ParameterError);
}

// Naive oracle: every position subset of size t, deduplicated.
std::set<QaryString> naive_ball(const QaryString& x, std::size_t t) {
  std::set<QaryString> out;
  const std::size_t n = x.size();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != t) continue;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) pos.push_back(i + 1);
    }
    out.insert(qdel::delete_at(x, pos));
  }
  return out;
}

TEST(DeletionBall, MatchesNaiveEnumeration) {
  for (std::size_t n = 1; n <= 8; ++n) {
    qdel::detail::for_each_string(n, 3, [&](const std::vector<qdel::Symbol>& v) {
      const QaryString x(3, v);
      for (std::size_t t = 0; t <= std::min<std::size_t>(n, 2); ++t) {
        const auto ball = qdel::deletion_ball(x, t);
        ASSERT_EQ(ball, naive_ball(x, t)) << qdel::format_string(x) << " t=" << t;
        for (const auto& y : ball) ASSERT_TRUE(qdel::is_subsequence(y, x));
      }
    });
  }
}

TEST(TextFormat, RoundTrip) {
  std::istringstream in("2 0 1 1 0\n\n4 3\n");
  const auto xs = qdel::read_strings(in, 5);
  ASSERT_EQ(xs.size(), 3U);
  EXPECT_EQ(xs[0], S(5, {2, 0, 1, 1, 0}));
  EXPECT_TRUE(xs[1].empty());
  std::ostringstream out;
  qdel::write_strings(out, xs);
  EXPECT_EQ(out.str(), "2 0 1 1 0\n\n4 3\n");
}

TEST(TextFormat, RejectsMalformedLines) {
  EXPECT_THROW(qdel::parse_string("1  2", 3), qdel::FormatError);
  EXPECT_THROW(qdel::parse_string("1 2 ", 3), qdel::FormatError);
  EXPECT_THROW(qdel::parse_string("1 x", 3), qdel::FormatError);
  EXPECT_THROW(qdel::parse_string("1 3", 3), qdel::FormatError);
  EXPECT_EQ(qdel::parse_string("1 2\r", 3), S(3, {1, 2}));
}

TEST(TruncateTo, KeepsPrefix) {
  EXPECT_EQ(qdel::truncate_to(S(3, {2, 1, 0}), 1), S(3, {2}));
  EXPECT_THROW(qdel::truncate_to(S(3, {2}), 2), qdel::ParameterError);
}

}  // namespace
