#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "qdel/channel.hpp"
#include "qdel/code.hpp"
#include "qdel/harness.hpp"

namespace {

using qdel::QaryString;

QaryString S(std::uint32_t q, std::vector<qdel::Symbol> v) { return QaryString(q, std::move(v)); }

TEST(Code, LayoutSmall) {
  const auto p = qdel::make_code_params(5, 3);
  EXPECT_EQ(p.sketch_symbols, 13U);
  EXPECT_EQ(p.hash_symbols, 13U);
  EXPECT_EQ(p.codeword_length, 57U);
  EXPECT_EQ(p.message_length(), 5U);
  EXPECT_THROW(qdel::make_code_params(5, 9), qdel::ParameterError);
  EXPECT_THROW(qdel::make_code_params(1, 3), qdel::ParameterError);
}

TEST(Code, SystematicAndDeterministic) {
  const auto p = qdel::make_code_params(5, 3);
  const auto zero = S(3, {0, 0, 0, 0, 0});
  const auto c = qdel::encode(zero, p);
  EXPECT_EQ(c, qdel::encode(zero, p));
  const auto msg = S(3, {2, 0, 1, 1, 0});
  const auto x = qdel::encode(msg, p);
  ASSERT_EQ(x.size(), 57U);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(x[i], msg[i]);
  for (std::size_t i = 5; i < 57; ++i) EXPECT_LE(x[i], 1U);
  // three identical copies of H after S
  for (std::size_t i = 0; i < 13; ++i) {
    EXPECT_EQ(x[18 + i], x[31 + i]);
    EXPECT_EQ(x[18 + i], x[44 + i]);
  }
  EXPECT_THROW(qdel::encode(S(3, {0, 0, 0, 0}), p), qdel::ParameterError);
  EXPECT_THROW(qdel::encode(S(5, {0, 0, 0, 0, 0}), p), qdel::ParameterError);
}

TEST(Code, AllDeletionPairsOnOneCodeword) {
  const auto p = qdel::make_code_params(8, 5, "greedy");
  const auto msg = S(5, {4, 1, 3, 0, 2, 2, 1, 4});
  const auto x = qdel::encode(msg, p);
  EXPECT_EQ(qdel::decode(x, p), msg);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    ASSERT_EQ(qdel::decode(qdel::delete_at(x, {i}), p), msg) << i;
    for (std::size_t j = i + 1; j <= x.size(); ++j) {
      ASSERT_EQ(qdel::decode(qdel::delete_at(x, {i, j}), p), msg) << i << "," << j;
    }
  }
}

TEST(Code, RandomRoundTripsGreedyBase) {
  std::mt19937_64 gen(21);
  std::size_t trials = 0, ambiguous = 0;
  for (std::size_t n = 10; n <= 14; ++n) {
    for (std::uint32_t q : {3U, 5U, 7U}) {
      const auto p = qdel::make_code_params(n, q, "greedy");
      for (int t = 0; t < 60; ++t) {
        const auto msg = qdel::detail::random_string(n, q, gen);
        const auto x = qdel::encode(msg, p);
        const auto pos = qdel::draw_positions(x.size(), t % 3, gen);
        const auto r = qdel::decode_all(qdel::delete_at(x, pos), p);
        ASSERT_NE(std::find(r.messages.begin(), r.messages.end(), msg), r.messages.end());
        ++trials;
        // sketch collisions leave a second message in a few lists
        ambiguous += r.messages.size() > 1;
        ASSERT_LE(r.messages.size(), 2U);
      }
    }
  }
  EXPECT_LT(ambiguous * 50, trials);
}

TEST(Code, BothDeletionsInMessageRegion) {
  const auto p = qdel::make_code_params(12, 7, "greedy");
  const auto msg = S(7, {6, 5, 4, 3, 2, 1, 0, 0, 1, 3, 3, 6});
  const auto x = qdel::encode(msg, p);
  for (std::size_t i = 1; i <= 12; ++i) {
    for (std::size_t j = i + 1; j <= 12; ++j) EXPECT_EQ(qdel::decode(qdel::delete_at(x, {i, j}), p), msg);
  }
}

TEST(Code, ThreeDeletionsAreUncorrectable) {
  const auto p = qdel::make_code_params(10, 3, "greedy");
  const auto x = qdel::encode(S(3, {0, 1, 2, 0, 1, 2, 0, 1, 2, 0}), p);
  try {
    qdel::decode(qdel::delete_at(x, {1, 2, 3}), p);
    FAIL();
  } catch (const qdel::DecodeError& e) {
    EXPECT_EQ(e.kind(), qdel::DecodeFailure::kInconsistent);
  }
  EXPECT_THROW(qdel::decode(S(3, std::vector<qdel::Symbol>(x.size() + 1, 0)), p), qdel::ParameterError);
}

// Payloads with equal sketches share S and H, so a common payload
// subsequence makes the received word fit both codewords.
TEST(Code, SketchCollisionMakesCodewordsIntersect) {
  const auto p = qdel::make_code_params(5, 3);
  const auto a = S(3, {2, 0, 2, 1, 1});
  const auto b = S(3, {2, 1, 1, 0, 2});
  const auto xa = qdel::encode(a, p), xb = qdel::encode(b, p);
  const auto y = qdel::delete_at(xa, {2, 3});
  ASSERT_EQ(y, qdel::delete_at(xb, {4, 5}));
  const auto r = qdel::decode_all(y, p);
  EXPECT_EQ(r.messages.size(), 2U);
  try {
    qdel::decode(y, p);
    FAIL();
  } catch (const qdel::DecodeError& e) {
    EXPECT_EQ(e.kind(), qdel::DecodeFailure::kAmbiguous);
  }
}

TEST(Code, RegularMode) {
  const auto p = qdel::make_code_params(16, 3, "identity", "identity", 3);
  ASSERT_TRUE(p.regular);
  EXPECT_EQ(p.regular->m, 5U);
  const std::size_t k = p.message_length();
  ASSERT_GT(k, 0U);
  ASSERT_LT(k, 16U);
  std::mt19937_64 gen(4);
  for (int t = 0; t < 100; ++t) {
    const auto msg = qdel::detail::random_string(k, 3, gen);
    const auto x = qdel::encode(msg, p);
    ASSERT_EQ(x.size(), p.codeword_length);
    const auto pos = qdel::draw_positions(x.size(), 2, gen);
    ASSERT_EQ(qdel::decode(qdel::delete_at(x, pos), p), msg);
  }
}

TEST(Code, RedundancyReport) {
  const auto r = qdel::redundancy_report(qdel::make_code_params(5, 3));
  EXPECT_EQ(r.base_bits, 5U);
  EXPECT_EQ(r.residue_bits, 2U);
  EXPECT_EQ(r.s3_bits, 4U);
  EXPECT_EQ(r.sketch_bits, 13U);
  EXPECT_NEAR(r.reference_sketch_bits, 12.07, 0.01);
  EXPECT_EQ(r.codeword_length, 57U);
  EXPECT_NE(r.note.find("oracle"), std::string::npos);
}

TEST(Code, ParamsFile) {
  std::istringstream in("# comment\nn=12\nq=5\nd=3\nbase=greedy\ninner_base=identity\nregular_mode=off\n");
  const auto f = qdel::parse_params(in);
  EXPECT_EQ(f.n, std::optional<std::size_t>(12));
  EXPECT_EQ(f.q, std::optional<std::uint32_t>(5));
  EXPECT_EQ(f.d, std::optional<std::uint32_t>(3));
  EXPECT_EQ(f.base, std::optional<std::string>("greedy"));
  EXPECT_EQ(f.regular_mode, std::optional<bool>(false));
  EXPECT_FALSE(f.cache_dir);
  for (const char* bad : {"n=-3\n", "q=abc\n", "colour=red\n", "novalue\n", "regular_mode=maybe\n"}) {
    std::istringstream b(bad);
    EXPECT_THROW(qdel::parse_params(b), qdel::FormatError) << bad;
  }
  EXPECT_THROW(qdel::load_params("/nonexistent/params.txt"), qdel::FormatError);
}

TEST(Code, ExhaustiveSmallCodeHasKnownClashes) {
  qdel::CodeSuiteOptions o;
  o.q = 3;
  o.n = 5;
  const auto r = qdel::code_suite(o);
  ASSERT_EQ(r.size(), 2U);
  EXPECT_FALSE(r[0].pass);
  EXPECT_NE(r[0].detail.find("clashing_pairs=9"), std::string::npos) << r[0].detail;
  EXPECT_FALSE(r[1].pass);
  EXPECT_NE(r[1].detail.find("wrong=0"), std::string::npos) << r[1].detail;
  EXPECT_NE(r[1].detail.find("uncorrectable=0"), std::string::npos) << r[1].detail;
}

}  // namespace
