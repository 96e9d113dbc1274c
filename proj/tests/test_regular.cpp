#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "qdel/harness.hpp"
#include "qdel/regular.hpp"

namespace {

using qdel::QaryString;

QaryString S(std::uint32_t q, std::vector<qdel::Symbol> v) { return QaryString(q, std::move(v)); }

TEST(UmMembership, Examples) {
  EXPECT_TRUE(qdel::is_in_U_m(S(3, {2, 1, 0, 0, 1, 2})));
  EXPECT_FALSE(qdel::is_in_U_m(S(3, {0, 1, 2, 1})));  // no strict decrease
  EXPECT_FALSE(qdel::is_in_U_m(S(3, {2, 1, 0, 2})));  // no non-decrease
  EXPECT_TRUE(qdel::is_in_U_m(S(5, {4, 2, 1, 1, 1})));
  EXPECT_THROW(qdel::is_in_U_m(S(3, {2, 1})), qdel::ParameterError);
}

TEST(TripleCounts, ClosedFormsAgreeWithEnumeration) {
  for (std::uint32_t q : {3U, 5U, 7U}) {
    const auto c3 = qdel::count_triples(3, q), c4 = qdel::count_triples(4, q), c5 = qdel::count_triples(5, q);
    EXPECT_EQ(qdel::BigInt(c3.f0), qdel::f0_closed_form_3(q));
    EXPECT_EQ(qdel::BigInt(c4.f0), qdel::f0_closed_form_4(q));
    EXPECT_EQ(qdel::BigInt(c5.f0), qdel::f0_inclusion_exclusion_5(q));
    EXPECT_EQ(c3.g, 0U);
  }
  EXPECT_EQ(qdel::count_F0(3, 3), 26U);
  EXPECT_EQ(qdel::count_F0(4, 3), 75U);
  EXPECT_EQ(qdel::count_F0(5, 3), 216U);
  EXPECT_EQ(qdel::count_F0(5, 5), 2425U);
}

TEST(TripleCounts, ExpandedQuinticDisagreesWithEnumeration) {
  // The expanded polynomial for m=5 does not match the counts; kept so the
  // discrepancy stays visible.
  EXPECT_EQ(qdel::f0_polynomial_5(3), qdel::BigRational(189));
  EXPECT_EQ(qdel::f0_polynomial_5(5), qdel::BigRational(2300));
  EXPECT_NE(qdel::f0_polynomial_5(3), qdel::BigRational(qdel::count_F0(5, 3)));
}

TEST(TripleCounts, MatchesOdometerEnumeration) {
  for (std::size_t m = 3; m <= 6; ++m) {
    const std::uint32_t q = 3;
    std::uint64_t f0 = 0, f1 = 0, g = 0, total = 0;
    std::vector<qdel::Symbol> v(m, 0);
    while (true) {
      ++total;
      const bool dec = qdel::has_strict_decrease(v), nd = qdel::has_non_decrease(v);
      f0 += !dec;
      f1 += !nd;
      g += dec && nd;
      std::size_t i = 0;
      while (i < m && ++v[i] == q) v[i++] = 0;
      if (i == m) break;
    }
    const auto c = qdel::count_triples(m, q);
    EXPECT_EQ(c.total, total);
    EXPECT_EQ(c.f0, f0);
    EXPECT_EQ(c.f1, f1);
    EXPECT_EQ(c.g, g);
  }
}

TEST(TripleCounts, BoundReport) {
  const auto r = qdel::verify_Fm_bound(3, 3);
  EXPECT_EQ(r.f1, 17U);
  EXPECT_EQ(r.f0, 26U);
  EXPECT_NEAR(static_cast<double>(r.bound), 26.198, 1e-3);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.in_lemma_range);
  EXPECT_FALSE(qdel::verify_Fm_bound(3, 2).in_lemma_range);
  for (std::uint32_t q : {3U, 5U, 7U}) {
    for (std::size_t m = 3; m <= 7; ++m) EXPECT_TRUE(qdel::verify_Fm_bound(m, q).holds) << m << " " << q;
  }
}

TEST(TripleCounts, SuitePassesExceptExpandedQuintic) {
  const auto r = qdel::counts_suite({3, 5}, 7);
  for (const auto& p : r) {
    if (p.name == "f5_polynomial") {
      EXPECT_FALSE(p.pass);
    } else {
      EXPECT_TRUE(p.pass) << p.name << ": " << p.detail;
    }
  }
}

TEST(UmTable, RankUnrankExhaustive) {
  for (std::size_t m = 3; m <= 8; ++m) {
    const auto t = qdel::build_um_table(m, 3);
    EXPECT_EQ(t.size(), qdel::count_G(m, 3));
    EXPECT_TRUE(std::is_sorted(t.members.begin(), t.members.end()));
    for (std::uint64_t i = 0; i < t.size(); ++i) {
      const auto v = qdel::unrank_U(i, t);
      ASSERT_TRUE(qdel::is_in_U_m(v));
      ASSERT_EQ(qdel::rank_U(v, t), i);
    }
  }
  const auto t = qdel::build_um_table(4, 3);
  EXPECT_THROW(qdel::rank_U(S(3, {0, 1, 2, 1}), t), qdel::ParameterError);
  EXPECT_THROW(qdel::unrank_U(t.size(), t), qdel::ParameterError);
}

TEST(UmTable, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "qdel_test_um";
  std::filesystem::create_directories(dir);
  const auto t = qdel::build_um_table(6, 5);
  const auto file = dir / "um.txt";
  qdel::save_um_table(t, file);
  const auto u = qdel::load_um_table(file);
  EXPECT_EQ(u.m, 6U);
  EXPECT_EQ(u.q, 5U);
  EXPECT_EQ(u.members, t.members);
  {
    std::ofstream out(dir / "bad.txt");
    out << "m=4 q=3 G=99\n";
  }
  EXPECT_THROW(qdel::load_um_table(dir / "bad.txt"), qdel::FormatError);
  std::filesystem::remove_all(dir);
}

TEST(RegularEncoder, Layout) {
  const auto p = qdel::make_regular_params(64, 3, 3);
  EXPECT_EQ(p.m, 8U);
  EXPECT_EQ(p.block_count, 8U);
  EXPECT_EQ(p.tail, 0U);
  EXPECT_EQ(p.g, 1236U);
  EXPECT_EQ(p.message_length, 51U);
  EXPECT_THROW(qdel::make_regular_params(6, 3, 8), qdel::ParameterError);  // m > n
  EXPECT_THROW(qdel::make_regular_params(4, 3, 1), qdel::ParameterError);  // m < 3
  EXPECT_THROW(qdel::make_regular_params(64, 3, 3, 52), qdel::ParameterError);
}

TEST(RegularEncoder, EmptyBlockSetRefusesToEncode) {
  // m = 3 at q = 3: no length-3 string has both triple kinds
  const auto p = qdel::make_regular_params(16, 3, 2);
  EXPECT_EQ(p.m, 3U);
  EXPECT_EQ(p.g, 0U);
  EXPECT_FALSE(p.capacity_digits.has_value());
  EXPECT_THROW(qdel::pi_encode(S(3, {0}), p), qdel::ParameterError);
}

TEST(RegularEncoder, RoundTripAndRegularity) {
  std::mt19937_64 gen(3);
  for (auto [n, q, d] : std::vector<std::tuple<std::size_t, std::uint32_t, std::uint32_t>>{
           {64, 3, 3}, {16, 3, 3}, {40, 5, 3}, {100, 7, 2}}) {
    const auto p = qdel::make_regular_params(n, q, d);
    ASSERT_GT(p.message_length, 0U);
    for (int i = 0; i < 300; ++i) {
      const auto msg = qdel::detail::random_string(p.message_length, q, gen);
      const auto x = qdel::pi_encode(msg, p);
      ASSERT_EQ(x.size(), n);
      ASSERT_TRUE(qdel::is_d_regular_qary(x, d));
      ASSERT_EQ(qdel::pi_decode(x, p), msg);
    }
  }
}

TEST(RegularEncoder, Errors) {
  const auto p = qdel::make_regular_params(64, 3, 3);
  EXPECT_THROW(qdel::pi_encode(QaryString(3, std::vector<qdel::Symbol>(50, 0)), p), qdel::ParameterError);
  EXPECT_THROW(qdel::pi_encode(QaryString(5, std::vector<qdel::Symbol>(51, 0)), p), qdel::ParameterError);
  EXPECT_THROW(qdel::pi_decode(QaryString(3, std::vector<qdel::Symbol>(64, 0)), p), qdel::FormatError);
  EXPECT_THROW(qdel::pi_decode(QaryString(3, std::vector<qdel::Symbol>(63, 0)), p), qdel::FormatError);
  // largest block index in every block overflows the 51-digit message space
  std::vector<qdel::Symbol> top;
  for (std::size_t b = 0; b < p.block_count; ++b) {
    const auto blk = qdel::unrank_U(p.g - 1, *p.table);
    top.insert(top.end(), blk.begin(), blk.end());
  }
  EXPECT_THROW(qdel::pi_decode(QaryString(3, top), p), qdel::FormatError);
}

TEST(RegularEncoder, CapacityReport) {
  const auto r = qdel::capacity_report(64, 3, 3);
  EXPECT_EQ(r.g, 1236U);
  EXPECT_EQ(r.capacity, boost::multiprecision::pow(qdel::BigInt(1236), 8));
  EXPECT_EQ(r.capacity_digits, std::optional<std::size_t>(51));
  EXPECT_FALSE(r.exceeds_q_pow_n_minus_1);
}

TEST(RegularEncoder, SuitePasses) {
  qdel::RegularSuiteOptions o;
  o.trials = 500;
  o.rank_m_max = 7;
  for (const auto& p : qdel::regular_suite(o)) EXPECT_TRUE(p.pass) << p.name << ": " << p.detail;
}

}  // namespace
