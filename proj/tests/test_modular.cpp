#include <gtest/gtest.h>

#include "qdel/harness.hpp"
#include "qdel/modular.hpp"

namespace {

TEST(OddPrime, Classification) {
  EXPECT_TRUE(qdel::is_odd_prime(3));
  EXPECT_TRUE(qdel::is_odd_prime(101));
  EXPECT_FALSE(qdel::is_odd_prime(2));
  EXPECT_FALSE(qdel::is_odd_prime(4));
  EXPECT_FALSE(qdel::is_odd_prime(9));
  EXPECT_FALSE(qdel::is_odd_prime(1));
  EXPECT_THROW(qdel::require_odd_prime(4), qdel::ParameterError);
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(qdel::mod_inverse(2, 7), 4U);
  EXPECT_EQ(qdel::mod_inverse(1, 5), 1U);
  EXPECT_EQ(qdel::mod_inverse(3, 5), 2U);
  EXPECT_THROW(qdel::mod_inverse(0, 5), qdel::DomainError);
  EXPECT_THROW(qdel::mod_inverse(10, 5), qdel::DomainError);
  EXPECT_THROW(qdel::mod_inverse(1, 9), qdel::ParameterError);
}

TEST(ModInverse, AllResiduesSmallPrimes) {
  for (auto q : qdel::detail::odd_primes_up_to(200)) {
    for (qdel::Residue a = 1; a < q; ++a) ASSERT_EQ(a * qdel::mod_inverse(a, q) % q, 1U);
  }
}

TEST(SqrtMod, Examples) {
  EXPECT_EQ(qdel::sqrt_mod(2, 7), 3U);
  EXPECT_EQ(qdel::sqrt_mod(0, 11), 0U);
  EXPECT_FALSE(qdel::sqrt_mod(3, 7).has_value());
  EXPECT_THROW(qdel::sqrt_mod(1, 15), qdel::ParameterError);
}

TEST(SqrtMod, MatchesSquareTableUpTo97) {
  for (auto q : qdel::detail::odd_primes_up_to(97)) {
    std::vector<std::optional<qdel::Residue>> table(q);
    for (qdel::Residue b = 0; b <= (q - 1) / 2; ++b) table[b * b % q] = b;
    for (qdel::Residue a = 0; a < q; ++a) ASSERT_EQ(qdel::sqrt_mod(a, q), table[a]) << "q=" << q << " a=" << a;
  }
}

TEST(SqrtMod, LargePrimeWithHighTwoAdicity) {
  // 7681 - 1 = 2^9 * 15 exercises several Tonelli-Shanks rounds
  const std::uint64_t q = 7681;
  for (qdel::Residue b = 0; b < q; b += 37) {
    const auto r = qdel::sqrt_mod(b * b % q, q);
    ASSERT_TRUE(r);
    ASSERT_EQ(*r * *r % q, b * b % q);
    ASSERT_LE(*r, (q - 1) / 2);
  }
}

TEST(SolveDeletedPair, Examples) {
  auto s = qdel::solve_deleted_pair(0, 1, 7);
  ASSERT_TRUE(s.values);
  EXPECT_EQ(*s.values, (std::pair<qdel::Residue, qdel::Residue>{2, 5}));
  s = qdel::solve_deleted_pair(0, 0, 5);
  EXPECT_EQ(*s.values, (std::pair<qdel::Residue, qdel::Residue>{0, 0}));
  s = qdel::solve_deleted_pair(4, 0, 5);
  EXPECT_EQ(*s.values, (std::pair<qdel::Residue, qdel::Residue>{1, 3}));
  EXPECT_THROW(qdel::solve_deleted_pair(0, 0, 9), qdel::ParameterError);
}

TEST(SolveDeletedPair, InvariantsAndAbsence) {
  for (auto q : qdel::detail::odd_primes_up_to(31)) {
    std::size_t absent = 0;
    for (qdel::Residue d1 = 0; d1 < q; ++d1) {
      for (qdel::Residue d2 = 0; d2 < q; ++d2) {
        const auto s = qdel::solve_deleted_pair(d1, d2, q);
        ASSERT_EQ(2 * s.delta0 % q, (d1 * d1 + q * q - d2) % q);
        if (s.disc_root) {
          ASSERT_EQ(*s.disc_root * *s.disc_root % q, (d1 * d1 + 4 * q * q - 4 * s.delta0) % q);
        }
        if (!s.values) {
          ++absent;
          continue;
        }
        const auto [a, b] = *s.values;
        ASSERT_EQ((a + b) % q, d1);
        ASSERT_EQ((a * a + b * b) % q, d2);
      }
    }
    // q(q+1)/2 unordered pairs cover that many (d1, d2); the rest have no root
    ASSERT_EQ(absent, q * q - q * (q + 1) / 2);
  }
}

TEST(SolverSuite, ExhaustiveTo31) {
  for (const auto& r : qdel::solver_suite(31)) EXPECT_TRUE(r.pass) << qdel::format_result(r);
}

}  // namespace
