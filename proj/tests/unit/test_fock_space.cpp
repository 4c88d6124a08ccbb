#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maxent/fock_space.hpp"
#include "oracles/oracles.hpp"

using namespace maxent;

TEST(ChargeOf, Examples) {
  EXPECT_EQ(charge_of(0b0000, 4).k, 0);
  EXPECT_DOUBLE_EQ(charge_of(0b0000, 4).q(), -2.0);
  EXPECT_EQ(charge_of(0b1111, 4).k, 4);
  EXPECT_DOUBLE_EQ(charge_of(0b1111, 4).q(), 2.0);
  EXPECT_EQ(charge_of(0b0101, 4).k, 2);
  EXPECT_DOUBLE_EQ(charge_of(0b0101, 4).q(), 0.0);
}

TEST(ChargeOf, RejectsOutOfRange) {
  EXPECT_THROW(charge_of(16, 4), std::out_of_range);
  EXPECT_THROW(charge_of(0, 0), std::out_of_range);
  EXPECT_THROW(charge_of(0, 64), std::out_of_range);
}

TEST(ChargeValue, FromQRoundTrip) {
  for (int n = 1; n <= 9; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ChargeValue c{k, n};
      EXPECT_EQ(ChargeValue::from_q(c.q(), n), c);
    }
  }
  EXPECT_THROW(ChargeValue::from_q(0.0, 3), std::invalid_argument);
  EXPECT_THROW(ChargeValue::from_q(3.0, 4), std::invalid_argument);
  EXPECT_EQ(ChargeValue::from_q(-1.5, 3).k, 0);
}

TEST(SplitIndex, Examples) {
  const SystemPartition cut(3, 1);
  const auto [a, b] = split_index(0b101, cut);
  EXPECT_EQ(a, 0b1u);
  EXPECT_EQ(b, 0b01u);
  EXPECT_EQ(charge_of(0b101, 3).k, charge_of(a, 1).k + charge_of(b, 2).k);
  EXPECT_EQ(split_index(0, SystemPartition(7, 3)), std::make_pair(std::uint64_t{0}, std::uint64_t{0}));
}

TEST(SplitIndex, RecombineIsIdentity) {
  for (int n = 2; n <= 10; ++n) {
    for (int na = 1; na < n; ++na) {
      const SystemPartition cut(n, na);
      for (std::uint64_t i = 0; i < cut.dim(); ++i) {
        const auto [a, b] = cut.split(i);
        ASSERT_EQ(cut.combine(a, b), i);
        ASSERT_EQ(std::popcount(i), std::popcount(a) + std::popcount(b));
      }
    }
  }
}

TEST(SystemPartition, Validation) {
  EXPECT_THROW(SystemPartition(4, 0), std::invalid_argument);
  EXPECT_THROW(SystemPartition(4, 4), std::invalid_argument);
  EXPECT_THROW(SystemPartition(1, 1), std::invalid_argument);
  const SystemPartition cut(5, 2);
  EXPECT_EQ(cut.n_b(), 3);
  EXPECT_EQ(cut.dim_a(), 4u);
  EXPECT_EQ(cut.dim_b(), 8u);
  EXPECT_EQ(cut.swapped().n_a(), 3);
  EXPECT_THROW(cut.split(32), std::out_of_range);
  EXPECT_THROW(SystemPartition(100, 50).dim(), std::out_of_range);
}

TEST(Binomial, MatchesPascal) {
  const auto t = oracle::pascal(62);
  for (int n = 0; n <= 62; ++n) {
    for (int k = 0; k <= n; ++k) {
      ASSERT_EQ(binomial(n, k), t[n][k]) << n << " " << k;
      const double rel = std::abs(log_binomial(n, k) - std::log(static_cast<double>(t[n][k])));
      ASSERT_LT(rel, 1e-13 * std::max(1.0, std::log(static_cast<double>(t[n][k]))));
    }
  }
  EXPECT_EQ(binomial(5, 7), 0u);
  EXPECT_TRUE(std::isinf(log_binomial(5, -1)));
}

TEST(SpectralDensity, Examples) {
  const SpectralDensity s2(2);
  EXPECT_DOUBLE_EQ(s2.omega(0), 0.25);
  EXPECT_DOUBLE_EQ(s2.omega(1), 0.5);
  EXPECT_DOUBLE_EQ(s2.omega(2), 0.25);
  EXPECT_DOUBLE_EQ(s2.charge(0), -1.0);

  const SpectralDensity s4(4);
  const double expected[] = {1, 4, 6, 4, 1};
  for (int k = 0; k <= 4; ++k) EXPECT_DOUBLE_EQ(s4.multiplicity(k), expected[k]);
  EXPECT_EQ(s4.exact_multiplicity(2), std::optional<std::uint64_t>(6));
}

TEST(SpectralDensity, LargeNInLogSpace) {
  const SpectralDensity s(256);
  EXPECT_TRUE(s.log_space());
  EXPECT_TRUE(std::isfinite(s.log_omega(128)));
  EXPECT_FALSE(s.exact_multiplicity(128).has_value());
  std::vector<long double> logs;
  for (int k = 0; k <= 256; ++k) logs.push_back(s.log_multiplicity(k));
  const long double log_total = oracle::log_sum_exp(logs);
  EXPECT_LT(std::abs(std::expm1(static_cast<double>(log_total) - s.log_dim())), 1e-10);
}

TEST(SpectralDensity, BruteForceEnumeration) {
  for (int n = 1; n <= 20; ++n) {
    const SpectralDensity s(n);
    const auto counts = oracle::sector_counts(n);
    for (int k = 0; k <= n; ++k) {
      ASSERT_EQ(s.exact_multiplicity(k).value(), counts[k]) << "N=" << n << " k=" << k;
    }
  }
}

TEST(SpectralDensity, SymmetryAndVariance) {
  for (int n : {1, 2, 7, 16, 61, 200}) {
    const SpectralDensity s(n);
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
      EXPECT_NEAR(s.log_omega(k), s.log_omega(n - k), 1e-12);
      total += s.omega(k);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(s.variance(), n / 4.0, 1e-9 * n);
    EXPECT_NEAR(s.big_gamma() * s.big_gamma(), s.variance(), 1e-9 * n);
    EXPECT_DOUBLE_EQ(s.gamma(), 0.5);
  }
  EXPECT_THROW(SpectralDensity(0), std::invalid_argument);
}

// Sum_{k_A} binom(N_A,k_A) binom(N_B,k-k_A) = binom(N,k), in log space.
TEST(SpectralDensity, VandermondeProperty) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 512)(rng);
    const int na = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const SpectralDensity s(n), sa(na), sb(n - na);
    for (int k = 0; k <= n; k += std::max(1, n / 37)) {
      std::vector<long double> terms;
      for (int ka = std::max(0, k - (n - na)); ka <= std::min(na, k); ++ka) {
        terms.push_back(static_cast<long double>(sa.log_omega(ka)) + sb.log_omega(k - ka));
      }
      const double lhs = static_cast<double>(oracle::log_sum_exp(terms));
      const double rhs = s.log_omega(k);
      ASSERT_LT(std::abs(std::expm1(lhs - rhs)), 1e-12) << "N=" << n << " N_A=" << na << " k=" << k;
    }
  }
}
