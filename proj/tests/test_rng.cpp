#include "banditsim/rng.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

namespace {

using banditsim::Rng;

TEST(Rng, IdenticalSeedGivesBitIdenticalStreams) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
  Rng c(7);
  Rng d(7);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(c.uniform(), d.uniform());
    ASSERT_EQ(c.beta(2.0, 3.0), d.beta(2.0, 3.0));
  }
}

TEST(Rng, DifferentSeedsDiverge) {
  Rng a(1);
  Rng b(2);
  int differing = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() != b.next_u64()) ++differing;
  }
  EXPECT_GT(differing, 0);
}

TEST(Rng, BernoulliDegenerateMeans) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(rng.bernoulli(1.0), 1.0);
    EXPECT_EQ(rng.bernoulli(0.0), 0.0);
  }
}

// Chernoff: P(|mean - 0.5| > 0.01 over 1e5 draws) < 2 exp(-2e5 * 1e-4) < 1e-8.
TEST(Rng, BernoulliFairCoinEmpiricalMean) {
  Rng rng(11);
  double sum = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) sum += rng.bernoulli(0.5);
  EXPECT_NEAR(sum / kDraws, 0.5, 0.01);
}

TEST(Rng, UniformBelowStaysInRangeAndCoversValues) {
  Rng rng(5);
  std::vector<int> counts(7, 0);
  constexpr int kDraws = 70000;
  for (int i = 0; i < kDraws; ++i) {
    const std::uint64_t v = rng.uniform_below(7);
    ASSERT_LT(v, 7u);
    counts[static_cast<std::size_t>(v)] += 1;
  }
  // each bucket ~10000, sd ~92; allow 5 sd
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_THROW(rng.uniform_below(0), banditsim::InvalidParameterError);
}

TEST(Rng, NormalMomentsLookRight) {
  Rng rng(17);
  constexpr int kDraws = 100000;
  double sum = 0.0;
  int within_one_sd = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = rng.normal();
    sum += z;
    if (std::fabs(z) <= 1.0) ++within_one_sd;
  }
  EXPECT_NEAR(sum / kDraws, 0.0, 0.02);
  EXPECT_NEAR(static_cast<double>(within_one_sd) / kDraws, 0.6827, 0.01);
}

TEST(Rng, GammaMeanMatchesShape) {
  Rng rng(23);
  constexpr int kDraws = 100000;
  for (double shape : {0.5, 1.0, 2.0, 9.0}) {
    double sum = 0.0;
    for (int i = 0; i < kDraws; ++i) sum += rng.gamma(shape);
    // sd of the mean is sqrt(shape / kDraws); 5 sd margin
    EXPECT_NEAR(sum / kDraws, shape, 5.0 * std::sqrt(shape / kDraws)) << "shape " << shape;
  }
  EXPECT_THROW(rng.gamma(0.0), banditsim::InvalidParameterError);
}

TEST(Rng, ShuffleIsDeterministicAndAPermutation) {
  std::vector<int> first(100);
  std::iota(first.begin(), first.end(), 0);
  std::vector<int> second = first;
  Rng a(99);
  Rng b(99);
  banditsim::shuffle(first, a);
  banditsim::shuffle(second, b);
  EXPECT_EQ(first, second);
  std::vector<int> sorted = first;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);
}

}  // namespace
