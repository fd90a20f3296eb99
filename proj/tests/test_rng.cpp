#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sfsel/rng.hpp"

namespace {

TEST(Rng, SameSeedSameStream) {
  sfsel::Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
  }
  sfsel::Rng c(42), d(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(c.uniform01(), d.uniform01());
    ASSERT_EQ(c.normal(), d.normal());
    ASSERT_EQ(c.uniform_index(17), d.uniform_index(17));
  }
}

TEST(Rng, UniformIndexBounds) {
  sfsel::Rng rng(7);
  std::vector<long> counts(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const auto k = rng.uniform_index(5);
    ASSERT_LT(k, 5u);
    ++counts[k];
  }
  for (long c : counts) {
    EXPECT_GT(c, 9000);
    EXPECT_LT(c, 11000);
  }
  EXPECT_THROW(rng.uniform_index(0), std::invalid_argument);
}

TEST(Rng, NormalMoments) {
  sfsel::Rng rng(3);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Rng, Uniform01Range) {
  sfsel::Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
