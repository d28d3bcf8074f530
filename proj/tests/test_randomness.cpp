#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fdcolor/errors.hpp"
#include "fdcolor/randomness.hpp"

using namespace fdcolor;

TEST(VertexRandomness, Deterministic) {
  const VertexRandomness a(123), b(123);
  EXPECT_EQ(a.word(5, "orient", 2), b.word(5, "orient", 2));
  EXPECT_EQ(a.uniform(5, "orient", 2), b.uniform(5, "orient", 2));
  EXPECT_NE(a.word(5, "orient", 2), a.word(5, "orient", 3));
  EXPECT_NE(a.word(5, "orient", 2), a.word(6, "orient", 2));
  EXPECT_NE(a.word(5, "orient", 2), a.word(5, "inject", 2));
  EXPECT_NE(a.word(5, "orient", 2), VertexRandomness(124).word(5, "orient", 2));
}

TEST(VertexRandomness, KolmogorovSmirnov) {
  const VertexRandomness rnd(2024);
  constexpr std::size_t kDraws = 100000;
  std::vector<double> xs;
  xs.reserve(kDraws);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const double u = rnd.uniform(static_cast<VertexId>(i % 97), "ks", i / 97);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    xs.push_back(u);
  }
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  for (std::size_t i = 0; i < kDraws; ++i) {
    d = std::max({d, (i + 1.0) / kDraws - xs[i], xs[i] - static_cast<double>(i) / kDraws});
  }
  // Asymptotic 1% critical value.
  EXPECT_LT(d, 1.628 / std::sqrt(static_cast<double>(kDraws)));
}

TEST(VertexRandomness, TagStreamsUncorrelated) {
  const VertexRandomness rnd(99);
  constexpr std::size_t kDraws = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto v = static_cast<VertexId>(i % 1000);
    const double x = rnd.uniform(v, "orient", i / 1000);
    const double y = rnd.uniform(v, "insert", i / 1000);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double n = kDraws;
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double rho = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  EXPECT_LT(std::abs(rho), 0.02);
}

TEST(UniformChoice, SingleOutcome) {
  const VertexRandomness rnd(1);
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(rnd.uniform_choice(3, "c", i, 1), 0u);
}

TEST(UniformChoice, ZeroRangeRejected) {
  EXPECT_THROW(VertexRandomness(1).uniform_choice(0, "c", 0, 0), InputError);
}

TEST(UniformChoice, DieFacesWithinThreeSigma) {
  const VertexRandomness rnd(6);
  constexpr std::size_t kDraws = 60000;
  std::vector<std::size_t> counts(6, 0);
  for (std::size_t i = 0; i < kDraws; ++i) ++counts[rnd.uniform_choice(static_cast<VertexId>(i % 13), "die", i, 6)];
  const double p = 1.0 / 6.0;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  for (auto c : counts) EXPECT_LT(std::abs(c - kDraws * p), 3 * sigma);
}

TEST(UniformChoice, SameKeySameChoice) {
  const VertexRandomness rnd(77);
  EXPECT_EQ(rnd.uniform_choice(4, "x", 9, 1000), rnd.uniform_choice(4, "x", 9, 1000));
}

TEST(RandomInjection, BijectionOrdersBalanced) {
  const VertexRandomness rnd(5);
  const std::vector<VertexId> nb{7, 9};
  constexpr std::size_t kTrials = 10000;
  std::size_t identity = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto o = rnd.random_injection(0, nb, 2, "inject", t);
    ASSERT_EQ(o.size(), 2u);
    ASSERT_NE(o[0], o[1]);
    if (o[0] == 1) ++identity;
  }
  EXPECT_LT(std::abs(identity - kTrials / 2.0), 3 * std::sqrt(kTrials * 0.25));
}

TEST(RandomInjection, SingleNeighborUniform) {
  const VertexRandomness rnd(8);
  const std::vector<VertexId> nb{3};
  constexpr std::size_t kTrials = 9000;
  std::vector<std::size_t> counts(4, 0);
  for (std::size_t t = 0; t < kTrials; ++t) ++counts[rnd.random_injection(1, nb, 3, "inject", t)[0]];
  EXPECT_EQ(counts[0], 0u);
  const double sigma = std::sqrt(kTrials * (1.0 / 3) * (2.0 / 3));
  for (int l = 1; l <= 3; ++l) EXPECT_LT(std::abs(counts[l] - kTrials / 3.0), 3 * sigma);
}

TEST(RandomInjection, AllInjectionsReached) {
  const VertexRandomness rnd(12);
  const std::vector<VertexId> nb{1, 2};
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const auto o = rnd.random_injection(0, nb, 4, "inject", t);
    EXPECT_NE(o[0], o[1]);
    EXPECT_GE(std::min(o[0], o[1]), 1u);
    EXPECT_LE(std::max(o[0], o[1]), 4u);
    seen.insert(o);
  }
  EXPECT_EQ(seen.size(), 12u);
}

TEST(RandomInjection, EdgeCases) {
  const VertexRandomness rnd(3);
  EXPECT_TRUE(rnd.random_injection(0, {}, 3, "inject", 0).empty());
  const std::vector<VertexId> nb{1, 2, 3};
  EXPECT_THROW(rnd.random_injection(0, nb, 2, "inject", 0), InputError);
}

TEST(Resampled, OnlySaltedVerticesChange) {
  const VertexRandomness rnd(31);
  const std::vector<VertexId> salted{2, 5};
  const auto other = rnd.resampled(salted, 17);
  for (VertexId v = 0; v < 8; ++v) {
    const bool same = rnd.word(v, "t", 0) == other.word(v, "t", 0);
    EXPECT_EQ(same, v != 2 && v != 5) << v;
  }
  EXPECT_NE(other.word(2, "t", 0), rnd.resampled(salted, 18).word(2, "t", 0));
}

TEST(ForTrial, IndependentReplicas) {
  const VertexRandomness rnd(31);
  EXPECT_NE(rnd.for_trial(0).word(0, "t", 0), rnd.for_trial(1).word(0, "t", 0));
  EXPECT_EQ(rnd.for_trial(4).word(0, "t", 0), rnd.for_trial(4).word(0, "t", 0));
}

TEST(ChoiceStream, RoundRobinOverVertices) {
  const VertexRandomness rnd(4);
  ChoiceStream s(rnd, {10, 20, 30}, "insert", 2);
  std::vector<std::uint64_t> got;
  for (int j = 0; j < 6; ++j) got.push_back(s.choose(1000));
  for (std::uint64_t j = 0; j < 6; ++j) {
    const VertexId v = std::vector<VertexId>{10, 20, 30}[j % 3];
    EXPECT_EQ(got[j], rnd.uniform_choice(v, "insert", 2, 1000, j / 3));
  }
  EXPECT_EQ(s.draws(), 6u);
}
