#include "sfm/lovasz.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sfm/errors.h"
#include "test_support.h"

namespace sfm {
namespace {

using testing::chain2;

TEST(GreedyTest, Chain2Examples) {
  const CutFunction f = chain2();
  auto r = greedy_lovasz(f, std::vector<double>{0.7, 0.2});
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_EQ(r.base.s, (std::vector<double>{1.0, -1.0}));

  r = greedy_lovasz(f, std::vector<double>{0.5, 0.5});
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.base.s, (std::vector<double>{1.0, -1.0}));

  r = greedy_lovasz(f, std::vector<double>{0.0, 1.0});
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.base.s, (std::vector<double>{-1.0, 1.0}));
}

TEST(GreedyTest, LengthMismatchThrows) {
  EXPECT_THROW(greedy_lovasz(chain2(), std::vector<double>{1.0}), ArgumentError);
}

TEST(GreedyTest, BaseIsFeasibleAndSupportFunction) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const CutFunction f = testing::random_cut(rng, n);
    const auto w = testing::random_vector(rng, n, -1.0, 1.0);
    const auto r = greedy_lovasz(f, w);
    EXPECT_TRUE(check_base_point(f, r.base.s).ok());
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += w[j] * r.base.s[j];
    EXPECT_NEAR(dot, r.value, 1e-12);
    // Support function: no other greedy base does better.
    for (int k = 0; k < 200; ++k) {
      const auto other = testing::random_vector(rng, n, -1.0, 1.0);
      const auto s = greedy_lovasz(f, other).base.s;
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d += w[j] * s[j];
      EXPECT_LE(d, r.value + 1e-9);
    }
    const double c = 2.5;
    std::vector<double> scaled(w);
    for (double& x : scaled) x *= c;
    EXPECT_NEAR(greedy_lovasz(f, scaled).value, c * r.value, 1e-9);
  }
}

TEST(GreedyTest, LargeFunctionSampledCheck) {
  std::mt19937_64 rng(3);
  const CutFunction f = testing::random_cut(rng, 20, 0.2);
  const auto w = testing::random_vector(rng, 20, -1.0, 1.0);
  const auto report = check_base_point(f, greedy_lovasz(f, w).base.s);
  EXPECT_GE(report.checked, 1000u);
  EXPECT_TRUE(report.ok());
}

TEST(PsiTest, Examples) {
  EXPECT_EQ(psi(0.0, {0.25}), 0.0);
  EXPECT_DOUBLE_EQ(psi_conj(1.0, {0.25}), 0.21875);
  EXPECT_DOUBLE_EQ(psi_conj(0.1, {0.25}), 0.005);
  EXPECT_TRUE(std::isinf(psi(0.3, {0.25})));
  EXPECT_DOUBLE_EQ(psi(3.0, EpsilonBox::unconstrained()), 4.5);
  EXPECT_DOUBLE_EQ(psi_conj(3.0, EpsilonBox::unconstrained()), 4.5);
}

TEST(PsiTest, ConjugateMatchesNumericalSup) {
  const EpsilonBox box{0.4};
  const double step = 1e-4;
  for (double s = -2.0; s <= 2.0; s += 0.05) {
    double best = -std::numeric_limits<double>::infinity();
    for (double w = -box.epsilon; w <= box.epsilon + 1e-12; w += step) {
      best = std::max(best, s * w - psi(w, box));
    }
    EXPECT_NEAR(best, psi_conj(s, box), std::abs(s) * step + step);
  }
}

TEST(DiscreteGapTest, Chain2Examples) {
  const CutFunction f = chain2();
  EXPECT_EQ(discrete_gap(f, Subset(2), std::vector<double>{0, 0}), 0.0);
  EXPECT_EQ(discrete_gap(f, Subset::of(2, {0}), std::vector<double>{1, -1}), 2.0);
  EXPECT_EQ(discrete_gap(f, Subset::full(2), std::vector<double>{0, 0}), 0.0);
}

TEST(DiscreteGapTest, NonnegativeForFeasibleBase) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const CutFunction f = testing::random_cut(rng, n);
    const auto s = greedy_lovasz(f, testing::random_vector(rng, n, -1, 1)).base.s;
    for (std::uint64_t mask = 0; mask < (1U << n); ++mask) {
      EXPECT_GE(discrete_gap(f, Subset::from_mask(n, mask), s), -1e-9);
    }
  }
}

TEST(BruteForceSfmTest, Chain2Examples) {
  const CutFunction f = chain2();
  auto r = brute_force_sfm(f, std::vector<double>{0.5, -0.3});
  EXPECT_EQ(r.set, Subset::full(2));
  EXPECT_NEAR(r.value, -0.2, 1e-15);
  r = brute_force_sfm(f, std::vector<double>{0, 0});
  EXPECT_TRUE(r.set.empty());
  EXPECT_EQ(r.value, 0.0);
  r = brute_force_sfm(f, std::vector<double>{-3, -3});
  EXPECT_TRUE(r.set.empty());
  EXPECT_EQ(r.value, 0.0);
}

TEST(BruteForceSfmTest, TieBreakSmallerCardinalityThenMask) {
  // F = 0: every set ties at u = 0, with u_0 = u_1 = 1 the singletons tie at -1.
  const ModularFunction zero(std::vector<double>(3, 0.0));
  auto r = brute_force_sfm(zero, std::vector<double>{1.0, 1.0, 0.0});
  EXPECT_EQ(r.set, Subset::of(3, {0, 1}));
  r = brute_force_sfm(zero, std::vector<double>{0.0, 0.0, 0.0});
  EXPECT_TRUE(r.set.empty());
}

TEST(BruteForceSfmTest, RefusesLargeGroundSet) {
  const ModularFunction big(std::vector<double>(25, 0.0));
  EXPECT_THROW(brute_force_sfm(big, std::vector<double>(25, 0.0)), RefusalError);
}

TEST(BruteForceProxTest, Chain2Examples) {
  const CutFunction f = chain2();
  auto w = brute_force_prox(f, std::vector<double>{2, -2}, {0.25}, 1e-3);
  EXPECT_NEAR(w[0], 0.25, 1e-3);
  EXPECT_NEAR(w[1], -0.25, 1e-3);
  w = brute_force_prox(f, std::vector<double>{1, -1}, {0.25}, 1e-3);
  EXPECT_NEAR(w[0], 0.0, 2e-3);
  EXPECT_NEAR(w[1], 0.0, 2e-3);
  w = brute_force_prox(f, std::vector<double>{0, 0}, {0.25}, 1e-3);
  EXPECT_NEAR(w[0], 0.0, 1e-3);
  EXPECT_NEAR(w[1], 0.0, 1e-3);
}

TEST(BruteForceProxTest, Refusals) {
  const ModularFunction m(std::vector<double>(4, 0.0));
  EXPECT_THROW(brute_force_prox(m, std::vector<double>(4, 0.0), {0.25}, 1e-3), RefusalError);
  EXPECT_THROW(brute_force_prox(chain2(), std::vector<double>(2, 0.0), {0.25}, 0.1),
               ArgumentError);
}

TEST(FeasibilityTest, DetectsViolations) {
  const CutFunction f = chain2();
  EXPECT_TRUE(check_base_point(f, std::vector<double>{0.3, -0.3}).ok());
  EXPECT_FALSE(check_base_point(f, std::vector<double>{1.5, -1.5}).ok());
  EXPECT_FALSE(check_base_point(f, std::vector<double>{0.5, 0.0}).ok());
}

TEST(SubmodularityTest, CutFunctionsPass) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    EXPECT_EQ(count_submodularity_violations(testing::random_cut(rng, 6)), 0u);
  }
}

}  // namespace
}  // namespace sfm
