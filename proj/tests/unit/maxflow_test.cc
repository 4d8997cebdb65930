#include "sfm/maxflow.h"

#include <gtest/gtest.h>

#include <random>

#include "sfm/cut_function.h"
#include "sfm/lovasz.h"
#include "test_support.h"

namespace sfm {
namespace {

class MaxFlowTest : public ::testing::TestWithParam<FlowAlgorithm> {};

TEST_P(MaxFlowTest, SinglePath) {
  FlowNetwork net(1);
  net.add_terminal(0, 2.0, 1.0);
  const auto r = max_flow(net, GetParam());
  EXPECT_EQ(r.flow_value, 1.0);
  EXPECT_EQ(r.source_side, Subset::of(1, {0}));
}

TEST_P(MaxFlowTest, ZeroCapacity) {
  FlowNetwork net(3);
  net.add_edge(0, 1, 0.0);
  const auto r = max_flow(net, GetParam());
  EXPECT_EQ(r.flow_value, 0.0);
  EXPECT_TRUE(r.source_side.empty());
}

TEST_P(MaxFlowTest, Diamond) {
  FlowNetwork net(2);
  net.add_terminal(0, 1.0, 1.0);
  net.add_terminal(1, 1.0, 1.0);
  const auto r = max_flow(net, GetParam());
  EXPECT_EQ(r.flow_value, 2.0);
}

TEST_P(MaxFlowTest, FlowEqualsCutAndConservation) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 15;
    FlowNetwork net(n);
    for (std::size_t p = 0; p < n; ++p) {
      net.add_terminal(p, testing::uniform(rng, 0, 1) < 0.4 ? testing::uniform(rng, 0, 3) : 0.0,
                       testing::uniform(rng, 0, 1) < 0.4 ? testing::uniform(rng, 0, 3) : 0.0);
      for (std::size_t q = p + 1; q < n; ++q) {
        if (testing::uniform(rng, 0, 1) < 0.3) {
          net.add_edge(p, q, testing::uniform(rng, 0, 2), testing::uniform(rng, 0, 2));
        }
      }
    }
    const auto r = max_flow(net, GetParam());
    EXPECT_NEAR(r.flow_value, cut_capacity(net, r.source_side), 1e-9);
    const auto& c = r.certificate;
    for (std::size_t a = 0; a < net.num_arcs(); ++a) {
      EXPECT_GE(c.arc_flow[a], 0.0);
      EXPECT_LE(c.arc_flow[a], net.arc_capacity(a) + 1e-12);
    }
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_NEAR(c.source_flow[j] - c.sink_flow[j] - c.net_outflow[j], 0.0, 1e-9);
    }
  }
}

TEST_P(MaxFlowTest, SourceSideIsInclusionMinimal) {
  // Two equal cuts: {} and {0}; the source side must be the smaller one.
  FlowNetwork net(1);
  net.add_terminal(0, 1.0, 1.0);
  EXPECT_TRUE(max_flow(net, GetParam()).source_side.empty());
}

INSTANTIATE_TEST_SUITE_P(Algorithms, MaxFlowTest,
                         ::testing::Values(FlowAlgorithm::kSearchTrees,
                                           FlowAlgorithm::kShortestPaths));

TEST(MaxFlowAgreementTest, AlgorithmsAgreeOnValue) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + trial % 20;
    const CutFunction f = testing::random_cut(rng, n, 0.3);
    const auto u = testing::random_vector(rng, n, -2, 2);
    const auto a = f.minimize_with(u, FlowAlgorithm::kSearchTrees);
    const auto b = f.minimize_with(u, FlowAlgorithm::kShortestPaths);
    EXPECT_NEAR(a.value, b.value, 1e-9);
    EXPECT_EQ(a.set, b.set);
  }
}

TEST(MaxFlowAgreementTest, ScaledIntegerModeIsExact) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8;
    const CutFunction f = testing::random_cut(rng, n, 0.4);
    const auto u = testing::random_vector(rng, n, -2, 2);
    const auto a = f.minimize_with(u, FlowAlgorithm::kSearchTrees, CapacityMode::kScaledInteger);
    const auto b = f.minimize_with(u, FlowAlgorithm::kShortestPaths, CapacityMode::kScaledInteger);
    EXPECT_EQ(a.set, b.set);
    const auto c = f.minimize_with(u, FlowAlgorithm::kSearchTrees, CapacityMode::kScaledInteger);
    EXPECT_EQ(a.value, c.value);
    EXPECT_EQ(a.certificate.s, c.certificate.s);
  }
}

}  // namespace
}  // namespace sfm
