#include "sfm/subset.h"

#include <gtest/gtest.h>

namespace sfm {
namespace {

TEST(SubsetTest, BasicMembership) {
  Subset a = Subset::of(5, {0, 3});
  EXPECT_TRUE(a.contains(0));
  EXPECT_FALSE(a.contains(1));
  EXPECT_EQ(a.count(), 2u);
  a.insert(1);
  a.erase(0);
  EXPECT_EQ(a.elements(), (std::vector<std::size_t>{1, 3}));
}

TEST(SubsetTest, EmptyAndFull) {
  EXPECT_TRUE(Subset(4).empty());
  EXPECT_EQ(Subset::full(4).count(), 4u);
  EXPECT_EQ(Subset(4).complement(), Subset::full(4));
}

TEST(SubsetTest, SetAlgebra) {
  const Subset a = Subset::of(4, {0, 1});
  const Subset b = Subset::of(4, {1, 2});
  EXPECT_EQ(a | b, Subset::of(4, {0, 1, 2}));
  EXPECT_EQ(a & b, Subset::of(4, {1}));
  EXPECT_EQ(a - b, Subset::of(4, {0}));
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_FALSE(a.is_subset_of(b));
}

TEST(SubsetTest, FromMask) {
  EXPECT_EQ(Subset::from_mask(4, 0b1010), Subset::of(4, {1, 3}));
}

TEST(SubsetTest, ModularSum) {
  const std::vector<double> s{1.0, -2.0, 4.0};
  EXPECT_DOUBLE_EQ(modular_sum(s, Subset::of(3, {0, 2})), 5.0);
  EXPECT_DOUBLE_EQ(modular_sum(s, Subset(3)), 0.0);
}

}  // namespace
}  // namespace sfm
