#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "swarmtrack/geometry.hpp"

using swarmtrack::BBox;

TEST(Iou, IdenticalBoxes) { EXPECT_DOUBLE_EQ(swarmtrack::iou({10, 10, 4, 4}, {10, 10, 4, 4}), 1.0); }

TEST(Iou, DisjointBoxes) { EXPECT_DOUBLE_EQ(swarmtrack::iou({0, 0, 2, 2}, {100, 100, 2, 2}), 0.0); }

TEST(Iou, HalfShiftedSquare) {
  const BBox a{0, 0, 2, 2}, b{1, 0, 2, 2};
  const double expected = oracle::raster_iou(a, b);
  EXPECT_NEAR(expected, 1.0 / 3.0, 1e-3);
  EXPECT_NEAR(swarmtrack::iou(a, b), expected, 1e-3);
  EXPECT_NEAR(swarmtrack::iou(a, b), 1.0 / 3.0, 1e-12);
}

TEST(Iou, AgreesWithRasterOracleOnIntegerBoxes) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pos(0, 12), size(1, 8);
  for (int k = 0; k < 200; ++k) {
    const BBox a{pos(rng) + 0.0, pos(rng) + 0.0, size(rng) * 2.0, size(rng) * 2.0};
    const BBox b{pos(rng) + 0.0, pos(rng) + 0.0, size(rng) * 2.0, size(rng) * 2.0};
    const double got = swarmtrack::iou(a, b);
    EXPECT_NEAR(got, oracle::raster_iou(a, b, 8), 1e-3);
    EXPECT_DOUBLE_EQ(got, swarmtrack::iou(b, a));
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
  }
}

TEST(CenterDistance, Examples) {
  EXPECT_DOUBLE_EQ(swarmtrack::center_distance({5, 5, 1, 1}, {5, 5, 3, 3}), 0.0);
  EXPECT_DOUBLE_EQ(swarmtrack::center_distance({0, 0, 1, 1}, {3, 4, 1, 1}), 5.0);
  EXPECT_DOUBLE_EQ(swarmtrack::center_distance({1, 1, 1, 1}, {4, 5, 1, 1}), 5.0);
}

TEST(CenterDistance, TriangleInequality) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> c(-100, 100);
  for (int k = 0; k < 1000; ++k) {
    const BBox a{c(rng), c(rng), 1, 1}, b{c(rng), c(rng), 1, 1}, d{c(rng), c(rng), 1, 1};
    const double ab = swarmtrack::center_distance(a, b);
    EXPECT_LE(swarmtrack::center_distance(a, d), ab + swarmtrack::center_distance(b, d) + 1e-9);
    EXPECT_DOUBLE_EQ(ab, swarmtrack::center_distance(b, a));
  }
}

TEST(Diag, Examples) {
  EXPECT_DOUBLE_EQ(swarmtrack::diag({0, 0, 3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(swarmtrack::diag({0, 0, 1, 1}), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(swarmtrack::diag({5, 5, 6, 8}), 10.0);
}

TEST(TopLeft, Conversions) {
  EXPECT_EQ(swarmtrack::from_topleft(100, 200, 50, 100), (BBox{125, 250, 50, 100}));
  EXPECT_EQ(swarmtrack::from_topleft(0, 0, 2, 2), (BBox{1, 1, 2, 2}));
  const BBox b{10, 10, 4, 4};
  EXPECT_EQ(swarmtrack::from_topleft(swarmtrack::to_topleft(b)), b);
}

TEST(TopLeft, RoundTripIsExactOnQuarterPixelGrid) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> q(-4000, 4000), s(1, 800);
  for (int k = 0; k < 1000; ++k) {
    const BBox b{q(rng) / 4.0, q(rng) / 4.0, s(rng) / 4.0, s(rng) / 4.0};
    EXPECT_EQ(swarmtrack::from_topleft(swarmtrack::to_topleft(b)), b);
  }
}

TEST(TopLeft, RejectsNonPositiveSize) {
  EXPECT_THROW(swarmtrack::from_topleft(0, 0, 0, 2), std::invalid_argument);
  EXPECT_THROW(swarmtrack::from_topleft(0, 0, 2, -1), std::invalid_argument);
}

TEST(BBox, Validity) {
  EXPECT_TRUE(swarmtrack::is_valid({0, 0, 1, 1}));
  EXPECT_FALSE(swarmtrack::is_valid({0, 0, 0, 1}));
  EXPECT_FALSE(swarmtrack::is_valid({NAN, 0, 1, 1}));
}
