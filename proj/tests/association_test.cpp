#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "swarmtrack/association.hpp"
#include "test_util.hpp"

using namespace swarmtrack;

TEST(MotionCost, Examples) {
  const BBox a{0, 0, 10, 10};
  EXPECT_DOUBLE_EQ(motion_cost(a, a, 5.0), 0.0);
  EXPECT_DOUBLE_EQ(motion_cost(a, {50, 0, 10, 10}, 20.0), 1.0);
  // Shift by 10/3 gives IoU (10 - s) / (10 + s) = 0.5.
  const BBox b{10.0 / 3.0, 0, 10, 10};
  EXPECT_NEAR(iou(a, b), 0.5, 1e-12);
  EXPECT_NEAR(motion_cost(a, b, 20.0 / 3.0), 0.25, 1e-12);
}

TEST(MotionCost, DistanceCapIsMeanDiagonal) {
  EXPECT_DOUBLE_EQ(detection_distance_cap({0, 0, 3, 4}, {0, 0, 6, 8}), 7.5);
}

namespace {

Track track_with_particles(BBox state, const std::vector<BBox>& boxes, double penalty = 0.0) {
  Track t = testutil::make_track(1, state);
  t.penalty = penalty;
  for (const BBox& b : boxes) {
    Particle p;
    p.state = b;
    t.particles.push_back(p);
  }
  return t;
}

}  // namespace

TEST(CostMatrix, ZeroWhenParticlesSitOnDetection) {
  const BBox d{50, 50, 20, 40};
  const std::vector<Track> tracks{track_with_particles(d, {d, d, d})};
  const std::vector<Detection> dets{{d, 1.0}};
  const auto c = build_cost_matrix(tracks, dets, TrackerConfig{});
  ASSERT_EQ(c.rows(), 1u);
  ASSERT_EQ(c.cols(), 1u);
  EXPECT_DOUBLE_EQ(c(0, 0), 0.0);
}

TEST(CostMatrix, ConfidenceAndPenaltyTerms) {
  const BBox d{50, 50, 20, 40};
  const std::vector<Track> tracks{track_with_particles({0, 0, 5, 5}, {{0, 0, 5, 5}}, 0.3)};
  const std::vector<Detection> dets{{d, 0.9}};
  TrackerConfig cfg;
  cfg.lambda_p = 0.0;
  cfg.lambda_d = 1.0;
  cfg.lambda_h = 0.0;
  EXPECT_NEAR(build_cost_matrix(tracks, dets, cfg)(0, 0), 0.1, 1e-12);
  cfg.lambda_d = 0.0;
  cfg.lambda_h = 1.0;
  EXPECT_NEAR(build_cost_matrix(tracks, dets, cfg)(0, 0), 0.3, 1e-12);
}

TEST(CostMatrix, EmptyInputsGiveZeroDimensions) {
  const std::vector<Detection> dets{{{1, 1, 1, 1}, 1.0}};
  const auto c = build_cost_matrix({}, dets, TrackerConfig{});
  EXPECT_EQ(c.rows(), 0u);
  EXPECT_EQ(c.cols(), 1u);
}

TEST(CostMatrix, AveragesOverParticles) {
  const BBox d{0, 0, 10, 10};
  const std::vector<Track> tracks{track_with_particles(d, {d, {100, 0, 10, 10}})};
  const std::vector<Detection> dets{{d, 1.0}};
  TrackerConfig cfg;
  EXPECT_NEAR(build_cost_matrix(tracks, dets, cfg)(0, 0), cfg.lambda_p * 0.5, 1e-12);
}

TEST(CostMatrix, EntriesInUnitInterval) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> pos(0, 200), size(1, 60), unit(0, 1);
  const TrackerConfig cfg;
  for (int k = 0; k < 200; ++k) {
    std::vector<Track> tracks;
    for (int i = 0; i < 3; ++i) {
      std::vector<BBox> ps;
      for (int s = 0; s < 4; ++s) ps.push_back({pos(rng), pos(rng), size(rng), size(rng)});
      tracks.push_back(track_with_particles(ps[0], ps, unit(rng)));
    }
    std::vector<Detection> dets;
    for (int j = 0; j < 4; ++j) dets.push_back({{pos(rng), pos(rng), size(rng), size(rng)}, unit(rng)});
    const auto c = build_cost_matrix(tracks, dets, cfg);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) {
        EXPECT_GE(c(i, j), 0.0);
        EXPECT_LE(c(i, j), 1.0);
      }
  }
}

TEST(Assignment, SingleEntry) {
  CostMatrix c(1, 1, 0.2);
  const auto r = solve_assignment(c, 0.9);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0], std::make_pair(std::size_t{0}, std::size_t{0}));
  EXPECT_TRUE(r.unmatched_rows.empty());
  EXPECT_TRUE(r.unmatched_cols.empty());
}

TEST(Assignment, DominantDiagonal) {
  CostMatrix c(2, 2, 0.9);
  c(0, 0) = 0.1;
  c(1, 1) = 0.1;
  const auto r = solve_assignment(c, 1.0);
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0], std::make_pair(std::size_t{0}, std::size_t{0}));
  EXPECT_EQ(r.matches[1], std::make_pair(std::size_t{1}, std::size_t{1}));
}

TEST(Assignment, GateDemotesBothSides) {
  CostMatrix c(2, 2, 0.95);
  c(0, 0) = 0.1;
  const auto r = solve_assignment(c, 0.8);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.unmatched_rows, std::vector<std::size_t>{1});
  EXPECT_EQ(r.unmatched_cols, std::vector<std::size_t>{1});
}

TEST(Assignment, EmptyMatrices) {
  EXPECT_TRUE(solve_assignment(CostMatrix(0, 0), 1.0).matches.empty());
  const auto r = solve_assignment(CostMatrix(0, 3), 1.0);
  EXPECT_EQ(r.unmatched_cols.size(), 3u);
  const auto s = solve_assignment(CostMatrix(2, 0), 1.0);
  EXPECT_EQ(s.unmatched_rows.size(), 2u);
}

TEST(Assignment, TiesResolveLexicographically) {
  const CostMatrix c(3, 3, 0.5);
  const auto r = solve_assignment(c, 1.0);
  ASSERT_EQ(r.matches.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.matches[i], std::make_pair(i, i));
}

TEST(Assignment, MatchesBruteForceOracle) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dim(1, 7);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int k = 0; k < 300; ++k) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    CostMatrix c(rows, cols);
    std::vector<std::vector<double>> dense(rows, std::vector<double>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) dense[i][j] = c(i, j) = unit(rng);
    const auto r = solve_assignment(c, 1.0);
    EXPECT_EQ(r.matches.size(), std::min(rows, cols));
    EXPECT_EQ(assignment_cost(c, r), oracle::brute_force_assignment(dense));
  }
}

TEST(Assignment, EachIndexUsedOnce) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int k = 0; k < 100; ++k) {
    CostMatrix c(5, 4);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) c(i, j) = unit(rng);
    const auto r = solve_assignment(c, 0.5);
    std::vector<int> rows(5, 0), cols(4, 0);
    for (auto [i, j] : r.matches) {
      ++rows[i];
      ++cols[j];
      EXPECT_LE(c(i, j), 0.5);
    }
    for (auto i : r.unmatched_rows) ++rows[i];
    for (auto j : r.unmatched_cols) ++cols[j];
    for (int v : rows) EXPECT_EQ(v, 1);
    for (int v : cols) EXPECT_EQ(v, 1);
  }
}

TEST(Assignment, PermutingColumnsPermutesMatches) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int k = 0; k < 100; ++k) {
    const std::size_t rows = 4, cols = 6;
    CostMatrix c(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) c(i, j) = unit(rng);
    std::vector<std::size_t> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CostMatrix p(rows, cols);  // column j of p is column perm[j] of c
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) p(i, j) = c(i, perm[j]);
    const auto a = solve_assignment(c, 0.7);
    const auto b = solve_assignment(p, 0.7);
    ASSERT_EQ(a.matches.size(), b.matches.size());
    for (std::size_t m = 0; m < a.matches.size(); ++m) {
      EXPECT_EQ(a.matches[m].first, b.matches[m].first);
      EXPECT_EQ(a.matches[m].second, perm[b.matches[m].second]);
    }
  }
}

TEST(Classify, SplitsMatchesWeakAndBirths) {
  AssignmentResult a;
  a.matches = {{0, 1}};
  a.unmatched_rows = {1};
  a.unmatched_cols = {0, 2};
  const std::vector<Detection> dets{{{0, 0, 1, 1}, 0.95}, {{0, 0, 1, 1}, 0.5}, {{0, 0, 1, 1}, 0.4}};
  const auto c = classify(a, dets, 0.6);
  EXPECT_EQ(c.strong, a.matches);
  EXPECT_EQ(c.weak, std::vector<std::size_t>{1});
  EXPECT_EQ(c.births, std::vector<std::size_t>{0});
}

TEST(Classify, AllMatchedHasNoWeakOrBirths) {
  AssignmentResult a;
  a.matches = {{0, 0}, {1, 1}};
  const std::vector<Detection> dets{{{0, 0, 1, 1}, 0.9}, {{0, 0, 1, 1}, 0.9}};
  const auto c = classify(a, dets, 0.6);
  EXPECT_TRUE(c.weak.empty());
  EXPECT_TRUE(c.births.empty());
}

TEST(Classify, BirthThresholdIsInclusive) {
  AssignmentResult a;
  a.unmatched_cols = {0};
  const std::vector<Detection> dets{{{0, 0, 1, 1}, 0.6}};
  EXPECT_EQ(classify(a, dets, 0.6).births.size(), 1u);
}

TEST(GatedAssignment, LeavesRowUnmatchedInsteadOfForcingBadPairs) {
  // Plain assignment must match both rows, so it takes the two mediocre
  // diagonal pairs; the gated form keeps the one good pair.
  CostMatrix c(2, 2, 0.6);
  c(0, 1) = 0.01;
  c(0, 0) = 0.26;
  c(1, 1) = 0.26;
  EXPECT_EQ(solve_assignment(c, 0.3).matches.size(), 2u);
  const auto r = solve_gated_assignment(c, 0.3);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0], std::make_pair(std::size_t{0}, std::size_t{1}));
  EXPECT_EQ(r.unmatched_rows, std::vector<std::size_t>{1});
  EXPECT_EQ(r.unmatched_cols, std::vector<std::size_t>{0});
}

TEST(GatedAssignment, OptimalAmongGatedMatchings) {
  // Oracle: every row either takes a column or pays the gate.
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int k = 0; k < 200; ++k) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    const double gate = 0.2 + 0.6 * unit(rng);
    CostMatrix c(rows, cols);
    std::vector<std::vector<double>> padded(rows, std::vector<double>(cols + rows, gate));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) padded[i][j] = c(i, j) = unit(rng);
    const auto r = solve_gated_assignment(c, gate);
    double total = gate * static_cast<double>(r.unmatched_rows.size());
    for (auto [i, j] : r.matches) {
      EXPECT_LE(c(i, j), gate);
      total += c(i, j);
    }
    EXPECT_NEAR(total, oracle::brute_force_assignment(padded), 1e-12);
    EXPECT_EQ(r.matches.size() + r.unmatched_rows.size(), rows);
    EXPECT_EQ(r.matches.size() + r.unmatched_cols.size(), cols);
  }
}
