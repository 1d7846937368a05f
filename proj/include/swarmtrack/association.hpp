#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "swarmtrack/config.hpp"
#include "swarmtrack/geometry.hpp"
#include "swarmtrack/track.hpp"

namespace swarmtrack {

struct Detection {
  BBox box;
  double conf = 1.0;
};

/// Dense row-major T x D matrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct AssignmentResult {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (row, col), ascending rows
  std::vector<std::size_t> unmatched_rows;
  std::vector<std::size_t> unmatched_cols;
};

/// (1 - IoU) times the capped center distance, both in [0, 1].
double motion_cost(const BBox& particle, const BBox& det, double d_od);

/// Cap distance for the motion cost: mean of the two box diagonals.
double detection_distance_cap(const BBox& a, const BBox& b);

/// Target-oriented cost: particle-averaged motion cost, detection
/// confidence and track penalty, weighted by lambda_p, lambda_d, lambda_h.
/// Tracks without particles fall back to their state as a single particle.
CostMatrix build_cost_matrix(std::span<const Track> tracks, std::span<const Detection> dets,
                             const TrackerConfig& cfg);

/// Minimum total cost one-to-one assignment of a rectangular matrix
/// (Hungarian method). Among optimal assignments the one whose
/// (row, col) match list is lexicographically smallest is returned.
/// Matches costing more than `gate` are then moved to the unmatched lists.
/// TieBreak::None skips the lexicographic pass and returns whichever optimum
/// the solver reaches first (still deterministic).
enum class TieBreak { Lexicographic, None };
AssignmentResult solve_assignment(const CostMatrix& c, double gate, TieBreak ties = TieBreak::Lexicographic);

/// Assignment in which every row may instead stay unmatched at a cost of
/// `gate`, so no row is forced onto a distant column just because the
/// matrix is rectangular. Never returns a match costing more than `gate`.
AssignmentResult solve_gated_assignment(const CostMatrix& c, double gate);

/// Sum of the matched entries in row order.
double assignment_cost(const CostMatrix& c, const AssignmentResult& a);

struct Classification {
  std::vector<std::pair<std::size_t, std::size_t>> strong;  // (track index, detection index)
  std::vector<std::size_t> weak;                            // track indices
  std::vector<std::size_t> births;                          // detection indices
};

/// Splits an assignment into strong matches, weak tracks and births
/// (unmatched detections with confidence >= conf_new).
Classification classify(const AssignmentResult& assign, std::span<const Detection> dets, double conf_new);

}  // namespace swarmtrack
