#include "swarmtrack/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swarmtrack {

double motion_cost(const BBox& particle, const BBox& det, double d_od) {
  const double c_iou = 1.0 - iou(particle, det);
  const double c_d = std::min(center_distance(particle, det), d_od) / d_od;
  return std::clamp(c_iou * c_d, 0.0, 1.0);
}

double detection_distance_cap(const BBox& a, const BBox& b) { return 0.5 * (diag(a) + diag(b)); }

CostMatrix build_cost_matrix(std::span<const Track> tracks, std::span<const Detection> dets,
                             const TrackerConfig& cfg) {
  CostMatrix c(tracks.size(), dets.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const Track& t = tracks[i];
    for (std::size_t j = 0; j < dets.size(); ++j) {
      const Detection& d = dets[j];
      double motion = 0.0;
      if (t.particles.empty()) {
        motion = motion_cost(t.state, d.box, detection_distance_cap(t.state, d.box));
      } else {
        for (const Particle& p : t.particles) {
          motion += motion_cost(p.state, d.box, detection_distance_cap(p.state, d.box));
        }
        motion /= static_cast<double>(t.particles.size());
      }
      const double value = cfg.lambda_p * motion + cfg.lambda_d * (1.0 - d.conf) + cfg.lambda_h * t.penalty;
      c(i, j) = std::clamp(value, 0.0, 1.0);
    }
  }
  return c;
}

namespace {

struct SquareSolution {
  std::vector<std::size_t> row_to_col;
  std::vector<double> u;  // row potentials
  std::vector<double> v;  // column potentials
};

// Shortest augmenting path Hungarian method on an n x n matrix.
SquareSolution hungarian(const std::vector<double>& cost, std::size_t n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  SquareSolution sol;
  sol.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) sol.row_to_col[p[j] - 1] = j - 1;
  sol.u.assign(u.begin() + 1, u.end());
  sol.v.assign(v.begin() + 1, v.end());
  return sol;
}

// Optimal assignment of the rows/cols not yet fixed; returns its cost and
// writes the chosen columns into `assign`.
double solve_remaining(const std::vector<double>& cost, std::size_t n, const std::vector<char>& row_fixed,
                       const std::vector<char>& col_used, std::vector<std::size_t>& assign) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (!row_fixed[i]) rows.push_back(i);
    if (!col_used[i]) cols.push_back(i);
  }
  const std::size_t m = rows.size();
  if (m == 0) return 0.0;
  std::vector<double> sub(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) sub[a * m + b] = cost[rows[a] * n + cols[b]];
  }
  const SquareSolution s = hungarian(sub, m);
  double total = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    assign[rows[a]] = cols[s.row_to_col[a]];
    total += sub[a * m + s.row_to_col[a]];
  }
  return total;
}

}  // namespace

AssignmentResult solve_assignment(const CostMatrix& c, double gate, TieBreak ties) {
  AssignmentResult out;
  const std::size_t rows = c.rows();
  const std::size_t cols = c.cols();
  if (rows == 0 || cols == 0) {
    for (std::size_t i = 0; i < rows; ++i) out.unmatched_rows.push_back(i);
    for (std::size_t j = 0; j < cols; ++j) out.unmatched_cols.push_back(j);
    return out;
  }

  // Zero-cost padding to a square problem; a real row assigned to a padding
  // column (or vice versa) is unmatched.
  const std::size_t n = std::max(rows, cols);
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cost[i * n + j] = c(i, j);
  }
  const SquareSolution base = hungarian(cost, n);
  std::vector<std::size_t> assign = base.row_to_col;
  double optimum = 0.0;
  for (std::size_t i = 0; i < n; ++i) optimum += cost[i * n + assign[i]];

  // Lexicographic tie-breaking: walk rows in order and move each row to the
  // smallest column that still admits an optimal completion. Only columns
  // tight under the optimal duals can belong to an optimal assignment.
  constexpr double kTight = 1e-9;
  const double tol = 1e-12 * (1.0 + std::abs(optimum));
  std::vector<char> row_fixed(n, 0), col_used(n, 0);
  double fixed_cost = 0.0;
  for (std::size_t i = 0; ties == TieBreak::Lexicographic && i < rows; ++i) {
    for (std::size_t j = 0; j < assign[i]; ++j) {
      if (col_used[j]) continue;
      if (cost[i * n + j] - base.u[i] - base.v[j] > kTight) continue;
      std::vector<std::size_t> trial = assign;
      row_fixed[i] = 1;
      col_used[j] = 1;
      trial[i] = j;
      const double total = fixed_cost + cost[i * n + j] + solve_remaining(cost, n, row_fixed, col_used, trial);
      row_fixed[i] = 0;
      col_used[j] = 0;
      if (total <= optimum + tol) {
        assign = std::move(trial);
        break;
      }
    }
    row_fixed[i] = 1;
    col_used[assign[i]] = 1;
    fixed_cost += cost[i * n + assign[i]];
  }

  std::vector<char> col_matched(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t j = assign[i];
    if (j < cols && c(i, j) <= gate) {
      out.matches.emplace_back(i, j);
      col_matched[j] = 1;
    } else {
      out.unmatched_rows.push_back(i);
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (!col_matched[j]) out.unmatched_cols.push_back(j);
  }
  return out;
}

AssignmentResult solve_gated_assignment(const CostMatrix& c, double gate) {
  const std::size_t rows = c.rows();
  const std::size_t cols = c.cols();
  if (rows == 0 || cols == 0) return solve_assignment(c, gate);
  CostMatrix padded(rows, cols + rows, gate);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) padded(i, j) = c(i, j);
  const AssignmentResult wide = solve_assignment(padded, gate);

  AssignmentResult out;
  std::vector<char> col_matched(cols, 0);
  std::vector<char> row_matched(rows, 0);
  for (const auto& [i, j] : wide.matches) {
    if (j < cols) {
      out.matches.emplace_back(i, j);
      col_matched[j] = 1;
      row_matched[i] = 1;
    }
  }
  for (std::size_t i = 0; i < rows; ++i)
    if (!row_matched[i]) out.unmatched_rows.push_back(i);
  for (std::size_t j = 0; j < cols; ++j)
    if (!col_matched[j]) out.unmatched_cols.push_back(j);
  return out;
}

double assignment_cost(const CostMatrix& c, const AssignmentResult& a) {
  double total = 0.0;
  for (const auto& [r, col] : a.matches) total += c(r, col);
  return total;
}

Classification classify(const AssignmentResult& assign, std::span<const Detection> dets, double conf_new) {
  Classification out;
  out.strong = assign.matches;
  out.weak = assign.unmatched_rows;
  for (std::size_t j : assign.unmatched_cols) {
    if (dets[j].conf >= conf_new) out.births.push_back(j);
  }
  return out;
}

}  // namespace swarmtrack
