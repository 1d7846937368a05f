#pragma once

#include <cmath>

namespace swarmtrack {

/// Center-format bounding box in pixels.
struct BBox {
  double u = 0.0;  // horizontal center
  double v = 0.0;  // vertical center
  double w = 1.0;
  double h = 1.0;

  bool operator==(const BBox&) const = default;
};

/// Per-frame rate of change of a BBox (px/frame).
struct Velocity4 {
  double du = 0.0;
  double dv = 0.0;
  double dw = 0.0;
  double dh = 0.0;

  bool operator==(const Velocity4&) const = default;

  /// Magnitude of the center component (du, dv).
  double center_norm() const { return std::hypot(du, dv); }
};

/// MOTChallenge-style corner box.
struct TopLeftBox {
  double left = 0.0;
  double top = 0.0;
  double w = 1.0;
  double h = 1.0;

  bool operator==(const TopLeftBox&) const = default;
};

/// True when w, h > 0 and every field is finite.
bool is_valid(const BBox& b);

/// Intersection over union, in [0, 1].
double iou(const BBox& a, const BBox& b);

/// Euclidean distance between box centers. All state distances in the
/// tracker are measured over (u, v) only; size enters through IoU.
double center_distance(const BBox& a, const BBox& b);

double diag(const BBox& b);

TopLeftBox to_topleft(const BBox& b);

/// Throws std::invalid_argument for non-positive sizes.
BBox from_topleft(double left, double top, double w, double h);
inline BBox from_topleft(const TopLeftBox& t) { return from_topleft(t.left, t.top, t.w, t.h); }

}  // namespace swarmtrack
