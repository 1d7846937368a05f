#include "swarmtrack/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace swarmtrack {

bool is_valid(const BBox& b) {
  return std::isfinite(b.u) && std::isfinite(b.v) && std::isfinite(b.w) && std::isfinite(b.h) &&
         b.w > 0.0 && b.h > 0.0;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::min(a.u + a.w / 2, b.u + b.w / 2) - std::max(a.u - a.w / 2, b.u - b.w / 2);
  const double iy = std::min(a.v + a.h / 2, b.v + b.h / 2) - std::max(a.v - a.h / 2, b.v - b.h / 2);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.w * a.h + b.w * b.h - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double center_distance(const BBox& a, const BBox& b) { return std::hypot(a.u - b.u, a.v - b.v); }

double diag(const BBox& b) { return std::hypot(b.w, b.h); }

TopLeftBox to_topleft(const BBox& b) { return {b.u - b.w / 2, b.v - b.h / 2, b.w, b.h}; }

BBox from_topleft(double left, double top, double w, double h) {
  if (!(w > 0.0) || !(h > 0.0)) {
    throw std::invalid_argument("box size must be positive, got w=" + std::to_string(w) +
                                " h=" + std::to_string(h));
  }
  return {left + w / 2, top + h / 2, w, h};
}

}  // namespace swarmtrack
