#include "swarmtrack/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace swarmtrack {

std::vector<std::string> validate_scenario(const ScenarioSpec& s) {
  std::vector<std::string> out;
  if (s.n_frames < 1) out.push_back("frames must be >= 1");
  if (s.width < 1 || s.height < 1) out.push_back("width and height must be >= 1");
  if (!(s.noise >= 0.0)) out.push_back("noise must be >= 0");
  if (!(s.dropout >= 0.0 && s.dropout <= 1.0)) out.push_back("dropout must lie in [0, 1]");
  if (!(s.fp_rate >= 0.0)) out.push_back("fp_rate must be >= 0");
  if (!(s.fp_conf_min >= 0.0 && s.fp_conf_min <= s.fp_conf_max && s.fp_conf_max <= 1.0)) {
    out.push_back("fp confidences must satisfy 0 <= fp_conf_min <= fp_conf_max <= 1");
  }
  if (!(s.det_conf_min >= 0.0 && s.det_conf_min <= 1.0)) out.push_back("det_conf_min must lie in [0, 1]");
  for (const auto& [id, path] : s.targets) {
    const std::string name = "target " + std::to_string(id);
    if (!(path.w > 0.0 && path.h > 0.0)) out.push_back(name + ": size must be positive");
    if (path.waypoints.empty()) out.push_back(name + ": needs at least one waypoint");
    for (std::size_t k = 0; k < path.waypoints.size(); ++k) {
      const long f = path.waypoints[k].frame;
      if (f < 1 || f > s.n_frames) out.push_back(name + ": waypoint frame outside [1, frames]");
      if (k > 0 && f <= path.waypoints[k - 1].frame) out.push_back(name + ": waypoint frames must increase");
    }
  }
  for (const auto& o : s.occlusions) {
    if (!s.targets.contains(o.target)) out.push_back("occlusion refers to unknown target " + std::to_string(o.target));
    if (o.first < 1 || o.last > s.n_frames || o.first > o.last) {
      out.push_back("occlusion window for target " + std::to_string(o.target) + " must lie within [1, frames]");
    }
  }
  return out;
}

std::optional<BBox> target_box(const TargetPath& path, long frame) {
  const auto& wp = path.waypoints;
  if (wp.empty() || frame < wp.front().frame || frame > wp.back().frame) return std::nullopt;
  for (std::size_t k = 0; k + 1 < wp.size(); ++k) {
    if (frame <= wp[k + 1].frame) {
      const double t = static_cast<double>(frame - wp[k].frame) / static_cast<double>(wp[k + 1].frame - wp[k].frame);
      return BBox{wp[k].u + t * (wp[k + 1].u - wp[k].u), wp[k].v + t * (wp[k + 1].v - wp[k].v), path.w, path.h};
    }
  }
  return BBox{wp.back().u, wp.back().v, path.w, path.h};
}

namespace {

bool occluded(const ScenarioSpec& s, int target, long frame) {
  return std::any_of(s.occlusions.begin(), s.occlusions.end(), [&](const OcclusionWindow& o) {
    return o.target == target && frame >= o.first && frame <= o.last;
  });
}

std::uint8_t target_intensity(int rank) { return static_cast<std::uint8_t>(90 + (rank * 47) % 160); }

void fill_box(GrayImage& img, const BBox& b, std::uint8_t value) {
  const int x0 = std::max(0, static_cast<int>(std::lround(b.u - b.w / 2)));
  const int y0 = std::max(0, static_cast<int>(std::lround(b.v - b.h / 2)));
  const int x1 = std::min(img.width, static_cast<int>(std::lround(b.u + b.w / 2)));
  const int y1 = std::min(img.height, static_cast<int>(std::lround(b.v + b.h / 2)));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) img.at(x, y) = value;
  }
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& s) {
  if (auto problems = validate_scenario(s); !problems.empty()) {
    std::ostringstream os;
    os << "invalid scenario:";
    for (const auto& p : problems) os << "\n  " << p;
    throw std::invalid_argument(os.str());
  }

  std::mt19937_64 rng(s.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double mean_w = 40.0, mean_h = 90.0;
  if (!s.targets.empty()) {
    mean_w = mean_h = 0.0;
    for (const auto& [_, p] : s.targets) {
      mean_w += p.w;
      mean_h += p.h;
    }
    mean_w /= static_cast<double>(s.targets.size());
    mean_h /= static_cast<double>(s.targets.size());
  }

  Scenario out;
  for (long f = 1; f <= s.n_frames; ++f) {
    auto& dets = out.detections[f];
    for (const auto& [id, path] : s.targets) {
      const auto box = target_box(path, f);
      if (!box) continue;
      out.gt.records.push_back({f, id, *box, 1.0});
      // Draws happen for every present target so the stream does not shift
      // when occlusions change.
      const double nu = noise(rng);
      const double nv = noise(rng);
      const double drop = unit(rng);
      const double conf_draw = unit(rng);
      if (occluded(s, id, f) || drop < s.dropout) continue;
      BBox d = *box;
      d.u += s.noise * nu;
      d.v += s.noise * nv;
      dets.push_back({d, s.det_conf_min + (1.0 - s.det_conf_min) * conf_draw});
    }
    const double whole = std::floor(s.fp_rate);
    const int n_fp = static_cast<int>(whole) + (unit(rng) < s.fp_rate - whole ? 1 : 0);
    for (int k = 0; k < n_fp; ++k) {
      const double w = mean_w * (0.5 + unit(rng));
      const double h = mean_h * (0.5 + unit(rng));
      const double u = unit(rng) * s.width;
      const double v = unit(rng) * s.height;
      const double conf = s.fp_conf_min + (s.fp_conf_max - s.fp_conf_min) * unit(rng);
      dets.push_back({{u, v, w, h}, conf});
    }
  }

  if (s.render) {
    out.frames.reserve(static_cast<std::size_t>(s.n_frames));
    for (long f = 1; f <= s.n_frames; ++f) {
      GrayImage img(s.width, s.height, 40);
      int rank = 0;
      for (const auto& [id, path] : s.targets) {
        const auto box = target_box(path, f);
        if (box && !occluded(s, id, f)) fill_box(img, *box, target_intensity(rank));
        ++rank;
      }
      out.frames.push_back(std::move(img));
    }
  }
  return out;
}

ScenarioSpec identity_suite_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);

  ScenarioSpec s;
  s.n_frames = 80;
  s.width = 960;
  s.height = 540;
  s.seed = seed;
  s.noise = 1.0 + 0.5 * (jitter(rng) + 1.0);
  s.dropout = 0.15;

  // Crossing pair: opposite directions, crossing near the middle frame.
  const double row = 150.0 + 20.0 * jitter(rng);
  const double speed = 7.0 * (1.0 + 0.15 * jitter(rng));
  const double span = speed * 79.0 / 2.0;
  const double cx = 480.0 + 30.0 * jitter(rng);
  const double offset = 8.0 + 6.0 * jitter(rng);
  s.targets[1] = {40.0, 90.0, {{1, cx - span, row}, {80, cx + span, row + offset}}};
  s.targets[2] = {40.0, 90.0, {{1, cx + span, row + offset}, {80, cx - span, row}}};
  const long start = 36 + static_cast<long>(std::lround(2.0 * jitter(rng)));
  s.occlusions.push_back({2, start, start + 9});

  // Three targets walking side by side.
  const double gap = 55.0 + 5.0 * jitter(rng);
  const double x0 = 200.0 + 40.0 * jitter(rng);
  const double y0 = 430.0 + 10.0 * jitter(rng);
  const double du = 4.0 * (1.0 + 0.2 * jitter(rng));
  const double dv = -1.5 * (1.0 + 0.2 * jitter(rng));
  for (int k = 0; k < 3; ++k) {
    const double x = x0 + k * gap;
    s.targets[3 + k] = {40.0, 90.0, {{1, x, y0}, {80, x + 79.0 * du, y0 + 79.0 * dv}}};
  }
  return s;
}

ScenarioSpec crowd_scenario(int n_targets, long n_frames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ScenarioSpec s;
  s.n_frames = n_frames;
  s.width = 1920;
  s.height = 1080;
  s.seed = seed;
  s.noise = 1.5;
  s.dropout = 0.05;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_targets))));
  for (int k = 0; k < n_targets; ++k) {
    const double x = 150.0 + (k % cols) * (1600.0 / cols) + 40.0 * unit(rng);
    const double y = 150.0 + (k / cols) * (800.0 / cols) + 40.0 * unit(rng);
    const double du = 2.0 * (unit(rng) - 0.5);
    const double dv = 1.0 * (unit(rng) - 0.5);
    const auto last = static_cast<double>(n_frames - 1);
    s.targets[k + 1] = {40.0, 90.0, {{1, x, y}, {n_frames, x + last * du, y + last * dv}}};
  }
  return s;
}

}  // namespace swarmtrack
