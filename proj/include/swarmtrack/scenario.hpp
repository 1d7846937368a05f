#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarmtrack/appearance.hpp"
#include "swarmtrack/mot_io.hpp"

namespace swarmtrack {

struct Waypoint {
  long frame = 1;
  double u = 0.0;
  double v = 0.0;
};

struct TargetPath {
  double w = 40.0;
  double h = 90.0;
  std::vector<Waypoint> waypoints;  // strictly increasing frames
};

struct OcclusionWindow {
  int target = 0;
  long first = 1;
  long last = 1;
};

/// Synthetic sequence description. Targets are keyed by their ground-truth
/// id; each exists from its first to its last waypoint frame.
struct ScenarioSpec {
  long n_frames = 100;
  int width = 640;
  int height = 480;
  std::uint64_t seed = 0;
  double noise = 0.0;         // std-dev of detection center noise, px
  double dropout = 0.0;       // probability a visible target yields no detection
  double fp_rate = 0.0;       // mean false positives per frame
  double fp_conf_min = 0.3;
  double fp_conf_max = 0.6;
  double det_conf_min = 1.0;  // true detections draw conf uniformly in [det_conf_min, 1]
  bool render = false;        // also produce PGM frames
  std::map<int, TargetPath> targets;
  std::vector<OcclusionWindow> occlusions;
};

/// Problems with a spec, one message each; empty when valid.
std::vector<std::string> validate_scenario(const ScenarioSpec& spec);

struct Scenario {
  TrackFile gt;
  DetectionSequence detections;  // every frame 1..n_frames has an entry
  std::vector<GrayImage> frames;  // frames[k] is frame k + 1; empty unless render
};

/// Piecewise-linear ground truth through the waypoints, detections with
/// Gaussian center noise, dropout, occlusion gaps and uniform false
/// positives. A pure function of the spec. Throws std::invalid_argument for
/// invalid specs.
Scenario generate_scenario(const ScenarioSpec& spec);

/// Ground-truth box of a target at `frame`, if it exists then.
std::optional<BBox> target_box(const TargetPath& path, long frame);

/// Identity-preservation benchmark: two targets crossing with one fully
/// occluded for 10 frames around the crossing, three targets moving
/// alongside each other, and 15% detection dropout. Geometry and noise vary
/// with the seed.
ScenarioSpec identity_suite_scenario(std::uint64_t seed);

/// Many targets on straight paths, for throughput measurement.
ScenarioSpec crowd_scenario(int n_targets, long n_frames, std::uint64_t seed);

}  // namespace swarmtrack
