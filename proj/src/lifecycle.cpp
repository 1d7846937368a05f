#include "swarmtrack/lifecycle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace swarmtrack {

const char* to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::Strong: return "strong";
    case TrackStatus::Weak: return "weak";
    case TrackStatus::New: return "new";
  }
  return "unknown";
}

void push_history(std::deque<BBox>& history, const BBox& state, int capacity) {
  history.push_back(state);
  while (static_cast<int>(history.size()) > std::max(capacity, 1)) history.pop_front();
}

Track update_strong(Track track, const Detection& det, const TrackerConfig& cfg) {
  const double d_o = cfg.gamma_o * diag(track.state);
  if (center_distance(track.state, det.box) >= d_o) {
    track.state = {0.5 * (track.state.u + det.box.u), 0.5 * (track.state.v + det.box.v),
                   0.5 * (track.state.w + det.box.w), 0.5 * (track.state.h + det.box.h)};
  } else {
    track.state = det.box;
  }
  track.penalty = 0.0;
  track.age = 0.0;
  track.misses = 0;
  track.status = TrackStatus::Strong;
  push_history(track.history, track.state, cfg.history);
  return track;
}

Track create_track(const Detection& det, TrackId id, const TrackerConfig& cfg) {
  Track t;
  t.id = id;
  t.state = det.box;
  t.status = TrackStatus::New;
  push_history(t.history, det.box, cfg.history);
  t.gbest = {det.box, {}, 1.0};
  return t;
}

Track penalty_age_update(Track track, double f, bool has_strong_neighbour, double delta_e,
                         const TrackerConfig& cfg) {
  const double sigma = cfg.age_max / 6.0;
  const double l = static_cast<double>(track.misses);
  const double delta = (1.0 - std::exp(-(l * l) / (2.0 * sigma * sigma))) * (1.0 - f + delta_e);
  double zeta = 1.0;
  if (has_strong_neighbour) {
    const double s = cfg.rho_re - f + delta_e;
    zeta = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
  }
  track.penalty = std::clamp(track.penalty + zeta * delta, 0.0, 1.0);
  track.age = std::clamp(track.age + zeta * delta * cfg.age_max, 0.0, cfg.age_max);
  return track;
}

double entrance_penalty(const BBox& b, const TrackerConfig& cfg) {
  for (const EntranceArea& e : cfg.entrances) {
    if (e.contains(b.u, b.v)) return cfg.entrance_penalty;
  }
  return 0.0;
}

namespace {

double component(const BBox& b, int d) {
  switch (d) {
    case 0: return b.u;
    case 1: return b.v;
    case 2: return b.w;
    default: return b.h;
  }
}

template <typename T>
T median_of(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  const std::size_t q = values.size();
  if (q % 2 == 1) return values[q / 2];
  return 0.5 * (values[q / 2 - 1] + values[q / 2]);
}

}  // namespace

Velocity4 trend_velocity(const std::deque<BBox>& history, const SlopeWindow& win) {
  if (history.empty()) return {};
  const std::size_t n = std::min(history.size(), static_cast<std::size_t>(std::max(win.history, 1)));
  const std::size_t first = history.size() - n;
  const BBox& latest = history.back();
  const std::array<double, 4> tau{win.tau_scale * diag(latest), win.tau_scale * diag(latest),
                                  win.tau_scale * latest.w, win.tau_scale * latest.h};
  std::array<double, 4> out{};
  std::vector<double> slopes;
  for (int d = 0; d < 4; ++d) {
    slopes.clear();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n && j <= i + static_cast<std::size_t>(win.frames); ++j) {
        const double g = (component(history[first + j], d) - component(history[first + i], d)) /
                         static_cast<double>(j - i);
        if (std::abs(g) <= tau[d]) slopes.push_back(g);
      }
    }
    out[d] = slopes.empty() ? 0.0 : median_of(slopes);
  }
  return {out[0], out[1], out[2], out[3]};
}

WeakUpdate update_weak(const Track& track, const SwarmResult& swarm, std::span<const Track> tracks_now,
                       const TrackerConfig& cfg) {
  std::vector<Neighbour> nbrs = swarm.neighbours;
  if (nbrs.empty()) nbrs = neighbours(track, tracks_now, cfg.expanded_radius_scale);

  // Trusted neighbours are those matched this frame; their state now
  // follows the detection and the previous one is in their history.
  std::vector<double> now_u, now_v, prev_u, prev_v, vel_u, vel_v;
  for (const Neighbour& n : nbrs) {
    const auto it = std::find_if(tracks_now.begin(), tracks_now.end(), [&](const Track& t) { return t.id == n.id; });
    if (it == tracks_now.end() || it->status != TrackStatus::Strong) continue;
    const BBox& prev = it->history.size() >= 2 ? it->history[it->history.size() - 2] : it->state;
    now_u.push_back(it->state.u);
    now_v.push_back(it->state.v);
    prev_u.push_back(prev.u);
    prev_v.push_back(prev.v);
    vel_u.push_back(it->vel.du);
    vel_v.push_back(it->vel.dv);
  }

  WeakUpdate out{track, WeakBranch::Frozen, !now_u.empty()};
  Track& t = out.track;
  const double tau_v = cfg.tau_v_scale * diag(track.state);
  const double own_u = track.vel.du;
  const double own_v = track.vel.dv;
  const double own_speed = std::hypot(own_u, own_v);

  double nbr_vu = 0.0, nbr_vv = 0.0;
  if (!now_u.empty()) {
    nbr_vu = median_of(vel_u);
    nbr_vv = median_of(vel_v);
  }
  const double nbr_speed = std::hypot(nbr_vu, nbr_vv);

  if (now_u.empty() || nbr_speed < tau_v) {
    if (own_speed >= tau_v) {
      t.state.u += own_u;
      t.state.v += own_v;
      out.branch = WeakBranch::OwnVelocity;
    }
  } else {
    const double delta = own_speed > 0.0 ? (own_u * nbr_vu + own_v * nbr_vv) / (own_speed * nbr_speed) : 0.0;
    if (delta >= cfg.delta_d) {
      t.state.u = median_of(now_u) - median_of(prev_u) + track.state.u;
      t.state.v = median_of(now_v) - median_of(prev_v) + track.state.v;
      out.branch = WeakBranch::CoMoving;
    } else {
      const double dx = track.state.u - median_of(now_u);
      const double dy = track.state.v - median_of(now_v);
      const double gap = std::hypot(dx, dy);
      double vo_u = own_u;
      double vo_v = own_v;
      if (gap > 0.0) {
        // Unit vector perpendicular to the offset, turned against the
        // neighbours' motion.
        double nu = -dy / gap;
        double nv = dx / gap;
        if (nu * nbr_vu + nv * nbr_vv > 0.0) {
          nu = -nu;
          nv = -nv;
        }
        const double eps_o = cfg.eps_s * (own_speed / gap) * diag(track.state);
        vo_u += eps_o * nu;
        vo_v += eps_o * nv;
      }
      const double xo_u = track.state.u + vo_u;
      const double xo_v = track.state.v + vo_v;
      t.state.u = (1.0 - cfg.sigma_g) * xo_u + cfg.sigma_g * swarm.gbest.state.u;
      t.state.v = (1.0 - cfg.sigma_g) * xo_v + cfg.sigma_g * swarm.gbest.state.v;
      out.branch = WeakBranch::Avoidance;
    }
  }

  t.status = TrackStatus::Weak;
  if (cfg.weak_history) push_history(t.history, t.state, cfg.history);
  return out;
}

std::vector<Track> prune(std::vector<Track> tracks, double age_max) {
  std::erase_if(tracks, [&](const Track& t) { return !(t.age < age_max); });
  return tracks;
}

}  // namespace swarmtrack
