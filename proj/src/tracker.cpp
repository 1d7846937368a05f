#include "swarmtrack/tracker.hpp"

#include <cmath>
#include <sstream>

#include "swarmtrack/lifecycle.hpp"
#include "swarmtrack/parallel.hpp"
#include "swarmtrack/particles.hpp"
#include "swarmtrack/swarm.hpp"

namespace swarmtrack {

Tracker::Tracker(TrackerConfig cfg) : cfg_(std::move(cfg)) {
  if (auto v = validate_config(cfg_); !v.empty()) throw ConfigError(std::move(v));
}

void Tracker::reset() {
  tracks_.clear();
  next_id_ = 1;
  last_frame_.reset();
}

namespace {

void check_input(const FrameInput& in, const std::optional<long>& last) {
  if (last && in.frame_index <= *last) {
    std::ostringstream os;
    os << "frame " << in.frame_index << " does not follow frame " << *last;
    throw InputError(os.str());
  }
  for (std::size_t k = 0; k < in.detections.size(); ++k) {
    const Detection& d = in.detections[k];
    if (!is_valid(d.box) || !(d.conf >= 0.0 && d.conf <= 1.0)) {
      std::ostringstream os;
      os << "frame " << in.frame_index << ", detection " << k << ": invalid record (u=" << d.box.u
         << " v=" << d.box.v << " w=" << d.box.w << " h=" << d.box.h << " conf=" << d.conf << ")";
      throw InputError(os.str());
    }
  }
}

}  // namespace

std::vector<TrackOutput> Tracker::step(const FrameInput& input) {
  check_input(input, last_frame_);
  last_frame_ = input.frame_index;
  const auto frame = static_cast<std::uint64_t>(input.frame_index);

  // Particle sampling and PSO against a frame-start neighbour snapshot.
  std::vector<SwarmResult> swarms(tracks_.size());
  parallel_for(tracks_.size(), cfg_.workers, [&](std::size_t i) {
    const Track& t = tracks_[i];
    const StreamKey key{cfg_.seed, frame, t.id};
    auto nbrs = neighbours(t, tracks_, cfg_.radius_scale);
    SwarmResult r = optimize(t, sample_particles(t, cfg_, key), input.image, std::move(nbrs), cfg_, key);
    r.particles = resample(std::move(r.particles), r.gbest, t.state, cfg_, key);
    swarms[i] = std::move(r);
  });
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    tracks_[i].particles = swarms[i].particles;
    tracks_[i].gbest = {swarms[i].gbest.state, swarms[i].gbest.vel, swarms[i].gbest_history_fitness};
  }

  // Association.
  const CostMatrix cost = build_cost_matrix(tracks_, input.detections, cfg_);
  const Classification cls =
      classify(solve_gated_assignment(cost, cfg_.gate), input.detections, cfg_.conf_new);

  for (const auto& [ti, dj] : cls.strong) tracks_[ti] = update_strong(std::move(tracks_[ti]), input.detections[dj], cfg_);

  // Weak tracks read the post-strong-update snapshot.
  const std::vector<Track> snapshot = tracks_;
  std::vector<Track> weak_updated(cls.weak.size());
  parallel_for(cls.weak.size(), cfg_.workers, [&](std::size_t k) {
    const std::size_t ti = cls.weak[k];
    WeakUpdate wu = update_weak(snapshot[ti], swarms[ti], snapshot, cfg_);
    wu.track.misses += 1;
    const double delta_e = entrance_penalty(wu.track.state, cfg_);
    weak_updated[k] = penalty_age_update(std::move(wu.track), swarms[ti].gbest_history_fitness,
                                         wu.has_strong_neighbour, delta_e, cfg_);
  });
  for (std::size_t k = 0; k < cls.weak.size(); ++k) tracks_[cls.weak[k]] = std::move(weak_updated[k]);

  for (std::size_t dj : cls.births) tracks_.push_back(create_track(input.detections[dj], next_id_++, cfg_));

  const SlopeWindow win = SlopeWindow::from(cfg_);
  for (Track& t : tracks_) t.vel = trend_velocity(t.history, win);

  tracks_ = prune(std::move(tracks_), cfg_.age_max);

  std::vector<TrackOutput> out;
  out.reserve(tracks_.size());
  for (const Track& t : tracks_) out.push_back({t.id, t.state, t.status, t.penalty, t.age});
  return out;
}

}  // namespace swarmtrack
