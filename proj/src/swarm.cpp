#include "swarmtrack/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "swarmtrack/rng.hpp"

namespace swarmtrack {

FitnessWeights FitnessWeights::from(const TrackerConfig& c) {
  return {c.sigma_h, c.sigma_p, c.sigma_i, c.lambda_s, c.lambda_m, c.xi_p, c.xi_v};
}

std::vector<Neighbour> neighbours(const Track& target, std::span<const Track> all_tracks, double radius_scale) {
  const double radius = radius_scale * diag(target.state);
  std::vector<Neighbour> out;
  for (const Track& t : all_tracks) {
    if (t.id == target.id) continue;
    if (center_distance(t.state, target.state) <= radius) out.push_back({t.id, t.state, t.vel, t.status});
  }
  std::sort(out.begin(), out.end(), [](const Neighbour& a, const Neighbour& b) { return a.id < b.id; });
  return out;
}

double pair_fitness(const Observation& candidate, const Observation& reference, double d_om, double lambda_s,
                    double lambda_m) {
  const double f_m = 1.0 - std::min(center_distance(candidate.box, reference.box), d_om) / d_om;
  if (candidate.feature == nullptr || reference.feature == nullptr) return std::clamp(f_m, 0.0, 1.0);
  const double f_s = cosine_sim(*candidate.feature, *reference.feature);
  return std::clamp(lambda_s * f_s + lambda_m * f_m, 0.0, 1.0);
}

double social_fitness(const Particle& p, std::span<const Neighbour> nbrs, double eps_nei, double v_s_max,
                      const FitnessWeights& w) {
  if (nbrs.empty()) return 1.0;
  double pos = 0.0;
  double vel = 0.0;
  for (const Neighbour& n : nbrs) {
    pos += std::min(center_distance(p.state, n.state), 2 * eps_nei) / (2 * eps_nei);
    vel += std::min(std::hypot(p.vel.du - n.vel.du, p.vel.dv - n.vel.dv), v_s_max) / v_s_max;
  }
  const double count = static_cast<double>(nbrs.size());
  return std::clamp(w.xi_p * pos / count + w.xi_v * vel / count, 0.0, 1.0);
}

namespace {

constexpr double kMinSize = 1e-3;

// Descriptor cache keyed by the integer-rounded box; features are computed
// at the rounded box so a cache hit returns exactly what a miss would.
class FeatureCache {
 public:
  FeatureCache(const GrayImage* frame, const HogConfig& cfg) : frame_(frame), cfg_(cfg) {}

  const FeatureVec* get(const BBox& b) {
    if (frame_ == nullptr) return nullptr;
    const auto key = std::make_tuple(std::lround(b.u), std::lround(b.v), std::max(1L, std::lround(b.w)),
                                     std::max(1L, std::lround(b.h)));
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      const BBox rounded{static_cast<double>(std::get<0>(key)), static_cast<double>(std::get<1>(key)),
                         static_cast<double>(std::get<2>(key)), static_cast<double>(std::get<3>(key))};
      it = cache_.emplace(key, extract_hog(*frame_, rounded, cfg_)).first;
    }
    return it->second ? &*it->second : nullptr;
  }

 private:
  const GrayImage* frame_;
  const HogConfig& cfg_;
  std::map<std::tuple<long, long, long, long>, std::optional<FeatureVec>> cache_;
};

}  // namespace

SwarmResult optimize(const Track& target, std::vector<Particle> particles, const GrayImage* frame,
                     std::vector<Neighbour> nbrs, const TrackerConfig& cfg, const StreamKey& key) {
  const FitnessWeights w = FitnessWeights::from(cfg);
  // Frameless mode switches the appearance term off for the whole frame.
  const GrayImage* image = cfg.frameless ? nullptr : frame;
  FeatureCache features(image, cfg.hog);

  const BBox& ref = target.state;
  const Observation ref_obs{ref, features.get(ref)};
  const double d_ref = diag(ref);
  const double eps_nei = cfg.radius_scale * d_ref;
  const double v_cap = social_velocity_cap(ref, cfg);
  const NoiseBounds nb = noise_bounds(ref, cfg);

  auto history = [&](const BBox& b) {
    return pair_fitness({b, features.get(b)}, ref_obs, d_ref, w.lambda_s, w.lambda_m);
  };
  auto evaluate = [&](const Particle& p, const BBox& previous, bool first) {
    const double f_h = history(p.state);
    const double f_p = first ? 1.0
                             : pair_fitness({p.state, features.get(p.state)}, {previous, features.get(previous)},
                                            diag(previous), w.lambda_s, w.lambda_m);
    const double f_i = social_fitness(p, nbrs, eps_nei, v_cap, w);
    return std::clamp(w.sigma_h * f_h + w.sigma_p * f_p + w.sigma_i * f_i, 0.0, 1.0);
  };

  std::size_t best = 0;
  for (std::size_t s = 0; s < particles.size(); ++s) {
    Particle& p = particles[s];
    p.fitness = evaluate(p, p.state, true);
    p.pbest_state = p.state;
    p.pbest_fitness = p.fitness;
    p.step = {};
    if (p.fitness > particles[best].fitness) best = s;
  }
  BBox gbest_state = particles[best].pbest_state;
  double gbest_fitness = particles[best].pbest_fitness;
  Particle gbest = particles[best];

  auto clamp_step = [](double x, double bound) { return std::clamp(x, -bound, bound); };
  for (int it = 0; it < cfg.pso_iterations; ++it) {
    for (std::size_t s = 0; s < particles.size(); ++s) {
      Particle& p = particles[s];
      Rng rng(key.seed, key.frame, static_cast<std::uint64_t>(key.track),
              (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint64_t>(it), Rng::Purpose::Pso);
      auto pull = [&](double step, double x, double pb, double gb, double bound) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        return clamp_step(cfg.pso_inertia * step + cfg.pso_c1 * r1 * (pb - x) + cfg.pso_c2 * r2 * (gb - x), bound);
      };
      p.step.du = pull(p.step.du, p.state.u, p.pbest_state.u, gbest_state.u, nb.state.du);
      p.step.dv = pull(p.step.dv, p.state.v, p.pbest_state.v, gbest_state.v, nb.state.dv);
      p.step.dw = pull(p.step.dw, p.state.w, p.pbest_state.w, gbest_state.w, nb.state.dw);
      p.step.dh = pull(p.step.dh, p.state.h, p.pbest_state.h, gbest_state.h, nb.state.dh);

      const BBox previous = p.state;
      p.state.u += p.step.du;
      p.state.v += p.step.dv;
      p.state.w = std::max(p.state.w + p.step.dw, kMinSize);
      p.state.h = std::max(p.state.h + p.step.dh, kMinSize);
      p.fitness = evaluate(p, previous, false);
      if (p.fitness > p.pbest_fitness) {
        p.pbest_fitness = p.fitness;
        p.pbest_state = p.state;
      }
      if (p.fitness > gbest_fitness) {
        gbest_fitness = p.fitness;
        gbest_state = p.state;
        gbest = p;
      }
    }
  }

  SwarmResult result;
  result.gbest = gbest;
  result.gbest.state = gbest_state;
  result.gbest.fitness = gbest_fitness;
  result.gbest_history_fitness = history(gbest_state);
  result.particles = std::move(particles);
  result.neighbours = std::move(nbrs);
  return result;
}

}  // namespace swarmtrack
