#include "swarmtrack/particles.hpp"

#include <algorithm>

#include "swarmtrack/rng.hpp"

namespace swarmtrack {

namespace {

constexpr double kMinSize = 1e-3;

double symmetric(Rng& rng, double bound) { return bound > 0.0 ? rng.uniform(-bound, bound) : 0.0; }

}  // namespace

std::vector<Particle> sample_particles(const Track& track, const TrackerConfig& cfg, const StreamKey& key) {
  if (cfg.particles < 1) throw ConfigError({"particles must be >= 1"});
  const NoiseBounds nb = noise_bounds(track.state, cfg);
  const bool from_particles = cfg.seed_source == SeedSource::PriorParticles && !track.particles.empty();

  std::vector<Particle> out(static_cast<std::size_t>(cfg.particles));
  for (std::size_t s = 0; s < out.size(); ++s) {
    BBox x_prev = track.state;
    Velocity4 v_prev = track.vel;
    if (from_particles) {
      const Particle& seed = track.particles[s % track.particles.size()];
      x_prev = seed.state;
      v_prev = seed.vel;
    }
    v_prev.du = std::clamp(v_prev.du, -nb.vmax.du, nb.vmax.du);
    v_prev.dv = std::clamp(v_prev.dv, -nb.vmax.dv, nb.vmax.dv);
    v_prev.dw = std::clamp(v_prev.dw, -nb.vmax.dw, nb.vmax.dw);
    v_prev.dh = std::clamp(v_prev.dh, -nb.vmax.dh, nb.vmax.dh);

    Rng rng(key.seed, key.frame, static_cast<std::uint64_t>(key.track), s, Rng::Purpose::Sample);
    Velocity4 v{
        v_prev.du + cfg.eps_v * symmetric(rng, nb.velocity.du),
        v_prev.dv + cfg.eps_v * symmetric(rng, nb.velocity.dv),
        v_prev.dw + cfg.eps_v * symmetric(rng, nb.velocity.dw),
        v_prev.dh + cfg.eps_v * symmetric(rng, nb.velocity.dh),
    };
    const double gain = cfg.lambda_x * cfg.eps_x;
    BBox x{
        x_prev.u + cfg.lambda_v * v.du + gain * symmetric(rng, nb.state.du),
        x_prev.v + cfg.lambda_v * v.dv + gain * symmetric(rng, nb.state.dv),
        x_prev.w + cfg.lambda_v * v.dw + gain * symmetric(rng, nb.state.dw),
        x_prev.h + cfg.lambda_v * v.dh + gain * symmetric(rng, nb.state.dh),
    };
    x.w = std::max(x.w, kMinSize);
    x.h = std::max(x.h, kMinSize);

    Particle& p = out[s];
    p.state = x;
    p.vel = v;
    p.pbest_state = x;
  }
  return out;
}

std::vector<Particle> resample(std::vector<Particle> particles, const Particle& gbest, const BBox& reference,
                               const TrackerConfig& cfg, const StreamKey& key) {
  if (cfg.resample == ResampleMode::Discard) {
    std::erase_if(particles, [&](const Particle& p) { return p.fitness < cfg.rho_discard; });
    if (particles.empty()) particles.push_back(gbest);
    return particles;
  }

  const NoiseBounds nb = noise_bounds(reference, cfg);
  constexpr double kJitter = 0.05;
  for (std::size_t s = 0; s < particles.size(); ++s) {
    Particle& p = particles[s];
    if (p.fitness >= cfg.rho_discard) continue;
    Rng rng(key.seed, key.frame, static_cast<std::uint64_t>(key.track), s, Rng::Purpose::Resample);
    p = gbest;
    p.state.u += symmetric(rng, kJitter * nb.state.du);
    p.state.v += symmetric(rng, kJitter * nb.state.dv);
    p.state.w = std::max(p.state.w + symmetric(rng, kJitter * nb.state.dw), kMinSize);
    p.state.h = std::max(p.state.h + symmetric(rng, kJitter * nb.state.dh), kMinSize);
    p.pbest_state = p.state;
  }
  return particles;
}

}  // namespace swarmtrack
