#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmtrack/appearance.hpp"
#include "swarmtrack/geometry.hpp"

namespace swarmtrack {

enum class ResampleMode { Replace, Discard };
enum class SeedSource { OptimalState, PriorParticles };

/// Axis-aligned entrance area in top-left format. Weak tracks centered
/// inside one receive the entrance penalty.
struct EntranceArea {
  double left = 0.0;
  double top = 0.0;
  double w = 0.0;
  double h = 0.0;

  bool contains(double u, double v) const { return u >= left && u <= left + w && v >= top && v <= top + h; }
};

/// Every tuning scalar of the tracker. Defaults are the documented values;
/// the config-file key for each field is given in the trailing comment.
struct TrackerConfig {
  // Particle sampling.
  int particles = 8;                // particles
  double eps_v = 1.0;               // eps_v
  double lambda_v = 1.0;            // lambda_v
  double lambda_x = 1.0;            // lambda_x
  double eps_x = 1.0;               // eps_x
  double alpha_x = 0.10;            // alpha_x   position noise, fraction of (w, h)
  double alpha_s = 0.02;            // alpha_s   size noise
  double alpha_v = 0.05;            // alpha_v   center velocity noise
  double alpha_sv = 0.01;           // alpha_sv  size velocity noise
  double beta = 0.5;                // beta      center velocity cap
  double beta_s = 0.05;             // beta_s    size velocity cap
  SeedSource seed_source = SeedSource::OptimalState;  // seed_source = optimal | particles

  // PSO.
  int pso_iterations = 5;           // pso_iterations
  double pso_inertia = 0.6;         // pso_inertia
  double pso_c1 = 1.5;              // pso_c1
  double pso_c2 = 1.5;              // pso_c2
  double sigma_h = 0.2;             // sigma_h
  double sigma_p = 0.5;             // sigma_p
  double sigma_i = 0.3;             // sigma_i
  double lambda_s = 0.4;            // lambda_s
  double lambda_m = 0.6;            // lambda_m
  double xi_p = 0.7;                // xi_p
  double xi_v = 0.3;                // xi_v
  double radius_scale = 1.0;        // radius_scale
  double expanded_radius_scale = 2.0;  // expanded_radius_scale
  ResampleMode resample = ResampleMode::Replace;  // resample = replace | discard
  double rho_discard = 0.5;         // rho_discard

  // Association.
  double lambda_p = 0.6;            // lambda_p
  double lambda_d = 0.2;            // lambda_d
  double lambda_h = 0.2;            // lambda_h
  double gate = 0.3;                // gate
  double conf_new = 0.6;            // conf_new

  // Lifecycle.
  double gamma_o = 0.25;            // gamma_o
  double tau_v_scale = 0.02;        // tau_v_scale
  double delta_d = 0.9;             // delta_d
  double sigma_g = 0.5;             // sigma_g
  double eps_s = 0.1;               // eps_s
  double rho_re = 0.5;              // rho_re
  double entrance_penalty = 0.0;    // entrance_penalty
  std::vector<EntranceArea> entrances;  // entrance = left,top,w,h (repeatable)
  double age_max = 30.0;            // age_max
  int history = 10;                 // history
  int window = 5;                   // window
  double tau_scale = 0.5;           // tau_scale
  bool weak_history = true;         // weak_history

  // Engine.
  std::uint64_t seed = 0;           // seed
  bool frameless = false;           // frameless
  int workers = 1;                  // workers
  HogConfig hog;                    // hog_patch, hog_cell, hog_bins, hog_block, hog_clip
};

/// Every violated constraint, one message per violation; empty when valid.
std::vector<std::string> validate_config(const TrackerConfig& cfg);

/// Thrown for invalid configurations; what() lists every violation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Scale-adaptive sampling bounds derived from a reference box.
struct NoiseBounds {
  Velocity4 state;     // U_X^max, per component
  Velocity4 velocity;  // U_V^max
  Velocity4 vmax;      // V^max
};

NoiseBounds noise_bounds(const BBox& ref, const TrackerConfig& cfg);

/// Scalar velocity-gap cap of the social term: magnitude of the center
/// components of V^max + U_V^max.
double social_velocity_cap(const BBox& ref, const TrackerConfig& cfg);

}  // namespace swarmtrack
