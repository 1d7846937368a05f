#include "swarmtrack/config.hpp"

#include <cmath>
#include <sstream>

namespace swarmtrack {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream os;
  os << "invalid tracker configuration:";
  for (const auto& p : parts) os << "\n  " << p;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> validate_config(const TrackerConfig& c) {
  std::vector<std::string> out;
  auto simplex = [&](std::initializer_list<double> terms, const char* names) {
    double sum = 0.0;
    bool negative = false;
    for (double t : terms) {
      sum += t;
      negative = negative || t < 0.0 || !std::isfinite(t);
    }
    if (negative || std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream os;
      os << names << " must be non-negative and sum to 1 (sum = " << sum << ")";
      out.push_back(os.str());
    }
  };
  auto unit = [&](double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) out.push_back(std::string(name) + " must lie in [0, 1]");
  };
  auto non_negative = [&](double x, const char* name) {
    if (!(x >= 0.0) || !std::isfinite(x)) out.push_back(std::string(name) + " must be finite and >= 0");
  };
  auto positive = [&](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) out.push_back(std::string(name) + " must be finite and > 0");
  };

  simplex({c.sigma_h, c.sigma_p, c.sigma_i}, "sigma_h + sigma_p + sigma_i");
  simplex({c.lambda_s, c.lambda_m}, "lambda_s + lambda_m");
  simplex({c.xi_p, c.xi_v}, "xi_p + xi_v");
  simplex({c.lambda_p, c.lambda_d, c.lambda_h}, "lambda_p + lambda_d + lambda_h");

  if (c.particles < 1) out.push_back("particles must be >= 1");
  if (c.pso_iterations < 0) out.push_back("pso_iterations must be >= 0");
  if (c.window <= 0 || c.window > c.history) out.push_back("window must satisfy 0 < window <= history");
  if (c.history < 1) out.push_back("history must be >= 1");
  positive(c.age_max, "age_max");
  if (c.workers < 1) out.push_back("workers must be >= 1");

  unit(c.gate, "gate");
  unit(c.conf_new, "conf_new");
  unit(c.rho_re, "rho_re");
  unit(c.rho_discard, "rho_discard");
  unit(c.delta_d, "delta_d");
  unit(c.sigma_g, "sigma_g");

  non_negative(c.eps_v, "eps_v");
  non_negative(c.lambda_v, "lambda_v");
  non_negative(c.lambda_x, "lambda_x");
  non_negative(c.eps_x, "eps_x");
  non_negative(c.alpha_x, "alpha_x");
  non_negative(c.alpha_s, "alpha_s");
  non_negative(c.alpha_v, "alpha_v");
  non_negative(c.alpha_sv, "alpha_sv");
  positive(c.beta, "beta");
  non_negative(c.beta_s, "beta_s");
  non_negative(c.pso_inertia, "pso_inertia");
  non_negative(c.pso_c1, "pso_c1");
  non_negative(c.pso_c2, "pso_c2");
  positive(c.radius_scale, "radius_scale");
  positive(c.expanded_radius_scale, "expanded_radius_scale");
  non_negative(c.gamma_o, "gamma_o");
  non_negative(c.tau_v_scale, "tau_v_scale");
  non_negative(c.eps_s, "eps_s");
  non_negative(c.entrance_penalty, "entrance_penalty");
  positive(c.tau_scale, "tau_scale");
  for (const auto& e : c.entrances) {
    if (!(e.w > 0.0 && e.h > 0.0)) out.push_back("entrance areas must have positive size");
  }

  const auto& h = c.hog;
  if (h.cell_size < 1 || h.patch_size < 1 || h.patch_size % h.cell_size != 0) {
    out.push_back("hog_patch must be a positive multiple of hog_cell");
  } else if (h.block_size < 1 || h.block_size > h.patch_size / h.cell_size) {
    out.push_back("hog_block must lie in [1, hog_patch / hog_cell]");
  }
  if (h.bins < 1) out.push_back("hog_bins must be >= 1");
  positive(h.clip, "hog_clip");
  return out;
}

NoiseBounds noise_bounds(const BBox& ref, const TrackerConfig& c) {
  return {
      {c.alpha_x * ref.w, c.alpha_x * ref.h, c.alpha_s * ref.w, c.alpha_s * ref.h},
      {c.alpha_v * ref.w, c.alpha_v * ref.h, c.alpha_sv * ref.w, c.alpha_sv * ref.h},
      {c.beta * ref.w, c.beta * ref.h, c.beta_s * ref.w, c.beta_s * ref.h},
  };
}

double social_velocity_cap(const BBox& ref, const TrackerConfig& c) {
  const auto nb = noise_bounds(ref, c);
  return std::hypot(nb.vmax.du + nb.velocity.du, nb.vmax.dv + nb.velocity.dv);
}

}  // namespace swarmtrack
