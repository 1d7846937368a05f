#include "swarmtrack/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "swarmtrack/mot_io.hpp"

namespace swarmtrack {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
};

// Splits text into key/value lines; throws ParseError on lines without '='.
std::vector<Line> read_lines(std::istream& in, const std::string& source) {
  std::vector<Line> out;
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, n, "expected 'key = value'");
    out.push_back({n, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return out;
}

class ValueReader {
 public:
  ValueReader(const std::string& source, const Line& line) : source_(source), line_(line) {}

  double number(const std::string& text) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
      fail("'" + text + "' is not a number");
    }
    return v;
  }
  double number() const { return number(line_.value); }

  long integer() const {
    const double v = number();
    if (v != std::floor(v)) fail("expected an integer");
    return static_cast<long>(v);
  }

  bool boolean() const {
    const std::string& v = line_.value;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail("expected true or false");
    return false;
  }

  std::vector<double> list(std::size_t expected) const {
    std::vector<double> out;
    std::stringstream ss(line_.value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(trim(item)));
    if (out.size() != expected) fail("expected " + std::to_string(expected) + " comma-separated numbers");
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, line_.number, line_.key + ": " + what);
  }

  const std::string& text() const { return line_.value; }

 private:
  const std::string& source_;
  const Line& line_;
};

using Setter = std::function<void(TrackerConfig&, const ValueReader&)>;

const std::unordered_map<std::string, Setter>& config_keys() {
  auto real = [](double TrackerConfig::*field) {
    return Setter([field](TrackerConfig& c, const ValueReader& r) { c.*field = r.number(); });
  };
  auto whole = [](int TrackerConfig::*field) {
    return Setter([field](TrackerConfig& c, const ValueReader& r) { c.*field = static_cast<int>(r.integer()); });
  };
  static const std::unordered_map<std::string, Setter> keys = {
      {"particles", whole(&TrackerConfig::particles)},
      {"eps_v", real(&TrackerConfig::eps_v)},
      {"lambda_v", real(&TrackerConfig::lambda_v)},
      {"lambda_x", real(&TrackerConfig::lambda_x)},
      {"eps_x", real(&TrackerConfig::eps_x)},
      {"alpha_x", real(&TrackerConfig::alpha_x)},
      {"alpha_s", real(&TrackerConfig::alpha_s)},
      {"alpha_v", real(&TrackerConfig::alpha_v)},
      {"alpha_sv", real(&TrackerConfig::alpha_sv)},
      {"beta", real(&TrackerConfig::beta)},
      {"beta_s", real(&TrackerConfig::beta_s)},
      {"seed_source",
       [](TrackerConfig& c, const ValueReader& r) {
         if (r.text() == "optimal") c.seed_source = SeedSource::OptimalState;
         else if (r.text() == "particles") c.seed_source = SeedSource::PriorParticles;
         else r.fail("expected 'optimal' or 'particles'");
       }},
      {"pso_iterations", whole(&TrackerConfig::pso_iterations)},
      {"pso_inertia", real(&TrackerConfig::pso_inertia)},
      {"pso_c1", real(&TrackerConfig::pso_c1)},
      {"pso_c2", real(&TrackerConfig::pso_c2)},
      {"sigma_h", real(&TrackerConfig::sigma_h)},
      {"sigma_p", real(&TrackerConfig::sigma_p)},
      {"sigma_i", real(&TrackerConfig::sigma_i)},
      {"lambda_s", real(&TrackerConfig::lambda_s)},
      {"lambda_m", real(&TrackerConfig::lambda_m)},
      {"xi_p", real(&TrackerConfig::xi_p)},
      {"xi_v", real(&TrackerConfig::xi_v)},
      {"radius_scale", real(&TrackerConfig::radius_scale)},
      {"expanded_radius_scale", real(&TrackerConfig::expanded_radius_scale)},
      {"resample",
       [](TrackerConfig& c, const ValueReader& r) {
         if (r.text() == "replace") c.resample = ResampleMode::Replace;
         else if (r.text() == "discard") c.resample = ResampleMode::Discard;
         else r.fail("expected 'replace' or 'discard'");
       }},
      {"rho_discard", real(&TrackerConfig::rho_discard)},
      {"lambda_p", real(&TrackerConfig::lambda_p)},
      {"lambda_d", real(&TrackerConfig::lambda_d)},
      {"lambda_h", real(&TrackerConfig::lambda_h)},
      {"gate", real(&TrackerConfig::gate)},
      {"conf_new", real(&TrackerConfig::conf_new)},
      {"gamma_o", real(&TrackerConfig::gamma_o)},
      {"tau_v_scale", real(&TrackerConfig::tau_v_scale)},
      {"delta_d", real(&TrackerConfig::delta_d)},
      {"sigma_g", real(&TrackerConfig::sigma_g)},
      {"eps_s", real(&TrackerConfig::eps_s)},
      {"rho_re", real(&TrackerConfig::rho_re)},
      {"entrance_penalty", real(&TrackerConfig::entrance_penalty)},
      {"entrance",
       [](TrackerConfig& c, const ValueReader& r) {
         const auto v = r.list(4);
         c.entrances.push_back({v[0], v[1], v[2], v[3]});
       }},
      {"age_max", real(&TrackerConfig::age_max)},
      {"history", whole(&TrackerConfig::history)},
      {"window", whole(&TrackerConfig::window)},
      {"tau_scale", real(&TrackerConfig::tau_scale)},
      {"weak_history", [](TrackerConfig& c, const ValueReader& r) { c.weak_history = r.boolean(); }},
      {"seed",
       [](TrackerConfig& c, const ValueReader& r) {
         const long v = r.integer();
         if (v < 0) r.fail("expected a non-negative integer");
         c.seed = static_cast<std::uint64_t>(v);
       }},
      {"frameless", [](TrackerConfig& c, const ValueReader& r) { c.frameless = r.boolean(); }},
      {"workers", whole(&TrackerConfig::workers)},
      {"hog_patch", [](TrackerConfig& c, const ValueReader& r) { c.hog.patch_size = static_cast<int>(r.integer()); }},
      {"hog_cell", [](TrackerConfig& c, const ValueReader& r) { c.hog.cell_size = static_cast<int>(r.integer()); }},
      {"hog_bins", [](TrackerConfig& c, const ValueReader& r) { c.hog.bins = static_cast<int>(r.integer()); }},
      {"hog_block", [](TrackerConfig& c, const ValueReader& r) { c.hog.block_size = static_cast<int>(r.integer()); }},
      {"hog_clip", [](TrackerConfig& c, const ValueReader& r) { c.hog.clip = r.number(); }},
  };
  return keys;
}

}  // namespace

TrackerConfig parse_config_text(std::istream& in, const std::string& source) {
  TrackerConfig cfg;
  const auto& keys = config_keys();
  for (const Line& line : read_lines(in, source)) {
    const auto it = keys.find(line.key);
    if (it == keys.end()) throw ParseError(source, line.number, "unknown key '" + line.key + "'");
    it->second(cfg, ValueReader(source, line));
  }
  if (auto v = validate_config(cfg); !v.empty()) throw ConfigError(std::move(v));
  return cfg;
}

TrackerConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_config_text(in, path.string());
}

void write_config(std::ostream& out, const TrackerConfig& c) {
  out.precision(15);
  out << "particles = " << c.particles << "\n"
      << "eps_v = " << c.eps_v << "\nlambda_v = " << c.lambda_v << "\nlambda_x = " << c.lambda_x
      << "\neps_x = " << c.eps_x << "\nalpha_x = " << c.alpha_x << "\nalpha_s = " << c.alpha_s
      << "\nalpha_v = " << c.alpha_v << "\nalpha_sv = " << c.alpha_sv << "\nbeta = " << c.beta
      << "\nbeta_s = " << c.beta_s
      << "\nseed_source = " << (c.seed_source == SeedSource::OptimalState ? "optimal" : "particles")
      << "\npso_iterations = " << c.pso_iterations << "\npso_inertia = " << c.pso_inertia
      << "\npso_c1 = " << c.pso_c1 << "\npso_c2 = " << c.pso_c2 << "\nsigma_h = " << c.sigma_h
      << "\nsigma_p = " << c.sigma_p << "\nsigma_i = " << c.sigma_i << "\nlambda_s = " << c.lambda_s
      << "\nlambda_m = " << c.lambda_m << "\nxi_p = " << c.xi_p << "\nxi_v = " << c.xi_v
      << "\nradius_scale = " << c.radius_scale << "\nexpanded_radius_scale = " << c.expanded_radius_scale
      << "\nresample = " << (c.resample == ResampleMode::Replace ? "replace" : "discard")
      << "\nrho_discard = " << c.rho_discard << "\nlambda_p = " << c.lambda_p << "\nlambda_d = " << c.lambda_d
      << "\nlambda_h = " << c.lambda_h << "\ngate = " << c.gate << "\nconf_new = " << c.conf_new
      << "\ngamma_o = " << c.gamma_o << "\ntau_v_scale = " << c.tau_v_scale << "\ndelta_d = " << c.delta_d
      << "\nsigma_g = " << c.sigma_g << "\neps_s = " << c.eps_s << "\nrho_re = " << c.rho_re
      << "\nentrance_penalty = " << c.entrance_penalty << "\n";
  for (const auto& e : c.entrances) out << "entrance = " << e.left << "," << e.top << "," << e.w << "," << e.h << "\n";
  out << "age_max = " << c.age_max << "\nhistory = " << c.history << "\nwindow = " << c.window
      << "\ntau_scale = " << c.tau_scale << "\nweak_history = " << (c.weak_history ? "true" : "false")
      << "\nseed = " << c.seed << "\nframeless = " << (c.frameless ? "true" : "false")
      << "\nworkers = " << c.workers << "\nhog_patch = " << c.hog.patch_size << "\nhog_cell = " << c.hog.cell_size
      << "\nhog_bins = " << c.hog.bins << "\nhog_block = " << c.hog.block_size << "\nhog_clip = " << c.hog.clip
      << "\n";
}

ScenarioSpec parse_scenario_text(std::istream& in, const std::string& source) {
  ScenarioSpec s;
  long declared_targets = -1;
  for (const Line& line : read_lines(in, source)) {
    const ValueReader r(source, line);
    const std::string& k = line.key;
    auto target_id = [&](std::size_t prefix) {
      const std::string id = k.substr(prefix);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), v);
      if (id.empty() || ec != std::errc{} || ptr != id.data() + id.size() || v < 1) r.fail("bad target id");
      return v;
    };
    if (k == "frames") s.n_frames = r.integer();
    else if (k == "width") s.width = static_cast<int>(r.integer());
    else if (k == "height") s.height = static_cast<int>(r.integer());
    else if (k == "seed") s.seed = static_cast<std::uint64_t>(r.integer());
    else if (k == "noise") s.noise = r.number();
    else if (k == "dropout") s.dropout = r.number();
    else if (k == "fp_rate") s.fp_rate = r.number();
    else if (k == "fp_conf_min") s.fp_conf_min = r.number();
    else if (k == "fp_conf_max") s.fp_conf_max = r.number();
    else if (k == "det_conf_min") s.det_conf_min = r.number();
    else if (k == "render") s.render = r.boolean();
    else if (k == "targets") declared_targets = r.integer();
    else if (k.starts_with("waypoint.")) {
      const auto v = r.list(3);
      if (v[0] != std::floor(v[0])) r.fail("waypoint frame must be an integer");
      s.targets[target_id(9)].waypoints.push_back({static_cast<long>(v[0]), v[1], v[2]});
    } else if (k.starts_with("size.")) {
      const auto v = r.list(2);
      auto& t = s.targets[target_id(5)];
      t.w = v[0];
      t.h = v[1];
    } else if (k == "occlusion") {
      const auto v = r.list(3);
      s.occlusions.push_back({static_cast<int>(v[0]), static_cast<long>(v[1]), static_cast<long>(v[2])});
    } else {
      r.fail("unknown key");
    }
  }
  auto problems = validate_scenario(s);
  if (declared_targets >= 0 && declared_targets != static_cast<long>(s.targets.size())) {
    problems.push_back("targets = " + std::to_string(declared_targets) + " but " +
                       std::to_string(s.targets.size()) + " targets have waypoints");
  }
  if (!problems.empty()) {
    std::ostringstream os;
    os << "invalid scenario:";
    for (const auto& p : problems) os << "\n  " << p;
    throw ParseError(source, 0, os.str());
  }
  return s;
}

ScenarioSpec parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_scenario_text(in, path.string());
}

void write_scenario(std::ostream& out, const ScenarioSpec& s) {
  out.precision(15);
  out << "frames = " << s.n_frames << "\nwidth = " << s.width << "\nheight = " << s.height << "\nseed = " << s.seed
      << "\nnoise = " << s.noise << "\ndropout = " << s.dropout << "\nfp_rate = " << s.fp_rate
      << "\nfp_conf_min = " << s.fp_conf_min << "\nfp_conf_max = " << s.fp_conf_max
      << "\ndet_conf_min = " << s.det_conf_min << "\nrender = " << (s.render ? "true" : "false")
      << "\ntargets = " << s.targets.size() << "\n";
  for (const auto& [id, t] : s.targets) {
    out << "size." << id << " = " << t.w << "," << t.h << "\n";
    for (const auto& w : t.waypoints) out << "waypoint." << id << " = " << w.frame << "," << w.u << "," << w.v << "\n";
  }
  for (const auto& o : s.occlusions) out << "occlusion = " << o.target << "," << o.first << "," << o.last << "\n";
}

}  // namespace swarmtrack
