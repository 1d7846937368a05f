#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>

#include "swarmtrack/config_file.hpp"
#include "swarmtrack/metrics.hpp"
#include "swarmtrack/mot_io.hpp"
#include "swarmtrack/pgm.hpp"
#include "swarmtrack/scenario.hpp"
#include "swarmtrack/sort_baseline.hpp"
#include "swarmtrack/tracker.hpp"

namespace fs = std::filesystem;

namespace swarmtrack {

namespace {

struct TrackArgs {
  std::string det;
  std::string frames;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool include_weak = true;
  std::string method = "swarm";
};

struct EvalArgs {
  std::string gt;
  std::string hyp;
  double iou = 0.5;
  double min_conf = 0.0;
  bool gt_ignore_flag = false;
};

struct SynthArgs {
  std::string spec;
  std::string out_dir;
};

struct OverlayArgs {
  std::string frames;
  std::string tracks;
  std::string out_dir;
};

int run_track(const TrackArgs& a, std::ostream& err) {
  TrackerConfig cfg = a.config.empty() ? TrackerConfig{} : parse_config(a.config);
  if (a.seed) cfg.seed = *a.seed;
  const DetParseResult dets = parse_det_file(a.det);
  for (const auto& w : dets.warnings) err << "warning: " << w << "\n";
  const long last = dets.frames.empty() ? 0 : dets.frames.rbegin()->first;

  FrameTracks results;
  const std::vector<Detection> empty;
  if (a.method == "sort") {
    SortBaseline sort;
    for (long f = 1; f <= last; ++f) {
      const auto it = dets.frames.find(f);
      results.emplace_back(f, sort.step(it == dets.frames.end() ? empty : it->second));
    }
  } else {
    Tracker tracker(cfg);
    std::optional<GrayImage> image;
    for (long f = 1; f <= last; ++f) {
      const auto it = dets.frames.find(f);
      FrameInput in{f, it == dets.frames.end() ? empty : it->second, nullptr};
      if (!a.frames.empty()) {
        image = read_pgm(frame_path(a.frames, f));
        in.image = &*image;
      }
      results.emplace_back(f, tracker.step(in));
    }
  }
  write_result_file(results, a.out, a.include_weak);
  return 0;
}

int run_eval(const EvalArgs& a, std::ostream& out) {
  const TrackFile gt = parse_track_file(a.gt, {a.gt_ignore_flag});
  TrackFile hyp = parse_track_file(a.hyp);
  std::erase_if(hyp.records, [&](const TrackRecord& r) { return r.conf < a.min_conf; });
  print_report(out, evaluate(gt, hyp, a.iou));
  return 0;
}

int run_synth(const SynthArgs& a, std::ostream& out) {
  const ScenarioSpec spec = parse_scenario(a.spec);
  const Scenario sc = generate_scenario(spec);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_track_file(sc.gt, dir / "gt.txt");
  write_det_file(sc.detections, dir / "det.txt");
  if (!sc.frames.empty()) {
    fs::create_directories(dir / "frames");
    for (std::size_t k = 0; k < sc.frames.size(); ++k) {
      write_pgm(sc.frames[k], frame_path(dir / "frames", static_cast<long>(k + 1)));
    }
  }
  out << "wrote " << sc.gt.records.size() << " ground-truth rows and " << spec.n_frames << " frames of detections to "
      << dir.string() << "\n";
  return 0;
}

// Box outline; weak boxes are dashed.
void draw_box(GrayImage& img, const BBox& b, bool dashed) {
  const TopLeftBox t = to_topleft(b);
  const int x0 = static_cast<int>(std::lround(t.left));
  const int y0 = static_cast<int>(std::lround(t.top));
  const int x1 = static_cast<int>(std::lround(t.left + t.w)) - 1;
  const int y1 = static_cast<int>(std::lround(t.top + t.h)) - 1;
  auto plot = [&](int x, int y, int along) {
    if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
    img.at(x, y) = dashed && (along / 4) % 2 == 1 ? 0 : 255;
  };
  for (int thick = 0; thick < 2; ++thick) {
    for (int x = x0; x <= x1; ++x) {
      plot(x, y0 + thick, x - x0);
      plot(x, y1 - thick, x - x0);
    }
    for (int y = y0; y <= y1; ++y) {
      plot(x0 + thick, y, y - y0);
      plot(x1 - thick, y, y - y0);
    }
  }
}

int run_overlay(const OverlayArgs& a, std::ostream& out) {
  const auto tracks = by_frame(parse_track_file(a.tracks));
  const std::regex name(R"((\d{6})\.pgm)");
  std::vector<std::pair<long, fs::path>> frames;
  for (const auto& entry : fs::directory_iterator(a.frames)) {
    std::smatch m;
    const std::string file = entry.path().filename().string();
    if (std::regex_match(file, m, name)) frames.emplace_back(std::stol(m[1].str()), entry.path());
  }
  std::sort(frames.begin(), frames.end());
  fs::create_directories(a.out_dir);
  for (const auto& [f, path] : frames) {
    GrayImage img = read_pgm(path);
    if (const auto it = tracks.find(f); it != tracks.end()) {
      // Strong and new rows carry conf 1 (zero penalty); coasting rows less.
      for (const TrackRecord& r : it->second) draw_box(img, r.box, r.conf < 1.0);
    }
    write_pgm(img, frame_path(a.out_dir, f));
  }
  out << "wrote " << frames.size() << " frames to " << a.out_dir << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle-swarm multi-object tracker", "swarmtrack"};
  app.require_subcommand(1);

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "Track detections and write MOTChallenge results");
  track_cmd->add_option("--det", track.det, "Detection file (MOTChallenge format)")->required();
  track_cmd->add_option("--frames", track.frames, "Directory of %06d.pgm frames (enables appearance)");
  track_cmd->add_option("--config", track.config, "Tracker configuration (key = value)");
  track_cmd->add_option("--out", track.out, "Result file")->required();
  track_cmd->add_option("--seed", track.seed, "Override the configured seed");
  track_cmd->add_flag("--include-weak,!--strong-only", track.include_weak,
                      "Write coasting (weak) tracks too (default) or only matched/new ones");
  track_cmd->add_option("--method", track.method, "swarm (default) or sort (reference baseline)")
      ->check(CLI::IsMember({"swarm", "sort"}));

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a hypothesis file against ground truth");
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth file")->required();
  eval_cmd->add_option("--hyp", eval.hyp, "Hypothesis file")->required();
  eval_cmd->add_option("--iou", eval.iou, "IoU threshold")->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--min-conf", eval.min_conf, "Ignore hypothesis rows below this confidence");
  eval_cmd->add_flag("--gt-ignore-flag", eval.gt_ignore_flag, "Drop ground-truth rows whose 7th column is 0");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scenario");
  synth_cmd->add_option("--spec", synth.spec, "Scenario description")->required();
  synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();

  OverlayArgs overlay;
  auto* overlay_cmd = app.add_subcommand("overlay", "Draw tracks onto frames");
  overlay_cmd->add_option("--frames", overlay.frames, "Input frame directory")->required();
  overlay_cmd->add_option("--tracks", overlay.tracks, "Track file")->required();
  overlay_cmd->add_option("--out-dir", overlay.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return 1;
  }

  try {
    if (*track_cmd) return run_track(track, err);
    if (*eval_cmd) return run_eval(eval, out);
    if (*synth_cmd) return run_synth(synth, out);
    if (*overlay_cmd) return run_overlay(overlay, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace swarmtrack
