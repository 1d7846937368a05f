#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swarmtrack/config_file.hpp"
#include "swarmtrack/mot_io.hpp"
#include "swarmtrack/pgm.hpp"
#include "swarmtrack/scenario.hpp"

using namespace swarmtrack;

namespace {

DetParseResult parse_dets(const std::string& text) {
  std::istringstream in(text);
  return parse_det_text(in);
}

TrackerConfig parse_cfg(const std::string& text) {
  std::istringstream in(text);
  return parse_config_text(in);
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("swarmtrack_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST(DetFile, ParsesCornerToCenter) {
  const auto r = parse_dets("1,-1,100,200,50,100,0.9,-1,-1,-1\n");
  ASSERT_EQ(r.frames.count(1), 1u);
  const Detection& d = r.frames.at(1).at(0);
  EXPECT_EQ(d.box, (BBox{125, 250, 50, 100}));
  EXPECT_DOUBLE_EQ(d.conf, 0.9);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(DetFile, EmptyInput) { EXPECT_TRUE(parse_dets("").frames.empty()); }

TEST(DetFile, ClampsConfidenceWithWarning) {
  const auto r = parse_dets("3,-1,0,0,10,10,1.3,-1,-1,-1\n");
  EXPECT_DOUBLE_EQ(r.frames.at(3).at(0).conf, 1.0);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(DetFile, SkipsNonPositiveSizes) {
  const auto r = parse_dets("1,-1,0,0,0,10,0.5,-1,-1,-1\n1,-1,0,0,5,5,0.5,-1,-1,-1\n");
  EXPECT_EQ(r.frames.at(1).size(), 1u);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(DetFile, MalformedLineReportsLineNumber) {
  try {
    parse_dets("1,-1,0,0,5,5,0.5,-1,-1,-1\n2,-1,abc,0,5,5,0.5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(DetFile, MissingFileIsIoError) {
  EXPECT_THROW(parse_det_file("/nonexistent/swarmtrack/det.txt"), IoError);
}

TEST(TrackFileParse, DuplicateIdInFrameRejected) {
  std::istringstream in("1,4,0,0,5,5,1,-1,-1,-1\n1,4,9,9,5,5,1,-1,-1,-1\n");
  EXPECT_THROW(parse_track_text(in), ParseError);
}

TEST(TrackFileParse, SkipsIgnoredRows) {
  std::istringstream in("1,4,0,0,5,5,0,1,1\n1,5,9,9,5,5,1,1,1\n");
  EXPECT_EQ(parse_track_text(in, "gt", {true}).records.size(), 1u);
}

namespace {

FrameTracks sample_output() {
  return {{1, {{2, {125.3456, 250.25, 50.5, 100.125}, TrackStatus::Strong, 0.25, 0.0},
               {1, {10, 20, 4, 8}, TrackStatus::Weak, 0.5, 3.0}}},
          {3, {{1, {12, 21, 4, 8}, TrackStatus::New, 0.0, 0.0}}}};
}

}  // namespace

TEST(ResultFile, RoundTripAndSorting) {
  std::stringstream ss;
  write_result_text(sample_output(), ss, true);
  const TrackFile back = parse_track_text(ss);
  ASSERT_EQ(back.records.size(), 3u);
  EXPECT_EQ(back.records[0].id, 1);  // sorted by (frame, id)
  EXPECT_EQ(back.records[1].id, 2);
  const BBox& b = back.records[1].box;
  EXPECT_NEAR(b.u, 125.3456, 1e-2);
  EXPECT_NEAR(b.v, 250.25, 1e-2);
  EXPECT_NEAR(b.w, 50.5, 1e-2);
  EXPECT_NEAR(b.h, 100.125, 1e-2);
  EXPECT_DOUBLE_EQ(back.records[1].conf, 0.75);
}

TEST(ResultFile, StrongOnlyDropsWeakRows) {
  std::stringstream ss;
  write_result_text(sample_output(), ss, false);
  const TrackFile back = parse_track_text(ss);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[0].id, 2);
  EXPECT_EQ(back.records[1].frame, 3);
}

TEST(ResultFile, UnwritablePathIsIoError) {
  EXPECT_THROW(write_result_file(sample_output(), "/nonexistent/dir/out.txt", true), IoError);
}

TEST(ConfigFile, EmptyGivesDefaults) {
  const TrackerConfig c = parse_cfg("");
  EXPECT_EQ(c.particles, 8);
  EXPECT_EQ(c.gate, TrackerConfig{}.gate);
}

TEST(ConfigFile, ParsesValues) {
  const TrackerConfig c = parse_cfg("particles = 8\n# note\ngate = 0.7  # trailing\nframeless = yes\n"
                                    "entrance = 0,0,10,20\nresample = discard\n");
  EXPECT_EQ(c.particles, 8);
  EXPECT_DOUBLE_EQ(c.gate, 0.7);
  EXPECT_TRUE(c.frameless);
  ASSERT_EQ(c.entrances.size(), 1u);
  EXPECT_DOUBLE_EQ(c.entrances[0].h, 20.0);
  EXPECT_EQ(c.resample, ResampleMode::Discard);
}

TEST(ConfigFile, SimplexViolationReported) {
  try {
    parse_cfg("sigma_h = 0.7\nsigma_p = 0.7\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("sigma"), std::string::npos);
  }
}

TEST(ConfigFile, UnknownKeyRejected) { EXPECT_THROW(parse_cfg("bogus = 1\n"), ParseError); }

TEST(ConfigFile, BadValueRejected) { EXPECT_THROW(parse_cfg("particles = many\n"), ParseError); }

TEST(ConfigFile, WriteThenParseRoundTrips) {
  TrackerConfig c;
  c.gate = 0.65;
  c.seed = 123456789;
  c.entrances.push_back({1, 2, 3, 4});
  std::stringstream ss;
  write_config(ss, c);
  const TrackerConfig back = parse_config_text(ss);
  EXPECT_EQ(back.gate, c.gate);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.entrances.size(), 1u);
}

TEST(Scenario, NoiselessDetectionsEqualGroundTruth) {
  ScenarioSpec s;
  s.n_frames = 20;
  s.targets[1] = {30, 60, {{1, 100, 100}, {20, 200, 150}}};
  s.targets[2] = {30, 60, {{5, 300, 100}, {15, 300, 300}}};
  const Scenario sc = generate_scenario(s);
  std::size_t dets = 0;
  for (const auto& [frame, ds] : sc.detections) {
    dets += ds.size();
    for (const Detection& d : ds) EXPECT_EQ(d.conf, 1.0);
  }
  ASSERT_EQ(dets, sc.gt.records.size());
  EXPECT_EQ(sc.detections.size(), 20u);
  for (const TrackRecord& r : sc.gt.records) {
    const auto& ds = sc.detections.at(r.frame);
    EXPECT_TRUE(std::any_of(ds.begin(), ds.end(), [&](const Detection& d) { return d.box == r.box; }));
  }
}

TEST(Scenario, OcclusionWindowRemovesDetectionsExactly) {
  ScenarioSpec s;
  s.n_frames = 40;
  s.targets[1] = {30, 60, {{1, 100, 100}, {40, 100, 100}}};
  s.targets[2] = {30, 60, {{1, 400, 100}, {40, 400, 100}}};
  s.occlusions.push_back({2, 20, 30});
  const Scenario sc = generate_scenario(s);
  for (const auto& [frame, ds] : sc.detections) {
    const bool has2 = std::any_of(ds.begin(), ds.end(), [](const Detection& d) { return d.box.u == 400; });
    EXPECT_EQ(has2, frame < 20 || frame > 30) << "frame " << frame;
    EXPECT_EQ(ds.size(), has2 ? 2u : 1u);
  }
}

TEST(Scenario, SeededGenerationIsByteIdentical) {
  const ScenarioSpec s = identity_suite_scenario(6);
  const auto dir = scratch_dir("det");
  write_det_file(generate_scenario(s).detections, dir / "a.txt");
  write_det_file(generate_scenario(s).detections, dir / "b.txt");
  EXPECT_EQ(slurp(dir / "a.txt"), slurp(dir / "b.txt"));
  ScenarioSpec other = s;
  other.seed += 1;
  write_det_file(generate_scenario(other).detections, dir / "c.txt");
  EXPECT_NE(slurp(dir / "a.txt"), slurp(dir / "c.txt"));
}

TEST(Scenario, InvalidSpecsRejected) {
  ScenarioSpec s;
  s.n_frames = 10;
  s.targets[1] = {30, 60, {{1, 10, 10}, {10, 20, 20}}};
  s.occlusions.push_back({1, 5, 12});
  EXPECT_FALSE(validate_scenario(s).empty());
  EXPECT_THROW(generate_scenario(s), std::invalid_argument);
}

TEST(Scenario, SpecTextRoundTrips) {
  const ScenarioSpec s = identity_suite_scenario(1);
  std::stringstream ss;
  write_scenario(ss, s);
  const ScenarioSpec back = parse_scenario_text(ss);
  EXPECT_EQ(back.n_frames, s.n_frames);
  ASSERT_EQ(back.targets.size(), s.targets.size());
  EXPECT_EQ(back.occlusions.size(), 1u);
  EXPECT_EQ(back.targets.at(2).waypoints.size(), 2u);
}

TEST(Scenario, RenderedFramesShowTargets) {
  ScenarioSpec s;
  s.n_frames = 3;
  s.width = 120;
  s.height = 80;
  s.render = true;
  s.targets[1] = {20, 30, {{1, 60, 40}, {3, 64, 40}}};
  const Scenario sc = generate_scenario(s);
  ASSERT_EQ(sc.frames.size(), 3u);
  EXPECT_NE(sc.frames[0].at(60, 40), sc.frames[0].at(5, 5));
}

TEST(Pgm, RoundTrip) {
  GrayImage img(7, 5, 0);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 7; ++x) img.at(x, y) = static_cast<std::uint8_t>(x * 30 + y);
  const auto dir = scratch_dir("pgm");
  write_pgm(img, frame_path(dir, 12));
  EXPECT_EQ(frame_path(dir, 12).filename(), "000012.pgm");
  const GrayImage back = read_pgm(frame_path(dir, 12));
  EXPECT_EQ(back.width, 7);
  EXPECT_EQ(back.height, 5);
  EXPECT_EQ(back.pixels, img.pixels);
}

TEST(Pgm, RejectsOtherFormats) {
  const auto dir = scratch_dir("pgm_bad");
  std::ofstream(dir / "x.pgm") << "P2\n2 2\n255\n0 0 0 0\n";
  EXPECT_ANY_THROW(read_pgm(dir / "x.pgm"));
}
