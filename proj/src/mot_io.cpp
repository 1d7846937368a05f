#include "swarmtrack/mot_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <tuple>

namespace swarmtrack {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> split_numbers(std::string_view line, const std::string& source, std::size_t lineno) {
  std::vector<double> out;
  while (true) {
    const auto comma = line.find(',');
    const std::string_view field = trim(line.substr(0, comma));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
      throw ParseError(source, lineno, "not a number: '" + std::string(field) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

long as_frame(double v, const std::string& source, std::size_t lineno) {
  if (v < 1.0 || v != std::floor(v)) throw ParseError(source, lineno, "frame must be an integer >= 1");
  return static_cast<long>(v);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_row(std::ostream& out, long frame, long long id, const BBox& b, double conf) {
  const TopLeftBox t = to_topleft(b);
  char buf[192];
  std::snprintf(buf, sizeof buf, "%ld,%lld,%.3f,%.3f,%.3f,%.3f,%.4f,-1,-1,-1\n", frame, id, t.left, t.top, t.w,
                t.h, conf);
  out << buf;
}

}  // namespace

DetParseResult parse_det_text(std::istream& in, const std::string& source) {
  DetParseResult res;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto f = split_numbers(line, source, lineno);
    if (f.size() < 7) throw ParseError(source, lineno, "expected at least 7 comma-separated fields");
    const long frame = as_frame(f[0], source, lineno);
    if (!(f[4] > 0.0 && f[5] > 0.0)) {
      res.warnings.push_back(source + ":" + std::to_string(lineno) + ": non-positive box size, record skipped");
      continue;
    }
    double conf = f[6];
    if (conf < 0.0 || conf > 1.0) {
      res.warnings.push_back(source + ":" + std::to_string(lineno) + ": confidence " + std::to_string(conf) +
                             " clamped to [0, 1]");
      conf = std::clamp(conf, 0.0, 1.0);
    }
    res.frames[frame].push_back({from_topleft(f[2], f[3], f[4], f[5]), conf});
  }
  return res;
}

DetParseResult parse_det_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_det_text(in, path.string());
}

TrackFile parse_track_text(std::istream& in, const std::string& source, const TrackParseOptions& opts) {
  TrackFile file;
  std::set<std::pair<long, TrackId>> seen;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto f = split_numbers(line, source, lineno);
    if (f.size() < 6) throw ParseError(source, lineno, "expected at least 6 comma-separated fields");
    const long frame = as_frame(f[0], source, lineno);
    if (f[1] != std::floor(f[1])) throw ParseError(source, lineno, "id must be an integer");
    if (!(f[4] > 0.0 && f[5] > 0.0)) throw ParseError(source, lineno, "box size must be positive");
    const double conf = f.size() > 6 ? f[6] : 1.0;
    if (opts.skip_ignored && f.size() > 6 && conf == 0.0) continue;
    const auto id = static_cast<TrackId>(f[1]);
    if (!seen.emplace(frame, id).second) {
      throw ParseError(source, lineno, "duplicate id " + std::to_string(id) + " in frame " + std::to_string(frame));
    }
    file.records.push_back({frame, id, from_topleft(f[2], f[3], f[4], f[5]), conf});
  }
  return file;
}

TrackFile parse_track_file(const std::filesystem::path& path, const TrackParseOptions& opts) {
  auto in = open_in(path);
  return parse_track_text(in, path.string(), opts);
}

void write_result_text(const FrameTracks& frames, std::ostream& out, bool include_weak) {
  std::vector<const std::pair<long, std::vector<TrackOutput>>*> order;
  for (const auto& f : frames) order.push_back(&f);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->first < b->first; });
  for (const auto* f : order) {
    std::vector<const TrackOutput*> rows;
    for (const auto& t : f->second) {
      if (include_weak || t.status != TrackStatus::Weak) rows.push_back(&t);
    }
    std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const auto* t : rows) write_row(out, f->first, t->id, t->state, 1.0 - t->penalty);
  }
}

void write_result_file(const FrameTracks& frames, const std::filesystem::path& path, bool include_weak) {
  auto out = open_out(path);
  write_result_text(frames, out, include_weak);
  finish(out, path);
}

void write_track_file(const TrackFile& file, const std::filesystem::path& path) {
  auto out = open_out(path);
  std::vector<TrackRecord> rows = file.records;
  std::sort(rows.begin(), rows.end(),
            [](const TrackRecord& a, const TrackRecord& b) { return std::tie(a.frame, a.id) < std::tie(b.frame, b.id); });
  for (const auto& r : rows) write_row(out, r.frame, r.id, r.box, r.conf);
  finish(out, path);
}

void write_det_file(const DetectionSequence& dets, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (const auto& [frame, list] : dets) {
    for (const Detection& d : list) write_row(out, frame, -1, d.box, d.conf);
  }
  finish(out, path);
}

std::map<long, std::vector<TrackRecord>> by_frame(const TrackFile& file) {
  std::map<long, std::vector<TrackRecord>> out;
  for (const auto& r : file.records) out[r.frame].push_back(r);
  return out;
}

}  // namespace swarmtrack
