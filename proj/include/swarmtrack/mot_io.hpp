#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swarmtrack/association.hpp"
#include "swarmtrack/track.hpp"
#include "swarmtrack/tracker.hpp"

namespace swarmtrack {

/// Malformed input file; carries the 1-based line number (0 for
/// file-level failures).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// I/O failure on a named path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Detections keyed by 1-based frame number; absent frames have none.
using DetectionSequence = std::map<long, std::vector<Detection>>;

struct DetParseResult {
  DetectionSequence frames;
  std::vector<std::string> warnings;
};

/// Parses MOTChallenge "frame,id,left,top,w,h,conf,x,y,z" detections into
/// center format. Non-positive sizes are skipped and confidences outside
/// [0, 1] clamped, each with a warning.
DetParseResult parse_det_file(const std::filesystem::path& path);
DetParseResult parse_det_text(std::istream& in, const std::string& source = "<stream>");

struct TrackRecord {
  long frame = 0;
  TrackId id = 0;
  BBox box;
  double conf = 1.0;
};

struct TrackFile {
  std::vector<TrackRecord> records;
};

struct TrackParseOptions {
  /// Drop rows whose 7th column is 0 (MOTChallenge ground-truth
  /// "ignore" flag).
  bool skip_ignored = false;
};

/// Parses a ground-truth or hypothesis file in the same format. Throws
/// ParseError on malformed lines or duplicate ids within a frame.
TrackFile parse_track_file(const std::filesystem::path& path, const TrackParseOptions& opts = {});
TrackFile parse_track_text(std::istream& in, const std::string& source = "<stream>",
                           const TrackParseOptions& opts = {});

using FrameTracks = std::vector<std::pair<long, std::vector<TrackOutput>>>;

/// Writes tracker output as MOTChallenge rows sorted by (frame, id), with
/// conf = 1 - penalty. Weak rows are dropped unless include_weak.
void write_result_file(const FrameTracks& frames, const std::filesystem::path& path, bool include_weak);
void write_result_text(const FrameTracks& frames, std::ostream& out, bool include_weak);

void write_track_file(const TrackFile& file, const std::filesystem::path& path);
void write_det_file(const DetectionSequence& dets, const std::filesystem::path& path);

/// Groups records by frame.
std::map<long, std::vector<TrackRecord>> by_frame(const TrackFile& file);

}  // namespace swarmtrack
