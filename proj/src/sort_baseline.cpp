#include "swarmtrack/sort_baseline.hpp"

#include <algorithm>
#include <tuple>

namespace swarmtrack {

std::vector<TrackOutput> SortBaseline::step(const std::vector<Detection>& dets) {
  for (Entry& t : tracks_) {
    t.box.u += t.vel.du;
    t.box.v += t.vel.dv;
  }

  struct Candidate {
    double overlap;
    std::size_t track;
    std::size_t det;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    for (std::size_t j = 0; j < dets.size(); ++j) {
      if (dets[j].conf < opts_.conf_min) continue;
      const double o = iou(tracks_[i].box, dets[j].box);
      if (o >= opts_.iou_min) candidates.push_back({o, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(b.overlap, a.track, a.det) < std::tie(a.overlap, b.track, b.det);
  });

  std::vector<char> track_used(tracks_.size(), 0), det_used(dets.size(), 0);
  for (const Candidate& c : candidates) {
    if (track_used[c.track] || det_used[c.det]) continue;
    track_used[c.track] = det_used[c.det] = 1;
    Entry& t = tracks_[c.track];
    const BBox& d = dets[c.det].box;
    const BBox before{t.box.u - t.vel.du, t.box.v - t.vel.dv, t.box.w, t.box.h};
    t.vel = {d.u - before.u, d.v - before.v, 0.0, 0.0};
    t.box = d;
    t.misses = 0;
  }
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (!track_used[i]) {
      ++tracks_[i].misses;
      tracks_[i].fresh = false;
    }
  }
  std::erase_if(tracks_, [&](const Entry& t) { return t.misses > opts_.max_age; });

  std::vector<TrackOutput> out;
  for (Entry& t : tracks_) {
    const TrackStatus status = t.misses > 0 ? TrackStatus::Weak : (t.fresh ? TrackStatus::New : TrackStatus::Strong);
    out.push_back({t.id, t.box, status, t.misses > 0 ? 1.0 : 0.0, static_cast<double>(t.misses)});
    t.fresh = false;
  }
  for (std::size_t j = 0; j < dets.size(); ++j) {
    if (det_used[j] || dets[j].conf < opts_.conf_min) continue;
    tracks_.push_back({next_id_++, dets[j].box, {}, 0, false});
    out.push_back({tracks_.back().id, dets[j].box, TrackStatus::New, 0.0, 0.0});
  }
  return out;
}

}  // namespace swarmtrack
