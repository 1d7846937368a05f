#include "swarmtrack/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace swarmtrack {

MetricsReport evaluate(const TrackFile& gt, const TrackFile& hyp, double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) throw std::invalid_argument("iou threshold must lie in (0, 1)");
  const auto gt_frames = by_frame(gt);
  const auto hyp_frames = by_frame(hyp);
  std::set<long> frames;
  for (const auto& [f, _] : gt_frames) frames.insert(f);
  for (const auto& [f, _] : hyp_frames) frames.insert(f);

  MetricsReport r;
  r.gt_count = static_cast<long>(gt.records.size());
  r.hyp_count = static_cast<long>(hyp.records.size());

  std::map<TrackId, TrackId> last_match;  // gt id -> hyp id it was last matched to
  std::map<std::pair<TrackId, TrackId>, long> pair_counts;
  const std::vector<TrackRecord> none;

  for (long f : frames) {
    const auto git = gt_frames.find(f);
    const auto hit = hyp_frames.find(f);
    const auto& gs = git == gt_frames.end() ? none : git->second;
    const auto& hs = hit == hyp_frames.end() ? none : hit->second;

    std::vector<std::vector<double>> overlap(gs.size(), std::vector<double>(hs.size()));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = 0; j < hs.size(); ++j) {
        overlap[i][j] = iou(gs[i].box, hs[j].box);
        if (overlap[i][j] >= iou_threshold) ++pair_counts[{gs[i].id, hs[j].id}];
      }
    }

    std::vector<std::pair<std::size_t, std::size_t>> matched;
    std::vector<char> g_used(gs.size(), 0), h_used(hs.size(), 0);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const auto lm = last_match.find(gs[i].id);
      if (lm == last_match.end()) continue;
      for (std::size_t j = 0; j < hs.size(); ++j) {
        if (!h_used[j] && hs[j].id == lm->second && overlap[i][j] >= iou_threshold) {
          matched.emplace_back(i, j);
          g_used[i] = h_used[j] = 1;
          break;
        }
      }
    }

    std::vector<std::size_t> gi, hj;
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (!g_used[i]) gi.push_back(i);
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (!h_used[j]) hj.push_back(j);
    if (!gi.empty() && !hj.empty()) {
      // Pairs below the threshold cost more than any full set of valid
      // pairs, so the solver maximizes the number of valid matches first.
      const double forbidden = 2.0 + static_cast<double>(gi.size() + hj.size());
      CostMatrix c(gi.size(), hj.size());
      for (std::size_t a = 0; a < gi.size(); ++a) {
        for (std::size_t b = 0; b < hj.size(); ++b) {
          const double o = overlap[gi[a]][hj[b]];
          c(a, b) = o >= iou_threshold ? 1.0 - o : forbidden;
        }
      }
      for (const auto& [a, b] : solve_assignment(c, 1.0 - iou_threshold).matches) {
        if (overlap[gi[a]][hj[b]] >= iou_threshold) matched.emplace_back(gi[a], hj[b]);
      }
    }

    for (const auto& [i, j] : matched) {
      const auto lm = last_match.find(gs[i].id);
      if (lm != last_match.end() && lm->second != hs[j].id) ++r.idsw;
      last_match[gs[i].id] = hs[j].id;
    }
    r.matches += static_cast<long>(matched.size());
    r.fn += static_cast<long>(gs.size() - matched.size());
    r.fp += static_cast<long>(hs.size() - matched.size());
  }

  if (r.gt_count > 0) {
    r.mota = 100.0 * (1.0 - static_cast<double>(r.fn + r.fp + r.idsw) / static_cast<double>(r.gt_count));
  } else {
    r.mota = r.fp == 0 ? 100.0 : 0.0;
  }

  // Global identity matching.
  std::map<TrackId, std::size_t> g_index, h_index;
  for (const auto& rec : gt.records) g_index.emplace(rec.id, 0);
  for (const auto& rec : hyp.records) h_index.emplace(rec.id, 0);
  std::size_t k = 0;
  for (auto& [id, idx] : g_index) idx = k++;
  k = 0;
  for (auto& [id, idx] : h_index) idx = k++;
  if (!g_index.empty() && !h_index.empty()) {
    long max_count = 0;
    for (const auto& [_, n] : pair_counts) max_count = std::max(max_count, n);
    CostMatrix c(g_index.size(), h_index.size(), static_cast<double>(max_count));
    for (const auto& [ids, n] : pair_counts) {
      c(g_index[ids.first], h_index[ids.second]) = static_cast<double>(max_count - n);
    }
    for (const auto& [a, b] : solve_assignment(c, static_cast<double>(max_count), TieBreak::None).matches) {
      r.idtp += max_count - static_cast<long>(c(a, b));
    }
  }
  const long denom = r.gt_count + r.hyp_count;
  r.idf1 = denom > 0 ? 100.0 * 2.0 * static_cast<double>(r.idtp) / static_cast<double>(denom) : 100.0;
  return r;
}

void print_report(std::ostream& out, const MetricsReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%8s %8s %6s %8s %8s %8s\n", "MOTA", "IDF1", "IDSW", "FP", "FN", "GT");
  out << buf;
  std::snprintf(buf, sizeof buf, "%8.3f %8.3f %6ld %8ld %8ld %8ld\n", r.mota, r.idf1, r.idsw, r.fp, r.fn,
                r.gt_count);
  out << buf;
}

}  // namespace swarmtrack
