#pragma once

#include <iosfwd>

#include "swarmtrack/mot_io.hpp"

namespace swarmtrack {

struct MetricsReport {
  double mota = 0.0;  // percent, <= 100
  double idf1 = 0.0;  // percent, [0, 100]
  long idsw = 0;
  long fp = 0;
  long fn = 0;
  long gt_count = 0;
  long hyp_count = 0;
  long matches = 0;   // CLEAR true positives
  long idtp = 0;      // identity true positives
};

/// CLEAR-MOT (MOTA, IDSW, FP, FN) and identity (IDF1) scores of a
/// hypothesis against ground truth. Per frame, GT-hypothesis pairs kept
/// from earlier frames persist while their IoU stays >= iou_threshold; the
/// rest are matched by Hungarian assignment on IoU. IDF1 uses the optimal
/// one-to-one matching of GT identities to hypothesis identities.
MetricsReport evaluate(const TrackFile& gt, const TrackFile& hyp, double iou_threshold = 0.5);

void print_report(std::ostream& out, const MetricsReport& r);

}  // namespace swarmtrack
