// Copyright 2026 The STAR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "star/geometry.hpp"

namespace star {

enum class ApMode { kAllPoint, kElevenPoint };
enum class MetricKind { kVideo, kFrame, kTemporal };

/// Outcome of greedy matching for one class, in evaluation order
/// (descending score).
struct MatchResult {
  std::vector<std::size_t> order;  // input detection index per position
  std::vector<double> scores;      // score per position
  std::vector<int> matched_gt;     // matched ground truth per position, -1 for FP
  std::size_t num_gt = 0;

  std::size_t num_tp() const;
  bool is_tp(std::size_t pos) const { return matched_gt[pos] >= 0; }
};

using OverlapFn = std::function<double(std::size_t det, std::size_t gt)>;

/// Greedy matching of one class's detections against its ground truth.
/// Detections are visited by descending score (stable on ties); each takes
/// the unmatched ground truth of highest overlap, lowest index on ties, and
/// is a true positive iff that overlap is >= alpha.
MatchResult match_greedy(std::span<const double> scores, std::size_t num_gts,
                         const OverlapFn& overlap, double alpha);

/// Average precision of a match. All-point mode integrates the area under
/// the precision envelope exactly; eleven-point samples recall 0, 0.1, .., 1.
/// Returns nullopt when the class has no ground truth.
std::optional<double> average_precision(const MatchResult& match,
                                        ApMode mode = ApMode::kAllPoint);

/// A detected tube attributed to a video.
struct TubeDetection {
  std::string video_id;
  Tube tube;
};

/// A class-agnostic temporal proposal attributed to a video.
struct VideoProposal {
  std::string video_id;
  Segment segment;
  double score = 0.0;
};

struct ClassAp {
  int class_id = 0;
  std::size_t num_gt = 0;
  std::size_t num_det = 0;
  std::size_t num_tp = 0;
  double ap = 0.0;
};

struct VideoDiagnostics {
  std::string video_id;
  std::size_t num_gt = 0;
  std::size_t num_det = 0;
  std::size_t num_tp = 0;
};

struct EvalReport {
  MetricKind kind = MetricKind::kVideo;
  double alpha = 0.5;
  std::vector<ClassAp> classes;  // classes with ground truth, ascending id
  double map = 0.0;              // unweighted mean of classes[].ap
  std::vector<VideoDiagnostics> videos;
  std::size_t unknown_class_detections = 0;
};

struct EvalOptions {
  ApMode ap_mode = ApMode::kAllPoint;
  // Frame mAP only: average per-video APs instead of pooling the corpus.
  bool frame_per_video = false;
};

/// Video mAP with the spatio-temporal tube IoU as overlap. Throws
/// std::invalid_argument when a detection names a video without ground truth
/// metadata.
EvalReport video_map(std::span<const TubeDetection> dets, std::span<const VideoAnnotation> gts,
                     double alpha, const EvalOptions& opts = {});

/// Frame mAP: tubes are exploded into per-frame boxes carrying the tube
/// score and matched per (video, frame, class) with box IoU.
EvalReport frame_map(std::span<const TubeDetection> dets, std::span<const VideoAnnotation> gts,
                     double alpha = 0.5, const EvalOptions& opts = {});

struct TemporalReport {
  std::vector<EvalReport> per_alpha;
  double average_map = 0.0;
};

/// Thresholds 0.50, 0.55, ..., 0.95.
std::vector<double> default_temporal_alphas();

/// Temporal mAP over segment IoU only. Identical (video, class, segment)
/// detections are merged keeping the highest score.
TemporalReport temporal_map(std::span<const TubeDetection> dets,
                            std::span<const VideoAnnotation> gts, std::span<const double> alphas,
                            const EvalOptions& opts = {});

struct RecallCurvePoint {
  int budget = 0;               // proposals per video
  double avg_proposals = 0.0;   // realised average per video
  double average_recall = 0.0;
};

struct RecallReport {
  std::vector<double> thresholds;
  std::vector<double> recall;   // per threshold, all proposals
  double average_recall = 0.0;  // mean of recall
  std::vector<RecallCurvePoint> curve;
  std::size_t num_gt = 0;
};

/// Average recall of class-agnostic proposals over tIoU thresholds, with the
/// recall-vs-proposal-budget curve for budgets 1..max_budget.
RecallReport average_recall(std::span<const VideoProposal> proposals,
                            std::span<const VideoAnnotation> gts,
                            std::span<const double> thresholds, int max_budget = 100);

}  // namespace star
