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
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "star/geometry.hpp"
#include "star/suppression.hpp"

namespace star {

struct FrameDetections {
  int frame = 0;
  std::vector<ScoredBox> boxes;
};

/// Per-video detections keyed by frame index.
using FrameIndex = std::map<int, FrameDetections>;

struct ClassifiedProposal {
  Segment segment;
  int class_id = 0;
  double cls_score = 0.0;

  friend bool operator==(const ClassifiedProposal&, const ClassifiedProposal&) = default;
};

enum class EmptyFramePolicy { kCarryForward, kInterpolate };

enum class FrameSource { kDetected, kCarried, kInterpolated };

struct LinkedTube {
  Tube tube;
  std::vector<double> box_scores;   // actionness used for each frame
  std::vector<FrameSource> sources; // how each frame's box was obtained
};

struct LinkRejection {
  std::string reason;
};

using LinkResult = std::variant<LinkedTube, LinkRejection>;

/// Sum of the classification score and the mean box actionness.
/// Throws std::invalid_argument when box_scores is empty.
double score_tube(double cls_score, std::span<const double> box_scores);

/// Links per-frame boxes inside the proposal's segment into a tube.
///
/// The first frame takes its highest-actionness box. Each later frame takes
/// the candidate with the largest IoU against the previous frame's choice,
/// breaking ties by higher actionness, then smaller x1, then smaller y1.
/// Frames without candidates repeat the previous box (or are interpolated
/// between detected neighbours under kInterpolate). When the first frame has
/// no candidates the nearest earlier non-empty frame seeds the tube; with no
/// such frame the proposal is rejected.
LinkResult link_tube(const ClassifiedProposal& proposal, const FrameIndex& frames,
                     EmptyFramePolicy policy = EmptyFramePolicy::kCarryForward);

struct LinkerConfig {
  std::size_t temporal_top_k = 300;
  std::size_t spatial_top_k = 50;
  double temporal_nms = 0.4;
  double spatial_nms = 0.2;
  // When false the caller has already applied NMS and top-K.
  bool suppress = true;
  EmptyFramePolicy empty_frames = EmptyFramePolicy::kCarryForward;

  void validate() const;
};

struct LinkDiagnostic {
  std::size_t proposal = 0;
  std::string message;
};

struct DetectionSet {
  std::vector<Tube> tubes;              // descending score
  std::vector<std::size_t> proposal_of; // input proposal index per tube
  std::vector<LinkDiagnostic> diagnostics;
};

/// Full test-time assembly for one video: per-class temporal NMS and top-K on
/// proposals, per-frame spatial NMS and top-K on boxes, then linking and
/// scoring. Output order is deterministic regardless of thread count.
DetectionSet build_detections(std::span<const ClassifiedProposal> proposals,
                              const FrameIndex& frames, const LinkerConfig& cfg = {});

/// Applies the per-frame spatial NMS and top-K of `cfg`.
FrameIndex suppress_frames(const FrameIndex& frames, const LinkerConfig& cfg);

/// Frame detections of one video.
struct VideoFrameDetections {
  std::string video_id;
  FrameIndex frames;
};

/// Classified temporal proposals of one video.
struct VideoProposalSet {
  std::string video_id;
  std::vector<ClassifiedProposal> proposals;
};

}  // namespace star
