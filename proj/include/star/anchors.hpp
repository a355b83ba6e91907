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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "star/geometry.hpp"

namespace star {

/// Spatial anchor lattice over an H/16 x W/16 feature map.
///
/// Every cell carries scales.size() * aspect_ratios.size() anchors centred on
/// ((col + 0.5) * stride, (row + 0.5) * stride). An anchor of scale s and
/// ratio r (height / width) has area (s * stride)^2. Anchors are ordered by
/// row, column, scale, then ratio.
struct SpatialAnchorGrid {
  int feature_width = 1;
  int feature_height = 1;
  double stride = 16.0;
  std::vector<double> scales{2.0, 4.0, 8.0, 16.0};
  std::vector<double> aspect_ratios{1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};

  /// Grid covering a width x height frame: ceil(width / stride) columns.
  static SpatialAnchorGrid for_image(int width, int height);

  std::size_t anchors_per_cell() const { return scales.size() * aspect_ratios.size(); }
  std::size_t size() const {
    return static_cast<std::size_t>(feature_width) * static_cast<std::size_t>(feature_height) *
           anchors_per_cell();
  }
  void validate() const;
};

/// Real-valued temporal anchor; segments convert to it exactly.
struct SegmentAnchor {
  double center = 0.0;
  double length = 1.0;

  SegmentAnchor() = default;
  SegmentAnchor(double c, double l) : center(c), length(l) {}
  SegmentAnchor(const Segment& s)  // NOLINT(google-explicit-constructor)
      : center(0.5 * (s.start() + s.end())), length(s.length()) {}

  double start() const { return center - 0.5 * length; }
  double end() const { return center + 0.5 * length; }
};

/// Temporal anchors at ceil(T/8) positions; scales are lengths in feature-map units.
struct TemporalAnchorSet {
  int num_positions = 1;
  int stride = 8;
  std::vector<double> scales{2, 4, 5, 6, 8, 9, 10, 12, 14, 16};

  static TemporalAnchorSet for_video(int num_frames, std::vector<double> scales);
  void validate() const;
};

struct BoxDelta {
  double tx = 0.0;
  double ty = 0.0;
  double tw = 0.0;
  double th = 0.0;
};

struct SegmentDelta {
  double tc = 0.0;
  double tl = 0.0;
};

std::vector<Box> gen_spatial_anchors(const SpatialAnchorGrid& grid);
std::vector<SegmentAnchor> gen_temporal_anchors(const TemporalAnchorSet& set);

// Centre-offset / log-size parametrization:
//   tx = (gx - ax) / aw, ty = (gy - ay) / ah, tw = ln(gw / aw), th = ln(gh / ah)
BoxDelta encode_box(const Box& anchor, const Box& gt);

/// Inverse of encode_box without clipping; nullopt if the result is not a valid box.
std::optional<Box> decode_box_unclipped(const Box& anchor, const BoxDelta& d);

/// Decodes and clips to [0, width] x [0, height]. Returns nullopt when the
/// clipped box is degenerate, which callers treat as a discarded proposal.
std::optional<Box> decode_box(const Box& anchor, const BoxDelta& d, const VideoMeta& image);

// tc = (gc - ac) / al, tl = ln(gl / al)
SegmentDelta encode_segment(const SegmentAnchor& anchor, const Segment& gt);

/// Real-valued [start, end) before rounding and clipping.
std::pair<double, double> decode_segment_span(const SegmentAnchor& anchor, const SegmentDelta& d);

/// Rounds to the frame grid and clips to [0, num_frames). nullopt when empty.
std::optional<Segment> decode_segment(const SegmentAnchor& anchor, const SegmentDelta& d,
                                      int num_frames);

enum class AnchorLabelKind { kNegative, kIgnore, kPositive };

struct AnchorLabel {
  AnchorLabelKind kind = AnchorLabelKind::kNegative;
  int gt_index = -1;     // set for positives
  double max_iou = 0.0;  // best IoU against any ground truth

  friend bool operator==(const AnchorLabel&, const AnchorLabel&) = default;
};

/// Labels anchors against ground truth. An anchor is positive when its best
/// IoU reaches pos_iou, or when it attains the highest IoU of some ground
/// truth (with that IoU > 0); negative when its best IoU is below neg_iou;
/// ignored otherwise. Threshold positives point at their best ground truth
/// (lowest index on ties). A forced positive points at the ground truth that
/// forced it, the first such one in index order.
std::vector<AnchorLabel> assign_anchor_labels(std::span<const Box> anchors,
                                              std::span<const Box> gts, double pos_iou = 0.7,
                                              double neg_iou = 0.3);
std::vector<AnchorLabel> assign_anchor_labels(std::span<const SegmentAnchor> anchors,
                                              std::span<const Segment> gts, double pos_iou = 0.7,
                                              double neg_iou = 0.3);

/// Continuous 1-D IoU between a real-valued anchor and a frame segment.
double segment_anchor_iou(const SegmentAnchor& a, const Segment& s);

/// Spatial supervision target for one temporal feature map.
struct FeaturemapTarget {
  int featuremap = 0;
  int frame = 0;        // ground-truth frame whose box was taken
  std::size_t tube = 0; // index into the input tubes
  Box box;

  friend bool operator==(const FeaturemapTarget&, const FeaturemapTarget&) = default;
};

/// Temporal centre of feature map k under an 8-frame stride: 8k + 3.5.
double featuremap_center(int k, int stride = 8);

/// Maps each tube onto the feature maps whose centre lies inside the tube's
/// segment, taking the box of the frame nearest to the centre (earlier frame
/// on ties). Videos whose length is not a multiple of the stride are padded
/// on the right and centres past the last frame are dropped. Output is
/// ordered by feature map, then tube index.
std::vector<FeaturemapTarget> map_gt_to_featuremaps(std::span<const Tube> tubes, int num_frames,
                                                    int stride = 8);
std::vector<FeaturemapTarget> map_gt_to_featuremaps(const Tube& tube, int num_frames,
                                                    int stride = 8);

}  // namespace star
