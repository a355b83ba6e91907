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
#include "star/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "star/kernels.hpp"

namespace star {
namespace {

void check_positive(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + " must not be empty");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + " must be strictly positive");
    }
  }
}

// Shared labelling rule over a row-major IoU matrix iou[g * n + a].
std::vector<AnchorLabel> labels_from_iou(const std::vector<double>& iou, std::size_t num_anchors,
                                         std::size_t num_gts, double pos_iou, double neg_iou) {
  if (!(pos_iou > neg_iou)) throw std::invalid_argument("pos_iou must exceed neg_iou");
  std::vector<AnchorLabel> labels(num_anchors);
  for (std::size_t a = 0; a < num_anchors; ++a) {
    double best = 0.0;
    int best_gt = -1;
    for (std::size_t g = 0; g < num_gts; ++g) {
      const double v = iou[g * num_anchors + a];
      if (best_gt < 0 || v > best) {
        best = v;
        best_gt = static_cast<int>(g);
      }
    }
    AnchorLabel& l = labels[a];
    l.max_iou = best;
    if (best_gt >= 0 && best >= pos_iou) {
      l.kind = AnchorLabelKind::kPositive;
      l.gt_index = best_gt;
    } else if (best < neg_iou) {
      l.kind = AnchorLabelKind::kNegative;
    } else {
      l.kind = AnchorLabelKind::kIgnore;
    }
  }

  for (std::size_t g = 0; g < num_gts; ++g) {
    const double* row = iou.data() + g * num_anchors;
    const double gt_best = num_anchors ? *std::max_element(row, row + num_anchors) : 0.0;
    if (!(gt_best > 0.0)) continue;
    for (std::size_t a = 0; a < num_anchors; ++a) {
      if (row[a] != gt_best) continue;
      AnchorLabel& l = labels[a];
      if (l.kind == AnchorLabelKind::kPositive) continue;
      l.kind = AnchorLabelKind::kPositive;
      l.gt_index = static_cast<int>(g);
    }
  }
  return labels;
}

}  // namespace

SpatialAnchorGrid SpatialAnchorGrid::for_image(int width, int height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("image size must be positive");
  SpatialAnchorGrid g;
  g.feature_width = (width + 15) / 16;
  g.feature_height = (height + 15) / 16;
  return g;
}

void SpatialAnchorGrid::validate() const {
  if (feature_width < 1 || feature_height < 1) {
    throw std::invalid_argument("anchor grid dimensions must be >= 1");
  }
  if (!(stride > 0.0)) throw std::invalid_argument("anchor stride must be positive");
  check_positive(scales, "anchor scales");
  check_positive(aspect_ratios, "anchor aspect ratios");
}

TemporalAnchorSet TemporalAnchorSet::for_video(int num_frames, std::vector<double> scales) {
  if (num_frames <= 0) throw std::invalid_argument("num_frames must be positive");
  TemporalAnchorSet s;
  s.num_positions = (num_frames + s.stride - 1) / s.stride;
  s.scales = std::move(scales);
  return s;
}

void TemporalAnchorSet::validate() const {
  if (num_positions < 1) throw std::invalid_argument("temporal anchor positions must be >= 1");
  if (stride < 1) throw std::invalid_argument("temporal stride must be >= 1");
  check_positive(scales, "temporal anchor scales");
}

std::vector<Box> gen_spatial_anchors(const SpatialAnchorGrid& grid) {
  grid.validate();
  std::vector<Box> anchors;
  anchors.reserve(grid.size());
  for (int row = 0; row < grid.feature_height; ++row) {
    const double cy = (row + 0.5) * grid.stride;
    for (int col = 0; col < grid.feature_width; ++col) {
      const double cx = (col + 0.5) * grid.stride;
      for (double scale : grid.scales) {
        const double side = scale * grid.stride;
        for (double ratio : grid.aspect_ratios) {
          const double root = std::sqrt(ratio);
          const double half_w = 0.5 * side / root;
          const double half_h = 0.5 * side * root;
          anchors.emplace_back(cx - half_w, cy - half_h, cx + half_w, cy + half_h);
        }
      }
    }
  }
  return anchors;
}

std::vector<SegmentAnchor> gen_temporal_anchors(const TemporalAnchorSet& set) {
  set.validate();
  std::vector<SegmentAnchor> anchors;
  anchors.reserve(static_cast<std::size_t>(set.num_positions) * set.scales.size());
  for (int p = 0; p < set.num_positions; ++p) {
    const double center = (p + 0.5) * set.stride;
    for (double s : set.scales) anchors.emplace_back(center, s * set.stride);
  }
  return anchors;
}

BoxDelta encode_box(const Box& anchor, const Box& gt) {
  const double aw = anchor.width(), ah = anchor.height();
  return {(gt.center_x() - anchor.center_x()) / aw, (gt.center_y() - anchor.center_y()) / ah,
          std::log(gt.width() / aw), std::log(gt.height() / ah)};
}

std::optional<Box> decode_box_unclipped(const Box& anchor, const BoxDelta& d) {
  const double aw = anchor.width(), ah = anchor.height();
  const double cx = anchor.center_x() + d.tx * aw;
  const double cy = anchor.center_y() + d.ty * ah;
  const double w = aw * std::exp(d.tw);
  const double h = ah * std::exp(d.th);
  const double x1 = cx - 0.5 * w, y1 = cy - 0.5 * h, x2 = cx + 0.5 * w, y2 = cy + 0.5 * h;
  if (!Box::is_valid(x1, y1, x2, y2)) return std::nullopt;
  return Box(x1, y1, x2, y2);
}

std::optional<Box> decode_box(const Box& anchor, const BoxDelta& d, const VideoMeta& image) {
  const auto raw = decode_box_unclipped(anchor, d);
  if (!raw) return std::nullopt;
  const double w = image.width, h = image.height;
  const double x1 = std::clamp(raw->x1(), 0.0, w), y1 = std::clamp(raw->y1(), 0.0, h);
  const double x2 = std::clamp(raw->x2(), 0.0, w), y2 = std::clamp(raw->y2(), 0.0, h);
  if (!Box::is_valid(x1, y1, x2, y2)) return std::nullopt;
  return Box(x1, y1, x2, y2);
}

SegmentDelta encode_segment(const SegmentAnchor& anchor, const Segment& gt) {
  const SegmentAnchor g(gt);
  return {(g.center - anchor.center) / anchor.length, std::log(g.length / anchor.length)};
}

std::pair<double, double> decode_segment_span(const SegmentAnchor& anchor, const SegmentDelta& d) {
  const double c = anchor.center + d.tc * anchor.length;
  const double l = anchor.length * std::exp(d.tl);
  return {c - 0.5 * l, c + 0.5 * l};
}

std::optional<Segment> decode_segment(const SegmentAnchor& anchor, const SegmentDelta& d,
                                      int num_frames) {
  const auto [s, e] = decode_segment_span(anchor, d);
  if (!std::isfinite(s) || !std::isfinite(e)) return std::nullopt;
  const double hi = static_cast<double>(num_frames);
  const double start = std::clamp(std::round(s), 0.0, hi);
  const double end = std::clamp(std::round(e), 0.0, hi);
  if (!(end > start)) return std::nullopt;
  return Segment(static_cast<int>(start), static_cast<int>(end));
}

double segment_anchor_iou(const SegmentAnchor& a, const Segment& s) {
  const double inter = std::max(std::min(a.end(), double(s.end())) -
                                    std::max(a.start(), double(s.start())),
                                0.0);
  return inter / (a.length + s.length() - inter);
}

std::vector<AnchorLabel> assign_anchor_labels(std::span<const Box> anchors,
                                              std::span<const Box> gts, double pos_iou,
                                              double neg_iou) {
  const std::size_t n = anchors.size();
  std::vector<double> iou(n * gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    kernels::iou_one_to_many(gts[g], anchors, std::span<double>(iou.data() + g * n, n));
  }
  return labels_from_iou(iou, n, gts.size(), pos_iou, neg_iou);
}

std::vector<AnchorLabel> assign_anchor_labels(std::span<const SegmentAnchor> anchors,
                                              std::span<const Segment> gts, double pos_iou,
                                              double neg_iou) {
  const std::size_t n = anchors.size();
  std::vector<double> iou(n * gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    for (std::size_t a = 0; a < n; ++a) iou[g * n + a] = segment_anchor_iou(anchors[a], gts[g]);
  }
  return labels_from_iou(iou, n, gts.size(), pos_iou, neg_iou);
}

double featuremap_center(int k, int stride) { return k * stride + 0.5 * (stride - 1); }

std::vector<FeaturemapTarget> map_gt_to_featuremaps(std::span<const Tube> tubes, int num_frames,
                                                    int stride) {
  if (num_frames <= 0 || stride <= 0) throw std::invalid_argument("invalid temporal layout");
  const int maps = (num_frames + stride - 1) / stride;
  std::vector<FeaturemapTarget> out;
  for (int k = 0; k < maps; ++k) {
    const double c = featuremap_center(k, stride);
    if (c > num_frames - 1) break;
    for (std::size_t t = 0; t < tubes.size(); ++t) {
      const Segment& seg = tubes[t].segment();
      if (seg.end() > num_frames) throw std::invalid_argument("tube exceeds video length");
      if (!(c >= seg.start() && c < seg.end())) continue;
      // Nearest frame with ties to the earlier one.
      const int frame = std::clamp(static_cast<int>(std::ceil(c - 0.5)), seg.start(), seg.end() - 1);
      out.push_back({k, frame, t, tubes[t].box_at(frame)});
    }
  }
  return out;
}

std::vector<FeaturemapTarget> map_gt_to_featuremaps(const Tube& tube, int num_frames, int stride) {
  return map_gt_to_featuremaps(std::span<const Tube>(&tube, 1), num_frames, stride);
}

}  // namespace star
