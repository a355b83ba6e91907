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

#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace star {

/// Axis-aligned rectangle in continuous pixel coordinates.
///
/// Edges are exclusive: area is (x2 - x1) * (y2 - y1) with no "+1" term.
/// A Box is always non-degenerate and finite; the constructor throws
/// std::invalid_argument otherwise.
class Box {
 public:
  Box(double x1, double y1, double x2, double y2);

  double x1() const { return x1_; }
  double y1() const { return y1_; }
  double x2() const { return x2_; }
  double y2() const { return y2_; }

  double width() const { return x2_ - x1_; }
  double height() const { return y2_ - y1_; }
  double center_x() const { return x1_ + 0.5 * width(); }
  double center_y() const { return y1_ + 0.5 * height(); }

  /// True when every edge of `other` lies within this box (inclusive).
  bool contains(const Box& other) const;

  static bool is_valid(double x1, double y1, double x2, double y2);

  friend bool operator==(const Box&, const Box&) = default;

 private:
  double x1_;
  double y1_;
  double x2_;
  double y2_;
};

// The SIMD kernels load boxes directly as four packed doubles.
static_assert(sizeof(Box) == 4 * sizeof(double));
static_assert(std::is_standard_layout_v<Box>);
static_assert(std::is_trivially_copyable_v<Box>);

/// Half-open interval of frame indices [start, end), 0-based.
class Segment {
 public:
  Segment(int start, int end);

  int start() const { return start_; }
  int end() const { return end_; }
  int length() const { return end_ - start_; }
  bool contains(int frame) const { return frame >= start_ && frame < end_; }

  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;

 private:
  int start_;
  int end_;
};

static_assert(sizeof(Segment) == 2 * sizeof(std::int32_t));

/// Class-labeled, scored action tube with exactly one box per frame.
class Tube {
 public:
  Tube(int class_id, double score, Segment segment, std::vector<Box> boxes);

  int class_id() const { return class_id_; }
  double score() const { return score_; }
  const Segment& segment() const { return segment_; }
  const std::vector<Box>& boxes() const { return boxes_; }

  /// Box at an absolute frame index; the frame must lie in segment().
  const Box& box_at(int frame) const;

  void set_score(double score) { score_ = score; }
  void set_class_id(int class_id) { class_id_ = class_id; }

  friend bool operator==(const Tube&, const Tube&) = default;

 private:
  int class_id_;
  double score_;
  Segment segment_;
  std::vector<Box> boxes_;
};

struct VideoMeta {
  std::string video_id;
  int num_frames = 0;
  int width = 0;
  int height = 0;
  double fps = 0.0;

  /// Throws std::invalid_argument naming the video when a field is out of range.
  void validate() const;

  friend bool operator==(const VideoMeta&, const VideoMeta&) = default;
};

/// Ground-truth tubes of one video together with its metadata.
struct VideoAnnotation {
  VideoMeta meta;
  std::vector<Tube> tubes;

  /// Checks the metadata and that every tube lies within [0, num_frames).
  void validate() const;

  friend bool operator==(const VideoAnnotation&, const VideoAnnotation&) = default;
};

double box_area(const Box& b);
double box_iou(const Box& a, const Box& b);

/// Frames shared by both segments; length 0 when they are disjoint.
int segment_intersection(const Segment& a, const Segment& b);
double segment_iou(const Segment& a, const Segment& b);

/// Temporal IoU of the segments times the mean spatial IoU over the frames
/// present in both tubes. Zero when the segments do not overlap.
double tube_st_iou(const Tube& a, const Tube& b);

/// Smallest box enclosing every input. Throws std::invalid_argument on empty input.
Box union_box(std::span<const Box> boxes);

}  // namespace star
