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

#include "star/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "star/kernels.hpp"

namespace star {

bool Box::is_valid(double x1, double y1, double x2, double y2) {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2) &&
         x2 > x1 && y2 > y1;
}

Box::Box(double x1, double y1, double x2, double y2) : x1_(x1), y1_(y1), x2_(x2), y2_(y2) {
  if (!is_valid(x1, y1, x2, y2)) {
    std::ostringstream os;
    os << "degenerate or non-finite box (" << x1 << ", " << y1 << ", " << x2 << ", " << y2 << ")";
    throw std::invalid_argument(os.str());
  }
}

bool Box::contains(const Box& other) const {
  return other.x1_ >= x1_ && other.y1_ >= y1_ && other.x2_ <= x2_ && other.y2_ <= y2_;
}

Segment::Segment(int start, int end) : start_(start), end_(end) {
  if (start < 0 || end <= start) {
    throw std::invalid_argument("invalid segment [" + std::to_string(start) + ", " +
                                std::to_string(end) + ")");
  }
}

Tube::Tube(int class_id, double score, Segment segment, std::vector<Box> boxes)
    : class_id_(class_id), score_(score), segment_(segment), boxes_(std::move(boxes)) {
  if (static_cast<int>(boxes_.size()) != segment_.length()) {
    throw std::invalid_argument("tube has " + std::to_string(boxes_.size()) +
                                " boxes for a segment of length " +
                                std::to_string(segment_.length()));
  }
}

const Box& Tube::box_at(int frame) const {
  if (!segment_.contains(frame)) {
    throw std::out_of_range("frame " + std::to_string(frame) + " outside tube segment");
  }
  return boxes_[static_cast<std::size_t>(frame - segment_.start())];
}

void VideoMeta::validate() const {
  if (video_id.empty()) throw std::invalid_argument("video metadata without video_id");
  if (num_frames <= 0 || width <= 0 || height <= 0 || !(fps > 0.0) || !std::isfinite(fps)) {
    throw std::invalid_argument("invalid metadata for video '" + video_id + "'");
  }
}

void VideoAnnotation::validate() const {
  meta.validate();
  for (const Tube& t : tubes) {
    if (t.segment().end() > meta.num_frames) {
      throw std::invalid_argument("tube [" + std::to_string(t.segment().start()) + ", " +
                                  std::to_string(t.segment().end()) + ") exceeds the " +
                                  std::to_string(meta.num_frames) + " frames of video '" +
                                  meta.video_id + "'");
    }
  }
}

double box_area(const Box& b) { return (b.x2() - b.x1()) * (b.y2() - b.y1()); }

double box_iou(const Box& a, const Box& b) {
  const double iw = std::max(std::min(a.x2(), b.x2()) - std::max(a.x1(), b.x1()), 0.0);
  const double ih = std::max(std::min(a.y2(), b.y2()) - std::max(a.y1(), b.y1()), 0.0);
  const double inter = iw * ih;
  const double uni = box_area(a) + box_area(b) - inter;
  return inter / uni;
}

int segment_intersection(const Segment& a, const Segment& b) {
  return std::max(std::min(a.end(), b.end()) - std::max(a.start(), b.start()), 0);
}

double segment_iou(const Segment& a, const Segment& b) {
  const int inter = segment_intersection(a, b);
  const int uni = a.length() + b.length() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double tube_st_iou(const Tube& a, const Tube& b) {
  const int first = std::max(a.segment().start(), b.segment().start());
  const int last = std::min(a.segment().end(), b.segment().end());
  if (last <= first) return 0.0;

  const double temporal = segment_iou(a.segment(), b.segment());
  const int n = last - first;
  const Box* pa = a.boxes().data() + (first - a.segment().start());
  const Box* pb = b.boxes().data() + (first - b.segment().start());

  // Chunked so the spatial sum is accumulated in frame order without a heap buffer.
  constexpr int kChunk = 64;
  std::array<double, kChunk> buf{};
  double sum = 0.0;
  for (int off = 0; off < n; off += kChunk) {
    const int m = std::min(kChunk, n - off);
    const auto count = static_cast<std::size_t>(m);
    kernels::iou_pairwise({pa + off, count}, {pb + off, count}, {buf.data(), count});
    for (int i = 0; i < m; ++i) sum += buf[static_cast<std::size_t>(i)];
  }
  return temporal * (sum / static_cast<double>(n));
}

Box union_box(std::span<const Box> boxes) {
  if (boxes.empty()) throw std::invalid_argument("union_box of an empty list");
  double x1 = boxes[0].x1(), y1 = boxes[0].y1(), x2 = boxes[0].x2(), y2 = boxes[0].y2();
  for (const Box& b : boxes.subspan(1)) {
    x1 = std::min(x1, b.x1());
    y1 = std::min(y1, b.y1());
    x2 = std::max(x2, b.x2());
    y2 = std::max(y2, b.y2());
  }
  return Box(x1, y1, x2, y2);
}

}  // namespace star
