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
#include "star/suppression.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "star/kernels.hpp"

namespace star {
namespace {

void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument("NMS threshold must lie in (0, 1), got " + std::to_string(t));
  }
}

template <typename T, typename Key>
std::vector<std::size_t> ranked(std::span<const T> items, Key key) {
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (items[a].score != items[b].score) return items[a].score > items[b].score;
    return key(items[a]) < key(items[b]);
  });
  return idx;
}

template <typename T>
std::vector<T> gather(std::span<const T> items, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(items[i]);
  return out;
}

// Greedy sweep over items already in rank order; iou_fn(i, out) fills IoU of
// item i against items i+1.. into out.
template <typename IouFn>
std::vector<std::size_t> greedy_sweep(std::size_t n, double threshold, IouFn iou_fn) {
  std::vector<char> suppressed(n, 0);
  std::vector<double> ious(n);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (suppressed[i]) continue;
    keep.push_back(i);
    const std::size_t rest = n - i - 1;
    if (rest == 0) break;
    iou_fn(i, std::span<double>(ious.data(), rest));
    for (std::size_t j = 0; j < rest; ++j) {
      if (ious[j] > threshold) suppressed[i + 1 + j] = 1;
    }
  }
  return keep;
}

}  // namespace

std::vector<std::size_t> rank_order(std::span<const ScoredBox> items) {
  return ranked(items, [](const ScoredBox& b) { return b.box.x1(); });
}

std::vector<std::size_t> rank_order(std::span<const ScoredSegment> items) {
  return ranked(items, [](const ScoredSegment& s) { return s.segment.start(); });
}

std::vector<std::size_t> nms_box_indices(std::span<const ScoredBox> candidates, double threshold) {
  check_threshold(threshold);
  if (candidates.empty()) return {};
  const int frame = candidates.front().frame;
  for (const ScoredBox& c : candidates) {
    if (c.frame != frame) throw std::invalid_argument("nms_boxes expects boxes from one frame");
  }
  const auto order = rank_order(candidates);
  std::vector<Box> boxes;
  boxes.reserve(order.size());
  for (std::size_t i : order) boxes.push_back(candidates[i].box);

  const auto keep = greedy_sweep(boxes.size(), threshold, [&](std::size_t i, std::span<double> out) {
    kernels::iou_one_to_many(boxes[i], std::span<const Box>(boxes).subspan(i + 1), out);
  });
  std::vector<std::size_t> result;
  result.reserve(keep.size());
  for (std::size_t k : keep) result.push_back(order[k]);
  return result;
}

std::vector<ScoredBox> nms_boxes(std::span<const ScoredBox> candidates, double threshold) {
  return gather(candidates, nms_box_indices(candidates, threshold));
}

std::vector<std::size_t> nms_segment_indices(std::span<const ScoredSegment> candidates,
                                             double threshold) {
  check_threshold(threshold);
  const auto order = rank_order(candidates);

  // Group rank-ordered positions by class; std::nullopt sorts first.
  std::map<std::optional<int>, std::vector<std::size_t>> groups;
  for (std::size_t i : order) groups[candidates[i].class_id].push_back(i);

  std::vector<char> kept(candidates.size(), 0);
  for (const auto& [cls, members] : groups) {
    std::vector<Segment> segs;
    segs.reserve(members.size());
    for (std::size_t i : members) segs.push_back(candidates[i].segment);
    const auto keep =
        greedy_sweep(segs.size(), threshold, [&](std::size_t i, std::span<double> out) {
          kernels::segment_iou_one_to_many(segs[i], std::span<const Segment>(segs).subspan(i + 1),
                                           out);
        });
    for (std::size_t k : keep) kept[members[k]] = 1;
  }
  std::vector<std::size_t> result;
  for (std::size_t i : order) {
    if (kept[i]) result.push_back(i);
  }
  return result;
}

std::vector<ScoredSegment> nms_segments(std::span<const ScoredSegment> candidates,
                                        double threshold) {
  return gather(candidates, nms_segment_indices(candidates, threshold));
}

std::vector<ScoredBox> top_k(std::span<const ScoredBox> candidates, std::size_t k) {
  if (k == 0) throw std::invalid_argument("top_k requires k >= 1");
  auto order = rank_order(candidates);
  if (order.size() > k) order.resize(k);
  return gather(candidates, order);
}

std::vector<ScoredSegment> top_k(std::span<const ScoredSegment> candidates, std::size_t k) {
  if (k == 0) throw std::invalid_argument("top_k requires k >= 1");
  auto order = rank_order(candidates);
  if (order.size() > k) order.resize(k);
  return gather(candidates, order);
}

}  // namespace star
