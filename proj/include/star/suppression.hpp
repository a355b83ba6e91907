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
#include <vector>

#include "star/geometry.hpp"

namespace star {

/// A regressed box with its class-agnostic actionness score.
struct ScoredBox {
  Box box;
  double score = 0.0;
  int frame = 0;

  friend bool operator==(const ScoredBox&, const ScoredBox&) = default;
};

/// A temporal proposal or classified segment. Suppression is per class when
/// class_id is set; unlabeled segments form their own group.
struct ScoredSegment {
  Segment segment;
  double score = 0.0;
  std::optional<int> class_id;

  friend bool operator==(const ScoredSegment&, const ScoredSegment&) = default;
};

// Ranking used by every routine here: descending score, then smaller x1
// (boxes) or start (segments), then earlier input position.
std::vector<std::size_t> rank_order(std::span<const ScoredBox> items);
std::vector<std::size_t> rank_order(std::span<const ScoredSegment> items);

/// Greedy NMS over boxes of a single frame. A candidate is suppressed when
/// its IoU with an already kept box is strictly greater than `threshold`.
/// Returns input indices of the survivors in rank order.
std::vector<std::size_t> nms_box_indices(std::span<const ScoredBox> candidates, double threshold);
std::vector<ScoredBox> nms_boxes(std::span<const ScoredBox> candidates, double threshold);

std::vector<std::size_t> nms_segment_indices(std::span<const ScoredSegment> candidates,
                                             double threshold);
std::vector<ScoredSegment> nms_segments(std::span<const ScoredSegment> candidates,
                                        double threshold);

std::vector<ScoredBox> top_k(std::span<const ScoredBox> candidates, std::size_t k);
std::vector<ScoredSegment> top_k(std::span<const ScoredSegment> candidates, std::size_t k);

}  // namespace star
