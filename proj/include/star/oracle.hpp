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

// Brute-force reference implementations used to check the library. They
// are written from the definitions alone and share no helpers with the
// metric or geometry code.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "star/geometry.hpp"

namespace star::oracle {

/// IoU by counting grid cells of side pitch. Box coordinates must be
/// multiples of pitch.
double iou_grid(const Box& a, const Box& b, double pitch);

/// Spatio-temporal tube IoU by enumerating every frame of either tube.
double tube_st_iou(const Tube& a, const Tube& b);

inline constexpr std::size_t kMaxDetections = 8;
inline constexpr std::size_t kMaxGroundTruth = 4;

/// Single-class AP: literal sweep over detections by descending score (input
/// order on ties), each claiming the best unmatched ground truth, then the
/// exact area under the interpolated PR staircase in rational arithmetic.
/// Throws std::length_error beyond kMaxDetections / kMaxGroundTruth.
/// nullopt when there is no ground truth.
std::optional<double> average_precision(std::span<const double> scores, std::size_t num_gts,
                                        const std::function<double(std::size_t, std::size_t)>& overlap,
                                        double alpha);

}  // namespace star::oracle
