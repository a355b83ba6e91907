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

// Batched IoU kernels with a scalar reference and vector variants selected
// at runtime. Every backend performs the same IEEE operations in the same
// order as the scalar code, so results are bit-identical across backends.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "star/geometry.hpp"

namespace star::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

/// Backends compiled into this binary and supported by the running CPU.
std::vector<Backend> available_backends();

/// The backend used by the dispatching entry points. Chosen on first use:
/// STAR_SIMD (scalar|avx2|neon) if set and available, else the widest one.
Backend active_backend();

/// Overrides the dispatch choice. Returns false if `b` is unavailable.
bool set_backend(Backend b);

// out[i] = box_iou(ref, boxes[i]). out.size() must equal boxes.size().
void iou_one_to_many(const Box& ref, std::span<const Box> boxes, std::span<double> out);

// out[i] = box_iou(a[i], b[i]).
void iou_pairwise(std::span<const Box> a, std::span<const Box> b, std::span<double> out);

// out[i] = segment_iou(ref, segs[i]).
void segment_iou_one_to_many(const Segment& ref, std::span<const Segment> segs,
                             std::span<double> out);

/// Per-backend entry points, exposed for equivalence tests and benchmarks.
struct KernelTable {
  void (*iou_one_to_many)(const Box&, std::span<const Box>, std::span<double>);
  void (*iou_pairwise)(std::span<const Box>, std::span<const Box>, std::span<double>);
  void (*segment_iou_one_to_many)(const Segment&, std::span<const Segment>,
                                  std::span<double>);
};

/// Table for `b`; throws std::invalid_argument if it is not available.
const KernelTable& table_for(Backend b);

namespace detail {
const KernelTable& scalar_table();
#if defined(STAR_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif
#if defined(STAR_HAVE_NEON_KERNELS)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace star::kernels
