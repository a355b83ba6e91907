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

#include <algorithm>
#include <cstddef>

#include "star/kernels.hpp"

namespace star::kernels::detail {
namespace {

// Reference arithmetic. Vector backends reproduce this operation order exactly.
inline double iou_scalar(const Box& a, const Box& b) {
  const double iw = std::max(std::min(a.x2(), b.x2()) - std::max(a.x1(), b.x1()), 0.0);
  const double ih = std::max(std::min(a.y2(), b.y2()) - std::max(a.y1(), b.y1()), 0.0);
  const double inter = iw * ih;
  const double area_a = (a.x2() - a.x1()) * (a.y2() - a.y1());
  const double area_b = (b.x2() - b.x1()) * (b.y2() - b.y1());
  return inter / (area_a + area_b - inter);
}

void one_to_many(const Box& ref, std::span<const Box> boxes, std::span<double> out) {
  for (std::size_t i = 0; i < boxes.size(); ++i) out[i] = iou_scalar(ref, boxes[i]);
}

void pairwise(std::span<const Box> a, std::span<const Box> b, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = iou_scalar(a[i], b[i]);
}

void segments_one_to_many(const Segment& ref, std::span<const Segment> segs,
                          std::span<double> out) {
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    const int inter = std::max(std::min(ref.end(), s.end()) - std::max(ref.start(), s.start()), 0);
    const int uni = ref.length() + s.length() - inter;
    out[i] = static_cast<double>(inter) / static_cast<double>(uni);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{&one_to_many, &pairwise, &segments_one_to_many};
  return table;
}

}  // namespace star::kernels::detail
