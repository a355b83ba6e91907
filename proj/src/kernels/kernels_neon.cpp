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

#include <arm_neon.h>

#include <cstddef>

#include "star/kernels.hpp"

namespace star::kernels::detail {
namespace {

// Select-based min/max reproduce std::min/std::max exactly, signed zeros included.
inline float64x2_t min_like_std(float64x2_t a, float64x2_t b) {
  return vbslq_f64(vcltq_f64(b, a), b, a);
}
inline float64x2_t max_like_std(float64x2_t a, float64x2_t b) {
  return vbslq_f64(vcltq_f64(a, b), b, a);
}

struct Soa2 {
  float64x2_t x1, y1, x2, y2;
};

inline Soa2 load_transpose(const Box* p) {
  const double* d = reinterpret_cast<const double*>(p);
  const float64x2_t a_lo = vld1q_f64(d);      // a.x1 a.y1
  const float64x2_t a_hi = vld1q_f64(d + 2);  // a.x2 a.y2
  const float64x2_t b_lo = vld1q_f64(d + 4);
  const float64x2_t b_hi = vld1q_f64(d + 6);
  return {vzip1q_f64(a_lo, b_lo), vzip2q_f64(a_lo, b_lo), vzip1q_f64(a_hi, b_hi),
          vzip2q_f64(a_hi, b_hi)};
}

inline float64x2_t iou2(const Soa2& a, const Soa2& b) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t iw =
      max_like_std(vsubq_f64(min_like_std(a.x2, b.x2), max_like_std(a.x1, b.x1)), zero);
  const float64x2_t ih =
      max_like_std(vsubq_f64(min_like_std(a.y2, b.y2), max_like_std(a.y1, b.y1)), zero);
  const float64x2_t inter = vmulq_f64(iw, ih);
  const float64x2_t area_a = vmulq_f64(vsubq_f64(a.x2, a.x1), vsubq_f64(a.y2, a.y1));
  const float64x2_t area_b = vmulq_f64(vsubq_f64(b.x2, b.x1), vsubq_f64(b.y2, b.y1));
  return vdivq_f64(inter, vsubq_f64(vaddq_f64(area_a, area_b), inter));
}

void one_to_many(const Box& ref, std::span<const Box> boxes, std::span<double> out) {
  const Soa2 r{vdupq_n_f64(ref.x1()), vdupq_n_f64(ref.y1()), vdupq_n_f64(ref.x2()),
               vdupq_n_f64(ref.y2())};
  const std::size_t n = boxes.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out.data() + i, iou2(r, load_transpose(boxes.data() + i)));
  if (i < n) scalar_table().iou_one_to_many(ref, boxes.subspan(i), out.subspan(i));
}

void pairwise(std::span<const Box> a, std::span<const Box> b, std::span<double> out) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out.data() + i, iou2(load_transpose(a.data() + i), load_transpose(b.data() + i)));
  }
  if (i < n) scalar_table().iou_pairwise(a.subspan(i), b.subspan(i), out.subspan(i));
}

void segments_one_to_many(const Segment& ref, std::span<const Segment> segs,
                          std::span<double> out) {
  const int32x4_t rs = vdupq_n_s32(ref.start());
  const int32x4_t re = vdupq_n_s32(ref.end());
  const int32x4_t rl = vdupq_n_s32(ref.length());
  const int32x4_t zero = vdupq_n_s32(0);
  const std::size_t n = segs.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int32x4x2_t se = vld2q_s32(reinterpret_cast<const int32_t*>(segs.data() + i));
    const int32x4_t inter =
        vmaxq_s32(vsubq_s32(vminq_s32(re, se.val[1]), vmaxq_s32(rs, se.val[0])), zero);
    const int32x4_t uni = vsubq_s32(vaddq_s32(rl, vsubq_s32(se.val[1], se.val[0])), inter);
    const float64x2_t lo = vdivq_f64(vcvtq_f64_s64(vmovl_s32(vget_low_s32(inter))),
                                     vcvtq_f64_s64(vmovl_s32(vget_low_s32(uni))));
    const float64x2_t hi = vdivq_f64(vcvtq_f64_s64(vmovl_high_s32(inter)),
                                     vcvtq_f64_s64(vmovl_high_s32(uni)));
    vst1q_f64(out.data() + i, lo);
    vst1q_f64(out.data() + i + 2, hi);
  }
  if (i < n) scalar_table().segment_iou_one_to_many(ref, segs.subspan(i), out.subspan(i));
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{&one_to_many, &pairwise, &segments_one_to_many};
  return table;
}

}  // namespace star::kernels::detail
