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

// Compiled for the baseline ISA; each function opts into AVX2 with a target
// attribute and is only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cstddef>

#include "star/kernels.hpp"

namespace star::kernels::detail {
namespace {

#define STAR_AVX2 __attribute__((target("avx2")))

// std::min(a, b) == (b < a) ? b : a, which is _mm256_min_pd(b, a); likewise
// for max. Keeping that operand order makes signed zeros match the scalar path.
STAR_AVX2 inline __m256d min_like_std(__m256d a, __m256d b) { return _mm256_min_pd(b, a); }
STAR_AVX2 inline __m256d max_like_std(__m256d a, __m256d b) { return _mm256_max_pd(b, a); }

struct Soa4 {
  __m256d x1, y1, x2, y2;
};

// Four packed boxes (AoS) to coordinate lanes.
STAR_AVX2 inline Soa4 load_transpose(const Box* p) {
  const double* d = reinterpret_cast<const double*>(p);
  const __m256d r0 = _mm256_loadu_pd(d);
  const __m256d r1 = _mm256_loadu_pd(d + 4);
  const __m256d r2 = _mm256_loadu_pd(d + 8);
  const __m256d r3 = _mm256_loadu_pd(d + 12);
  const __m256d t0 = _mm256_unpacklo_pd(r0, r1);
  const __m256d t1 = _mm256_unpackhi_pd(r0, r1);
  const __m256d t2 = _mm256_unpacklo_pd(r2, r3);
  const __m256d t3 = _mm256_unpackhi_pd(r2, r3);
  return {_mm256_permute2f128_pd(t0, t2, 0x20), _mm256_permute2f128_pd(t1, t3, 0x20),
          _mm256_permute2f128_pd(t0, t2, 0x31), _mm256_permute2f128_pd(t1, t3, 0x31)};
}

STAR_AVX2 inline __m256d iou4(const Soa4& a, const Soa4& b) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d iw = max_like_std(
      _mm256_sub_pd(min_like_std(a.x2, b.x2), max_like_std(a.x1, b.x1)), zero);
  const __m256d ih = max_like_std(
      _mm256_sub_pd(min_like_std(a.y2, b.y2), max_like_std(a.y1, b.y1)), zero);
  const __m256d inter = _mm256_mul_pd(iw, ih);
  const __m256d area_a = _mm256_mul_pd(_mm256_sub_pd(a.x2, a.x1), _mm256_sub_pd(a.y2, a.y1));
  const __m256d area_b = _mm256_mul_pd(_mm256_sub_pd(b.x2, b.x1), _mm256_sub_pd(b.y2, b.y1));
  const __m256d uni = _mm256_sub_pd(_mm256_add_pd(area_a, area_b), inter);
  return _mm256_div_pd(inter, uni);
}

STAR_AVX2 void one_to_many(const Box& ref, std::span<const Box> boxes, std::span<double> out) {
  const Soa4 r{_mm256_set1_pd(ref.x1()), _mm256_set1_pd(ref.y1()), _mm256_set1_pd(ref.x2()),
               _mm256_set1_pd(ref.y2())};
  const std::size_t n = boxes.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i, iou4(r, load_transpose(boxes.data() + i)));
  }
  if (i < n) scalar_table().iou_one_to_many(ref, boxes.subspan(i), out.subspan(i));
}

STAR_AVX2 void pairwise(std::span<const Box> a, std::span<const Box> b, std::span<double> out) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i,
                     iou4(load_transpose(a.data() + i), load_transpose(b.data() + i)));
  }
  if (i < n) scalar_table().iou_pairwise(a.subspan(i), b.subspan(i), out.subspan(i));
}

STAR_AVX2 void segments_one_to_many(const Segment& ref, std::span<const Segment> segs,
                          std::span<double> out) {
  const __m128i rs = _mm_set1_epi32(ref.start());
  const __m128i re = _mm_set1_epi32(ref.end());
  const __m128i rl = _mm_set1_epi32(ref.length());
  const __m128i zero = _mm_setzero_si128();
  // (s0 e0 s1 e1 s2 e2 s3 e3) -> (s0 s1 s2 s3 | e0 e1 e2 e3)
  const __m256i deinterleave = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  const std::size_t n = segs.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i raw = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(segs.data() + i));
    const __m256i p = _mm256_permutevar8x32_epi32(raw, deinterleave);
    const __m128i s = _mm256_castsi256_si128(p);
    const __m128i e = _mm256_extracti128_si256(p, 1);
    const __m128i inter =
        _mm_max_epi32(_mm_sub_epi32(_mm_min_epi32(re, e), _mm_max_epi32(rs, s)), zero);
    const __m128i uni = _mm_sub_epi32(_mm_add_epi32(rl, _mm_sub_epi32(e, s)), inter);
    _mm256_storeu_pd(out.data() + i,
                     _mm256_div_pd(_mm256_cvtepi32_pd(inter), _mm256_cvtepi32_pd(uni)));
  }
  if (i < n) scalar_table().segment_iou_one_to_many(ref, segs.subspan(i), out.subspan(i));
}

#undef STAR_AVX2

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{&one_to_many, &pairwise, &segments_one_to_many};
  return table;
}

}  // namespace star::kernels::detail
