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
#include "star/kernels.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "test_util.hpp"

namespace star::kernels {
namespace {

std::vector<Box> mixed_boxes(std::mt19937_64& rng, std::size_t n, const Box& ref) {
  std::vector<Box> out;
  std::uniform_int_distribution<int> kind(0, 5);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0: out.push_back(ref); break;                                      // identical
      case 1: out.emplace_back(ref.x2(), ref.y1(), ref.x2() + 3, ref.y2()); break;  // touching
      case 2: out.emplace_back(-0.0, -0.0, 1e-3, 1e-3); break;               // signed zeros
      case 3: out.push_back(testing::random_grid_box(rng, 30, 0.5)); break;
      default: out.push_back(testing::random_box(rng)); break;
    }
  }
  return out;
}

void expect_bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a[i]), std::bit_cast<std::uint64_t>(b[i]))
        << "index " << i << ": " << a[i] << " vs " << b[i];
  }
}

TEST(KernelsTest, ScalarAlwaysAvailable) {
  const auto all = available_backends();
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front(), Backend::kScalar);
  EXPECT_EQ(parse_backend("avx2"), Backend::kAvx2);
  EXPECT_EQ(parse_backend("bogus"), std::nullopt);
  EXPECT_EQ(backend_name(Backend::kNeon), "neon");
}

TEST(KernelsTest, ScalarMatchesReference) {
  std::mt19937_64 rng(1);
  const KernelTable& t = table_for(Backend::kScalar);
  const Box ref = testing::random_box(rng);
  const auto boxes = mixed_boxes(rng, 200, ref);
  std::vector<double> out(boxes.size());
  t.iou_one_to_many(ref, boxes, out);
  for (std::size_t i = 0; i < boxes.size(); ++i) EXPECT_EQ(out[i], box_iou(ref, boxes[i]));
}

TEST(KernelsTest, BackendsAreBitIdentical) {
  const KernelTable& scalar = table_for(Backend::kScalar);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> sd(0, 200), ld(1, 120);
  for (Backend be : available_backends()) {
    SCOPED_TRACE(std::string(backend_name(be)));
    const KernelTable& t = table_for(be);
    for (std::size_t n = 0; n < 70; ++n) {  // every tail length
      const Box ref = testing::random_box(rng);
      const auto a = mixed_boxes(rng, n, ref);
      const auto b = mixed_boxes(rng, n, ref);
      std::vector<double> x(n), y(n);
      scalar.iou_one_to_many(ref, a, x);
      t.iou_one_to_many(ref, a, y);
      expect_bits_equal(x, y);
      scalar.iou_pairwise(a, b, x);
      t.iou_pairwise(a, b, y);
      expect_bits_equal(x, y);

      std::vector<Segment> segs;
      for (std::size_t i = 0; i < n; ++i) {
        const int s = sd(rng);
        segs.emplace_back(s, s + ld(rng));
      }
      const Segment sref(sd(rng), 250);
      scalar.segment_iou_one_to_many(sref, segs, x);
      t.segment_iou_one_to_many(sref, segs, y);
      expect_bits_equal(x, y);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(x[i], segment_iou(sref, segs[i]));
    }
  }
}

TEST(KernelsTest, DispatchFollowsOverride) {
  const Backend before = active_backend();
  for (Backend be : available_backends()) {
    ASSERT_TRUE(set_backend(be));
    EXPECT_EQ(active_backend(), be);
  }
  set_backend(before);
#if !defined(STAR_HAVE_NEON_KERNELS)
  EXPECT_FALSE(set_backend(Backend::kNeon));
  EXPECT_THROW(table_for(Backend::kNeon), std::invalid_argument);
#endif
}

}  // namespace
}  // namespace star::kernels
