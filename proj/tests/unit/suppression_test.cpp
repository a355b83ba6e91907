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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "test_util.hpp"

namespace star {
namespace {

ScoredBox sb(double x1, double y1, double x2, double y2, double s) {
  return {Box(x1, y1, x2, y2), s, 0};
}

ScoredSegment ss(int a, int b, double s, std::optional<int> cls = std::nullopt) {
  return {Segment(a, b), s, cls};
}

// Sort by score, sweep, keep what no kept box overlaps beyond the threshold.
std::vector<std::size_t> oracle_nms(const std::vector<ScoredBox>& in, double t) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto pos = order.begin();
    while (pos != order.end()) {
      const ScoredBox& o = in[*pos];
      if (in[i].score > o.score || (in[i].score == o.score && in[i].box.x1() < o.box.x1())) break;
      ++pos;
    }
    order.insert(pos, i);
  }
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool ok = true;
    for (std::size_t k : kept) ok = ok && !(box_iou(in[i].box, in[k].box) > t);
    if (ok) kept.push_back(i);
  }
  return kept;
}

TEST(NmsBoxesTest, Examples) {
  EXPECT_TRUE(nms_boxes({}, 0.5).empty());
  const std::vector<ScoredBox> one{sb(0, 0, 1, 1, 0.3)};
  EXPECT_EQ(nms_boxes(one, 0.5), one);
  const std::vector<ScoredBox> three{sb(0, 0, 10, 10, .9), sb(1, 1, 11, 11, .8),
                                     sb(20, 20, 30, 30, .7)};
  EXPECT_EQ(nms_box_indices(three, 0.5), (std::vector<std::size_t>{0, 2}));
}

TEST(NmsBoxesTest, EqualToThresholdSurvives) {
  // IoU exactly 1/3.
  const std::vector<ScoredBox> in{sb(0, 0, 10, 10, .9), sb(5, 0, 15, 10, .8)};
  EXPECT_EQ(nms_boxes(in, 1.0 / 3.0).size(), 2u);
  EXPECT_EQ(nms_boxes(in, 0.33).size(), 1u);
}

TEST(NmsBoxesTest, RejectsBadInput) {
  EXPECT_THROW(nms_boxes({}, 0.0), std::invalid_argument);
  EXPECT_THROW(nms_boxes({}, 1.0), std::invalid_argument);
  std::vector<ScoredBox> mixed{sb(0, 0, 1, 1, .5), sb(0, 0, 1, 1, .5)};
  mixed[1].frame = 3;
  EXPECT_THROW(nms_boxes(mixed, 0.5), std::invalid_argument);
}

TEST(NmsBoxesTest, MatchesOracleAndIsIdempotent) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n(0, 10);
  std::uniform_int_distribution<int> score(0, 5);  // coarse, to force ties
  std::uniform_real_distribution<double> thr(0.05, 0.95);
  for (int it = 0; it < 3000; ++it) {
    std::vector<ScoredBox> in;
    const int m = n(rng);
    for (int i = 0; i < m; ++i) in.push_back({testing::random_grid_box(rng, 12, 1.0), score(rng) / 5.0, 0});
    const double t = thr(rng);
    const auto got = nms_box_indices(in, t);
    ASSERT_EQ(got, oracle_nms(in, t));
    const auto once = nms_boxes(in, t);
    EXPECT_EQ(nms_boxes(once, t), once);
    for (std::size_t i = 0; i < once.size(); ++i) {
      for (std::size_t j = i + 1; j < once.size(); ++j) EXPECT_LE(box_iou(once[i].box, once[j].box), t);
    }
  }
}

TEST(NmsSegmentsTest, Examples) {
  EXPECT_TRUE(nms_segments({}, 0.4).empty());
  const std::vector<ScoredSegment> overlap{ss(0, 10, .9), ss(2, 12, .8)};
  EXPECT_EQ(nms_segments(overlap, 0.4), (std::vector<ScoredSegment>{ss(0, 10, .9)}));
  const std::vector<ScoredSegment> apart{ss(0, 10, .9), ss(20, 30, .8)};
  EXPECT_EQ(nms_segments(apart, 0.4).size(), 2u);
}

TEST(NmsSegmentsTest, PerClass) {
  const std::vector<ScoredSegment> in{ss(0, 10, .9, 1), ss(2, 12, .8, 2), ss(1, 11, .7, 1)};
  const auto out = nms_segments(in, 0.4);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], in[0]);
  EXPECT_EQ(out[1], in[1]);
}

TEST(TopKTest, Examples) {
  const std::vector<ScoredBox> two{sb(0, 0, 1, 1, .2), sb(0, 0, 1, 1, .4)};
  EXPECT_EQ(top_k(two, 5).size(), 2u);
  const std::vector<ScoredSegment> s{ss(0, 5, .3), ss(1, 5, .9), ss(2, 5, .5)};
  const auto k2 = top_k(s, 2);
  ASSERT_EQ(k2.size(), 2u);
  EXPECT_EQ(k2[0].score, .9);
  EXPECT_EQ(k2[1].score, .5);
  EXPECT_THROW(top_k(s, 0), std::invalid_argument);
}

TEST(TopKTest, TiesByCoordinateUnderEveryPermutation) {
  std::vector<ScoredSegment> s{ss(7, 9, .5), ss(2, 9, .5), ss(4, 9, .5)};
  std::sort(s.begin(), s.end(), [](auto& a, auto& b) { return a.segment < b.segment; });
  do {
    const auto k = top_k(s, 2);
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0].segment.start(), 2);
    EXPECT_EQ(k[1].segment.start(), 4);
  } while (std::next_permutation(s.begin(), s.end(),
                                 [](auto& a, auto& b) { return a.segment < b.segment; }));
}

}  // namespace
}  // namespace star
