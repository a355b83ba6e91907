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
#include "star/anchors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "test_util.hpp"

namespace star {
namespace {

TEST(SpatialAnchorsTest, UnitConfiguration) {
  SpatialAnchorGrid g;
  g.scales = {1.0};
  g.aspect_ratios = {1.0};
  const auto a = gen_spatial_anchors(g);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], Box(0, 0, 16, 16));
}

TEST(SpatialAnchorsTest, TwentyPerCell) {
  SpatialAnchorGrid g;
  EXPECT_EQ(gen_spatial_anchors(g).size(), 20u);
  g.feature_width = 3;
  g.feature_height = 2;
  const auto a = gen_spatial_anchors(g);
  ASSERT_EQ(a.size(), 120u);
  std::set<std::pair<double, double>> centers;
  for (const Box& b : a) centers.insert({std::round(b.center_x() * 1e6) / 1e6, std::round(b.center_y() * 1e6) / 1e6});
  const std::set<std::pair<double, double>> want{{8, 8}, {24, 8}, {40, 8}, {8, 24}, {24, 24}, {40, 24}};
  EXPECT_EQ(centers, want);
  // Area (scale * stride)^2 and height / width == ratio.
  EXPECT_NEAR(box_area(a[0]), 32.0 * 32.0, 1e-9);
  EXPECT_NEAR(a[0].height() / a[0].width(), 1.0 / 3.0, 1e-12);
}

TEST(SpatialAnchorsTest, GridForImage) {
  const auto g = SpatialAnchorGrid::for_image(320, 240);
  EXPECT_EQ(g.feature_width, 20);
  EXPECT_EQ(g.feature_height, 15);
  EXPECT_EQ(SpatialAnchorGrid::for_image(330, 10).feature_width, 21);
  EXPECT_EQ(gen_spatial_anchors(g).size(), 20u * 15u * 20u);
}

TEST(TemporalAnchorsTest, Layout) {
  const auto s = TemporalAnchorSet::for_video(20, {2.0, 4.0});
  EXPECT_EQ(s.num_positions, 3);
  const auto a = gen_temporal_anchors(s);
  ASSERT_EQ(a.size(), 6u);
  EXPECT_EQ(a[0].center, 4.0);
  EXPECT_EQ(a[0].length, 16.0);
  EXPECT_EQ(a[5].center, 20.0);
  EXPECT_EQ(a[5].length, 32.0);
}

TEST(BoxCodecTest, Examples) {
  const Box a(0, 0, 10, 10);
  const BoxDelta z = encode_box(a, a);
  EXPECT_EQ(z.tx, 0.0);
  EXPECT_EQ(z.tw, 0.0);
  const BoxDelta d = encode_box(a, Box(5, 5, 15, 15));
  EXPECT_EQ(d.tx, 0.5);
  EXPECT_EQ(d.ty, 0.5);
  EXPECT_EQ(d.tw, 0.0);
  EXPECT_EQ(d.th, 0.0);
  const auto up = decode_box_unclipped(a, {0, 0, std::log(2.0), std::log(2.0)});
  ASSERT_TRUE(up);
  EXPECT_NEAR(up->x1(), -5, 1e-12);
  EXPECT_NEAR(up->y2(), 15, 1e-12);
  const auto clipped = decode_box(a, {0, 0, std::log(2.0), std::log(2.0)}, {"v", 1, 12, 12, 1.0});
  ASSERT_TRUE(clipped);
  EXPECT_EQ(*clipped, Box(0, 0, 12, 12));
  EXPECT_FALSE(decode_box(a, {5.0, 0, 0, 0}, {"v", 1, 12, 12, 1.0}));  // lands outside the image
}

TEST(BoxCodecTest, RoundTrip) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const Box anchor = testing::random_box(rng), gt = testing::random_box(rng);
    const auto back = decode_box_unclipped(anchor, encode_box(anchor, gt));
    ASSERT_TRUE(back);
    EXPECT_NEAR(back->x1(), gt.x1(), 1e-9);
    EXPECT_NEAR(back->y1(), gt.y1(), 1e-9);
    EXPECT_NEAR(back->x2(), gt.x2(), 1e-9);
    EXPECT_NEAR(back->y2(), gt.y2(), 1e-9);
  }
}

TEST(SegmentCodecTest, Examples) {
  const SegmentAnchor a(50, 20);
  const SegmentDelta z = encode_segment(a, Segment(40, 60));
  EXPECT_EQ(z.tc, 0.0);
  EXPECT_EQ(z.tl, 0.0);
  const SegmentDelta d = encode_segment(a, Segment(40, 80));
  EXPECT_EQ(d.tc, 0.5);
  EXPECT_NEAR(d.tl, 0.6931471805599453, 1e-15);
  EXPECT_EQ(decode_segment(a, {-0.5, 0.0}, 100), Segment(30, 50));
  EXPECT_EQ(decode_segment(a, {-0.5, 0.0}, 45), Segment(30, 45));
  EXPECT_FALSE(decode_segment(a, {-10.0, 0.0}, 100));
}

TEST(SegmentCodecTest, RoundTrip) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> s(0, 500), l(1, 300);
  std::uniform_real_distribution<double> c(0, 600), al(1, 200);
  for (int i = 0; i < 2000; ++i) {
    const int a = s(rng);
    const Segment gt(a, a + l(rng));
    const SegmentAnchor anchor(c(rng), al(rng));
    const auto [x, y] = decode_segment_span(anchor, encode_segment(anchor, gt));
    EXPECT_NEAR(x, gt.start(), 1e-9);
    EXPECT_NEAR(y, gt.end(), 1e-9);
    EXPECT_EQ(decode_segment(anchor, encode_segment(anchor, gt), 1000), gt);
  }
}

TEST(AnchorLabelTest, Rules) {
  const std::vector<Box> anchors{Box(0, 0, 10, 10), Box(50, 50, 60, 60)};
  for (const auto& l : assign_anchor_labels(anchors, std::vector<Box>{})) {
    EXPECT_EQ(l.kind, AnchorLabelKind::kNegative);
  }
  const auto same = assign_anchor_labels(anchors, std::vector<Box>{Box(0, 0, 10, 10)});
  EXPECT_EQ(same[0].kind, AnchorLabelKind::kPositive);
  EXPECT_EQ(same[0].gt_index, 0);
  EXPECT_EQ(same[1].kind, AnchorLabelKind::kNegative);

  // Segment anchors with IoU {0.8, 0.45, 0.1} to one ground truth.
  const Segment gt(0, 100);
  const std::vector<SegmentAnchor> sa{SegmentAnchor(40, 80), SegmentAnchor(22.5, 45),
                                      SegmentAnchor(5, 10)};
  const auto l = assign_anchor_labels(sa, std::vector<Segment>{gt}, 0.7, 0.3);
  EXPECT_EQ(l[0].kind, AnchorLabelKind::kPositive);
  EXPECT_EQ(l[1].kind, AnchorLabelKind::kIgnore);
  EXPECT_EQ(l[2].kind, AnchorLabelKind::kNegative);
}

TEST(AnchorLabelTest, ArgmaxAnchorIsForcedPositive) {
  std::mt19937_64 rng(12);
  SpatialAnchorGrid g = SpatialAnchorGrid::for_image(96, 64);
  const auto anchors = gen_spatial_anchors(g);
  for (int it = 0; it < 50; ++it) {
    std::vector<Box> gts;
    for (int k = 0; k < 3; ++k) gts.push_back(testing::random_box(rng, 60));
    const auto labels = assign_anchor_labels(anchors, gts);
    ASSERT_EQ(labels.size(), anchors.size());
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
      double best = 0.0;
      for (const Box& a : anchors) best = std::max(best, box_iou(a, gts[gi]));
      ASSERT_GT(best, 0.0);
      for (std::size_t a = 0; a < anchors.size(); ++a) {
        if (box_iou(anchors[a], gts[gi]) == best) {
          EXPECT_EQ(labels[a].kind, AnchorLabelKind::kPositive);
        }
      }
    }
  }
}

TEST(FeaturemapTest, Examples) {
  std::vector<Box> boxes;
  for (int f = 0; f < 16; ++f) boxes.emplace_back(f, 0, f + 1, 1);
  const Tube whole(0, 1.0, Segment(0, 16), boxes);
  const auto m = map_gt_to_featuremaps(whole, 16);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].featuremap, 0);
  EXPECT_EQ(m[0].frame, 3);
  EXPECT_EQ(m[1].featuremap, 1);
  EXPECT_EQ(m[1].frame, 11);
  EXPECT_EQ(m[1].box, boxes[11]);

  const Tube head(0, 1.0, Segment(0, 4), std::vector<Box>(boxes.begin(), boxes.begin() + 4));
  const auto h = map_gt_to_featuremaps(head, 16);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].featuremap, 0);
  EXPECT_TRUE(map_gt_to_featuremaps(std::span<const Tube>{}, 16).empty());
  EXPECT_EQ(featuremap_center(1), 11.5);
}

TEST(FeaturemapTest, PaddedTailIsDropped) {
  const Tube t(0, 1.0, Segment(0, 10), std::vector<Box>(10, Box(0, 0, 1, 1)));
  // Centres 3.5 and 11.5; the second lies past frame 9.
  EXPECT_EQ(map_gt_to_featuremaps(t, 10).size(), 1u);
}

}  // namespace
}  // namespace star
