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
#include "star/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "star/oracle.hpp"
#include "test_util.hpp"

namespace star {
namespace {

Tube const_tube(int cls, double score, int a, int b, const Box& box) {
  return Tube(cls, score, Segment(a, b), std::vector<Box>(b - a, box));
}

VideoAnnotation video(const std::string& id, int frames, std::vector<Tube> tubes) {
  return {{id, frames, 320, 240, 25.0}, std::move(tubes)};
}

std::vector<TubeDetection> as_dets(const std::vector<VideoAnnotation>& gts) {
  std::vector<TubeDetection> d;
  for (const auto& v : gts) {
    for (const auto& t : v.tubes) d.push_back({v.meta.video_id, t});
  }
  return d;
}

MatchResult match_table(const std::vector<double>& scores, const std::vector<std::vector<double>>& ov,
                        double alpha) {
  const std::size_t g = ov.empty() ? 0 : ov[0].size();
  return match_greedy(scores, g, [&](std::size_t d, std::size_t k) { return ov[d][k]; }, alpha);
}

TEST(MatchGreedyTest, Examples) {
  const MatchResult none = match_greedy({}, 2, [](std::size_t, std::size_t) { return 1.0; }, 0.5);
  EXPECT_EQ(none.num_tp(), 0u);
  EXPECT_EQ(none.num_gt, 2u);

  const MatchResult one = match_table({0.7}, {{0.6}}, 0.5);
  EXPECT_TRUE(one.is_tp(0));

  const MatchResult two = match_table({0.9, 0.8}, {{0.6}, {0.7}}, 0.5);
  EXPECT_EQ(two.order, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(two.is_tp(0));
  EXPECT_FALSE(two.is_tp(1));
}

TEST(MatchGreedyTest, BestOverlapLowestIndexOnTies) {
  const MatchResult m = match_table({0.5}, {{0.8, 0.9, 0.9}}, 0.5);
  EXPECT_EQ(m.matched_gt[0], 1);
  // Best remaining GT below alpha leaves it unmatched.
  const MatchResult f = match_table({0.9, 0.8}, {{0.9, 0.4}, {0.9, 0.6}}, 0.5);
  EXPECT_EQ(f.matched_gt, (std::vector<int>{0, 1}));
}

TEST(AveragePrecisionTest, Examples) {
  EXPECT_EQ(*average_precision(match_table({0.9, 0.8}, {{1, 0}, {0, 1}}, 0.5)), 1.0);
  EXPECT_EQ(*average_precision(match_table({0.9}, {{0.1}}, 0.5)), 0.0);
  const MatchResult m = match_table({0.9, 0.8, 0.7}, {{1, 0}, {0, 0}, {0, 1}}, 0.5);
  EXPECT_EQ(*average_precision(m), 5.0 / 6.0);
  EXPECT_FALSE(average_precision(match_table({0.9}, {{}}, 0.5)));
  EXPECT_NEAR(*average_precision(m, ApMode::kElevenPoint), (6.0 + 5.0 * 2.0 / 3.0) / 11.0, 1e-15);
}

TEST(AveragePrecisionTest, EqualsOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> nd(0, 8), ng(0, 4), q(0, 10);
  for (int it = 0; it < 2000; ++it) {
    const int d = nd(rng), g = ng(rng);
    std::vector<double> scores(d);
    for (double& s : scores) s = q(rng) / 10.0;
    std::vector<std::vector<double>> ov(d, std::vector<double>(g));
    for (auto& row : ov) {
      for (double& v : row) v = q(rng) / 10.0;
    }
    const double alpha = std::max(0.1, q(rng) / 10.0);
    auto fn = [&](std::size_t a, std::size_t b) { return ov[a][b]; };
    const auto got = average_precision(match_greedy(scores, g, fn, alpha));
    const auto want = oracle::average_precision(scores, g, fn, alpha);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      ASSERT_EQ(*got, *want) << "instance " << it;
    }
  }
}

TEST(VideoMapTest, SelfMatchIsOne) {
  const std::vector<VideoAnnotation> gts{
      video("a", 30, {const_tube(0, 1, 0, 10, Box(0, 0, 10, 10)), const_tube(1, 1, 5, 25, Box(5, 5, 50, 50))}),
      video("b", 30, {const_tube(0, 1, 3, 30, Box(1, 1, 2, 2))})};
  for (double alpha : {0.2, 0.5, 0.75, 0.95, 1.0}) {
    EXPECT_EQ(video_map(as_dets(gts), gts, alpha).map, 1.0);
    EXPECT_EQ(frame_map(as_dets(gts), gts, alpha).map, 1.0);
  }
}

TEST(VideoMapTest, DisjointIsZero) {
  const std::vector<VideoAnnotation> gts{video("a", 30, {const_tube(0, 1, 0, 10, Box(0, 0, 10, 10))})};
  const std::vector<TubeDetection> dets{{"a", const_tube(0, 0.9, 10, 20, Box(0, 0, 10, 10))}};
  EXPECT_EQ(video_map(dets, gts, 0.2).map, 0.0);
}

TEST(VideoMapTest, MatchesOracleOnSmallCorpus) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> start(0, 10), len(3, 12), cls(0, 1);
  std::uniform_real_distribution<double> sc(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    std::vector<VideoAnnotation> gts;
    std::vector<TubeDetection> dets;
    for (const char* id : {"v0", "v1"}) {
      VideoAnnotation v = video(id, 30, {});
      for (int k = 0; k < 2; ++k) {
        const int a = start(rng);
        v.tubes.push_back(const_tube(cls(rng), 1.0, a, a + len(rng), testing::random_grid_box(rng, 10, 4.0)));
      }
      for (int k = 0; k < 4; ++k) {
        const int a = start(rng);
        const Tube& near = v.tubes[k % 2];
        const Box b = k < 2 ? near.boxes()[0] : testing::random_grid_box(rng, 10, 4.0);
        dets.push_back({id, const_tube(cls(rng), sc(rng), a, a + len(rng), b)});
      }
      gts.push_back(std::move(v));
    }
    const double alpha = 0.1 + 0.1 * (it % 5);
    const EvalReport rep = video_map(dets, gts, alpha);
    for (const ClassAp& c : rep.classes) {
      std::vector<double> scores;
      std::vector<std::pair<std::string, const Tube*>> d, g;
      for (const auto& x : dets) {
        if (x.tube.class_id() == c.class_id) {
          scores.push_back(x.tube.score());
          d.push_back({x.video_id, &x.tube});
        }
      }
      for (const auto& v : gts) {
        for (const auto& t : v.tubes) {
          if (t.class_id() == c.class_id) g.push_back({v.meta.video_id, &t});
        }
      }
      const auto want = oracle::average_precision(
          scores, g.size(),
          [&](std::size_t i, std::size_t j) {
            return d[i].first == g[j].first ? oracle::tube_st_iou(*d[i].second, *g[j].second) : 0.0;
          },
          alpha);
      ASSERT_TRUE(want);
      ASSERT_EQ(c.ap, *want) << "iteration " << it << " class " << c.class_id;
    }
  }
}

TEST(VideoMapTest, UnknownVideoThrowsUnknownClassCounted) {
  const std::vector<VideoAnnotation> gts{video("a", 30, {const_tube(0, 1, 0, 10, Box(0, 0, 10, 10))})};
  std::vector<TubeDetection> dets{{"zzz", const_tube(0, 0.9, 0, 10, Box(0, 0, 10, 10))}};
  EXPECT_THROW(video_map(dets, gts, 0.5), std::invalid_argument);
  dets = {{"a", const_tube(7, 0.9, 0, 10, Box(0, 0, 10, 10))},
          {"a", const_tube(0, 0.5, 0, 10, Box(0, 0, 10, 10))}};
  const EvalReport r = video_map(dets, gts, 0.5);
  EXPECT_EQ(r.unknown_class_detections, 1u);
  EXPECT_EQ(r.map, 1.0);
}

TEST(VideoMapTest, PermutationAndMonotoneScoreInvariance) {
  std::mt19937_64 rng(44);
  std::vector<VideoAnnotation> gts;
  std::vector<TubeDetection> dets;
  std::uniform_int_distribution<int> start(0, 20), len(5, 20), cls(0, 2), q(0, 4);
  for (int v = 0; v < 6; ++v) {
    VideoAnnotation a = video("v" + std::to_string(v), 50, {});
    for (int k = 0; k < 3; ++k) {
      const int s = start(rng);
      a.tubes.push_back(const_tube(cls(rng), 1, s, s + len(rng), testing::random_grid_box(rng, 8, 5.0)));
      const int s2 = start(rng);
      dets.push_back({a.meta.video_id, const_tube(cls(rng), q(rng) / 4.0, s2, s2 + len(rng),
                                                  testing::random_grid_box(rng, 8, 5.0))});
      dets.push_back({a.meta.video_id, const_tube(a.tubes.back().class_id(), q(rng) / 4.0, s, s + 5,
                                                  a.tubes.back().boxes()[0])});
    }
    gts.push_back(std::move(a));
  }
  const EvalReport base = video_map(dets, gts, 0.3);
  const TemporalReport tbase = temporal_map(dets, gts, default_temporal_alphas());
  for (int p = 0; p < 20; ++p) {
    auto d2 = dets;
    auto g2 = gts;
    std::shuffle(d2.begin(), d2.end(), rng);
    std::shuffle(g2.begin(), g2.end(), rng);
    EXPECT_EQ(video_map(d2, g2, 0.3).map, base.map);
    EXPECT_EQ(temporal_map(d2, g2, default_temporal_alphas()).average_map, tbase.average_map);
  }
  auto d3 = dets;
  for (auto& d : d3) d.tube.set_score(std::exp(3.0 * d.tube.score()) - 7.0);
  EXPECT_EQ(video_map(d3, gts, 0.3).map, base.map);
}

TEST(VideoMapTest, NonIncreasingInAlpha) {
  std::mt19937_64 rng(45);
  std::vector<VideoAnnotation> gts;
  std::vector<TubeDetection> dets;
  std::uniform_int_distribution<int> start(0, 20), len(5, 20), cls(0, 2);
  std::uniform_real_distribution<double> sc(0, 1);
  for (int v = 0; v < 10; ++v) {
    VideoAnnotation a = video("v" + std::to_string(v), 50, {});
    for (int k = 0; k < 3; ++k) {
      const int s = start(rng);
      a.tubes.push_back(const_tube(cls(rng), 1, s, s + len(rng), testing::random_box(rng)));
      const int s2 = std::max(0, s + start(rng) / 4 - 2);
      dets.push_back({a.meta.video_id, const_tube(a.tubes.back().class_id(), sc(rng), s2,
                                                  s2 + len(rng), testing::random_box(rng))});
    }
    gts.push_back(std::move(a));
  }
  double prev = 2.0;
  for (int k = 1; k <= 20; ++k) {
    const double m = video_map(dets, gts, k / 20.0).map;
    EXPECT_LE(m, prev);
    prev = m;
  }
}

TEST(FrameMapTest, Examples) {
  const std::vector<VideoAnnotation> gts{video("a", 30, {const_tube(0, 1, 5, 10, Box(0, 0, 10, 10))})};
  EXPECT_EQ(frame_map(as_dets(gts), gts).map, 1.0);
  EXPECT_EQ(frame_map({}, gts).map, 0.0);
  const std::vector<TubeDetection> longer{{"a", const_tube(0, 0.9, 0, 15, Box(0, 0, 10, 10))}};
  const double m = frame_map(longer, gts).map;
  EXPECT_LT(m, 1.0);
  EXPECT_GT(m, 0.0);
  EvalOptions o;
  o.frame_per_video = true;
  EXPECT_EQ(frame_map(as_dets(gts), gts, 0.5, o).map, 1.0);
}

TEST(TemporalMapTest, Examples) {
  const std::vector<VideoAnnotation> gts{video("a", 30, {const_tube(0, 1, 5, 15, Box(0, 0, 10, 10))})};
  const auto alphas = default_temporal_alphas();
  ASSERT_EQ(alphas.size(), 10u);
  EXPECT_EQ(alphas.front(), 0.5);
  EXPECT_EQ(alphas[4], 0.7);
  EXPECT_EQ(alphas.back(), 0.95);
  const TemporalReport self = temporal_map(as_dets(gts), gts, alphas);
  for (const auto& r : self.per_alpha) EXPECT_EQ(r.map, 1.0);
  EXPECT_EQ(self.average_map, 1.0);

  const std::vector<TubeDetection> shifted{{"a", const_tube(0, 0.9, 0, 10, Box(0, 0, 10, 10))}};
  EXPECT_EQ(temporal_map(shifted, gts, alphas).average_map, 0.0);

  const std::vector<TubeDetection> partial{{"a", const_tube(0, 0.9, 5, 13, Box(0, 0, 10, 10))}};
  const TemporalReport p = temporal_map(partial, gts, alphas);
  double sum = 0.0;
  for (const auto& r : p.per_alpha) sum += r.map;
  EXPECT_DOUBLE_EQ(p.average_map, sum / 10.0);
  EXPECT_EQ(p.per_alpha[6].map, 1.0);  // tIoU 0.8
  EXPECT_EQ(p.per_alpha[7].map, 0.0);
}

TEST(TemporalMapTest, DuplicateSegmentsMerged) {
  const std::vector<VideoAnnotation> gts{video("a", 30, {const_tube(0, 1, 5, 15, Box(0, 0, 10, 10)),
                                                         const_tube(0, 1, 20, 30, Box(0, 0, 10, 10))})};
  // Same segment twice (different boxes), then a hit on the second GT.
  const std::vector<TubeDetection> dets{{"a", const_tube(0, 0.9, 0, 4, Box(0, 0, 10, 10))},
                                        {"a", const_tube(0, 0.8, 0, 4, Box(5, 5, 10, 10))},
                                        {"a", const_tube(0, 0.7, 20, 30, Box(0, 0, 10, 10))}};
  const double alpha = 0.5;
  const TemporalReport r = temporal_map(dets, gts, std::vector<double>{alpha});
  EXPECT_EQ(r.per_alpha[0].classes[0].num_det, 2u);
  EXPECT_EQ(r.per_alpha[0].map, 0.5 * 0.5);
}

TEST(AverageRecallTest, Examples) {
  const std::vector<VideoAnnotation> gts{video("a", 200, {const_tube(0, 1, 0, 100, Box(0, 0, 1, 1))})};
  const auto th = default_temporal_alphas();
  EXPECT_EQ(average_recall(std::vector<VideoProposal>{{"a", Segment(0, 100), 1.0}}, gts, th).average_recall, 1.0);
  EXPECT_EQ(average_recall({}, gts, th).average_recall, 0.0);
  const RecallReport r = average_recall(std::vector<VideoProposal>{{"a", Segment(0, 72), 0.5}}, gts, th);
  EXPECT_EQ(r.average_recall, 0.5);
  ASSERT_EQ(r.curve.size(), 100u);
  EXPECT_EQ(r.curve[0].average_recall, 0.5);
  EXPECT_EQ(r.curve[0].avg_proposals, 1.0);
}

}  // namespace
}  // namespace star
