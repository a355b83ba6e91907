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
#include "star/synth.hpp"

#include <gtest/gtest.h>

#include "star/io.hpp"
#include "star/metrics.hpp"
#include "star/oracle.hpp"
#include "star/parallel.hpp"

namespace star {
namespace {

TEST(OracleTest, GridIou) {
  const Box a(0, 0, 10, 10);
  EXPECT_EQ(oracle::iou_grid(a, a, 0.5), 1.0);
  EXPECT_EQ(oracle::iou_grid(a, Box(20, 20, 30, 30), 0.5), 0.0);
  EXPECT_EQ(oracle::iou_grid(a, Box(5, 0, 15, 10), 0.5), 200.0 / 600.0);
}

TEST(OracleTest, AveragePrecision) {
  auto table = [](std::vector<std::vector<double>> ov) {
    return [ov](std::size_t d, std::size_t g) { return ov[d][g]; };
  };
  EXPECT_EQ(*oracle::average_precision(std::vector<double>{}, 2, table({}), 0.5), 0.0);
  EXPECT_EQ(*oracle::average_precision(std::vector<double>{0.9}, 1, table({{1.0}}), 0.5), 1.0);
  EXPECT_EQ(*oracle::average_precision(std::vector<double>{0.9, 0.8, 0.7}, 2,
                                       table({{1, 0}, {0, 0}, {0, 1}}), 0.5),
            5.0 / 6.0);
  EXPECT_EQ(*oracle::average_precision(std::vector<double>{0.9}, 1, table({{0.1}}), 0.5), 0.0);
  EXPECT_FALSE(oracle::average_precision(std::vector<double>{0.9}, 0, table({{}}), 0.5));
  EXPECT_THROW(oracle::average_precision(std::vector<double>(9, 0.5), 1, table({}), 0.5),
               std::length_error);
  EXPECT_THROW(oracle::average_precision(std::vector<double>{}, 5, table({}), 0.5), std::length_error);
}

TEST(GenerateCorpusTest, ZeroNoiseReproducesGroundTruth) {
  ScenarioSpec s;
  s.seed = 5;
  const SyntheticCorpus c = generate_corpus(s);
  ASSERT_EQ(c.gts.size(), 10u);
  std::size_t k = 0;
  for (const auto& v : c.gts) {
    for (const auto& t : v.tubes) {
      ASSERT_LT(k, c.dets.size());
      EXPECT_EQ(c.dets[k].video_id, v.meta.video_id);
      EXPECT_EQ(c.dets[k].tube, t);
      ++k;
    }
    EXPECT_NO_THROW(v.validate());
  }
  EXPECT_EQ(k, c.dets.size());
  for (double alpha : {0.2, 0.5, 0.75, 0.95}) {
    EXPECT_EQ(video_map(c.dets, c.gts, alpha).map, 1.0);
  }
}

TEST(GenerateCorpusTest, MissingEverythingScoresZero) {
  ScenarioSpec s;
  s.noise.fn_rate = 1.0;
  const SyntheticCorpus c = generate_corpus(s);
  EXPECT_TRUE(c.dets.empty());
  EXPECT_EQ(video_map(c.dets, c.gts, 0.5).map, 0.0);
}

TEST(GenerateCorpusTest, DeterministicAcrossRunsAndThreads) {
  ScenarioSpec s;
  s.seed = 99;
  s.num_videos = 30;
  s.noise = {3.0, 0.2, 0.3, 0.1, 2.0};
  const int before = num_threads();
  set_num_threads(1);
  const SyntheticCorpus a = generate_corpus(s);
  set_num_threads(3);
  const SyntheticCorpus b = generate_corpus(s);
  set_num_threads(before);
  EXPECT_EQ(io::ground_truth_jsonl(a.gts), io::ground_truth_jsonl(b.gts));
  EXPECT_EQ(io::tubes_jsonl(a.dets), io::tubes_jsonl(b.dets));
  EXPECT_EQ(io::frame_detections_jsonl(a.frame_dets), io::frame_detections_jsonl(b.frame_dets));
  EXPECT_EQ(io::proposals_jsonl(a.proposals), io::proposals_jsonl(b.proposals));
  s.seed = 100;
  EXPECT_NE(io::tubes_jsonl(generate_corpus(s).dets), io::tubes_jsonl(a.dets));
}

TEST(GenerateCorpusTest, NoiseOnlyPerturbsGeometry) {
  ScenarioSpec s;
  s.seed = 3;
  const SyntheticCorpus clean = generate_corpus(s);
  s.noise.jitter_sigma = 4.0;
  const SyntheticCorpus noisy = generate_corpus(s);
  EXPECT_EQ(io::ground_truth_jsonl(clean.gts), io::ground_truth_jsonl(noisy.gts));
  ASSERT_EQ(clean.dets.size(), noisy.dets.size());
  for (std::size_t i = 0; i < clean.dets.size(); ++i) {
    EXPECT_EQ(clean.dets[i].tube.segment(), noisy.dets[i].tube.segment());
  }
  EXPECT_LT(video_map(noisy.dets, noisy.gts, 0.75).map, 1.0);
}

TEST(GenerateCorpusTest, FrameDetectionsLinkBackToGroundTruth) {
  ScenarioSpec s;
  s.seed = 8;
  s.tubes_per_video = 1;
  const SyntheticCorpus c = generate_corpus(s);
  LinkerConfig raw;
  raw.suppress = false;
  for (std::size_t v = 0; v < c.gts.size(); ++v) {
    const DetectionSet d = build_detections(c.proposals[v].proposals, c.frame_dets[v].frames, raw);
    ASSERT_EQ(d.tubes.size(), 1u);
    EXPECT_EQ(d.tubes[0].boxes(), c.gts[v].tubes[0].boxes());
  }
}

TEST(ScenarioSpecTest, Validation) {
  ScenarioSpec s;
  s.noise.fp_rate = 1.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.noise.jitter_sigma = -1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.max_frames = 1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace star
