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

#include <cstdint>
#include <vector>

#include "star/geometry.hpp"
#include "star/linker.hpp"
#include "star/metrics.hpp"

namespace star {

/// Detector imperfections applied to the ground truth.
struct NoiseModel {
  double jitter_sigma = 0.0;    // px, per box coordinate
  double score_noise = 0.0;     // std-dev subtracted from a perfect score of 1
  double fp_rate = 0.0;         // chance of a spurious tube per GT tube, and of a clutter box per frame
  double fn_rate = 0.0;         // chance a GT tube is missed entirely
  double segment_jitter = 0.0;  // frames, per segment boundary
};

struct ScenarioSpec {
  std::uint64_t seed = 0;
  int num_videos = 10;
  int num_classes = 3;
  int min_frames = 40;
  int max_frames = 80;
  int width = 320;
  int height = 240;
  double fps = 25.0;
  int tubes_per_video = 2;
  double min_tube_fraction = 0.3;  // tube length as a fraction of the video
  double max_tube_fraction = 0.8;
  double max_speed = 2.0;          // px per frame, constant-velocity drift
  NoiseModel noise;

  void validate() const;
};

struct SyntheticCorpus {
  std::vector<VideoAnnotation> gts;
  std::vector<TubeDetection> dets;
  std::vector<VideoFrameDetections> frame_dets;
  std::vector<VideoProposalSet> proposals;
};

/// Deterministic in spec.seed. Each video draws from its own generator and
/// the number of draws does not depend on the noise magnitudes, so specs
/// differing only in noise share their random stream. With zero noise the
/// detections equal the ground truth with score 1.
SyntheticCorpus generate_corpus(const ScenarioSpec& spec);

}  // namespace star
