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

#include <string>
#include <vector>

#include "json.hpp"
#include "star/dataset.hpp"
#include "star/linker.hpp"
#include "star/metrics.hpp"

namespace star {

struct AnchorSettings {
  int spatial_stride = 16;
  int temporal_stride = 8;
  std::vector<double> scales{2.0, 4.0, 8.0, 16.0};
  std::vector<double> ratios{1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
  std::vector<double> temporal_scales{2, 4, 5, 6, 8, 9, 10, 12, 14, 16};
  double spatial_pos_iou = 0.7;
  double spatial_neg_iou = 0.3;
  double temporal_pos_iou = 0.7;
  double temporal_neg_iou = 0.3;
};

struct EvalSettings {
  std::vector<double> alphas{0.5};             // video and frame mAP
  std::vector<double> temporal_alphas = default_temporal_alphas();
  std::vector<double> ar_thresholds = default_temporal_alphas();
  int ar_max_budget = 100;
  ApMode ap_mode = ApMode::kAllPoint;
  bool frame_per_video = false;
};

struct Config {
  AnchorSettings anchors;
  LinkerConfig linker;
  EvalSettings eval;
  DatasetConfig dataset;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
};

/// Overlays the keys present in `j` on `base`. Unknown keys are errors.
Config merge_config(const Config& base, const nlohmann::json& j);

/// Defaults overlaid with a JSON config file.
Config load_config(const std::string& path);

nlohmann::json config_to_json(const Config& c);

const char* ap_mode_name(ApMode m);
ApMode parse_ap_mode(const std::string& s);
const char* empty_frame_policy_name(EmptyFramePolicy p);
EmptyFramePolicy parse_empty_frame_policy(const std::string& s);

}  // namespace star
