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
#include "star/config.hpp"

#include <fstream>
#include <stdexcept>

namespace star {

using nlohmann::json;

const char* ap_mode_name(ApMode m) { return m == ApMode::kAllPoint ? "all-point" : "11-point"; }

ApMode parse_ap_mode(const std::string& s) {
  if (s == "all-point") return ApMode::kAllPoint;
  if (s == "11-point") return ApMode::kElevenPoint;
  throw std::invalid_argument("unknown AP mode '" + s + "' (expected all-point or 11-point)");
}

const char* empty_frame_policy_name(EmptyFramePolicy p) {
  return p == EmptyFramePolicy::kCarryForward ? "carry-forward" : "interpolate";
}

EmptyFramePolicy parse_empty_frame_policy(const std::string& s) {
  if (s == "carry-forward") return EmptyFramePolicy::kCarryForward;
  if (s == "interpolate") return EmptyFramePolicy::kInterpolate;
  throw std::invalid_argument("unknown empty-frame policy '" + s +
                              "' (expected carry-forward or interpolate)");
}

namespace {

void check_open_unit(double v, const std::string& key) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(key + " must be in (0, 1)");
}

void check_alphas(const std::vector<double>& a, const std::string& key) {
  if (a.empty()) throw std::invalid_argument(key + " must not be empty");
  for (double v : a) {
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument(key + " entries must be in (0, 1]");
  }
}

void check_positive(const std::vector<double>& a, const std::string& key) {
  if (a.empty()) throw std::invalid_argument(key + " must not be empty");
  for (double v : a) {
    if (!(v > 0.0)) throw std::invalid_argument(key + " entries must be positive");
  }
}

// Visits every key of a section, rejecting those not handled.
template <typename Fn>
void each_key(const json& j, const std::string& section, Fn&& fn) {
  if (!j.is_object()) throw std::invalid_argument(section + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!fn(it.key(), it.value())) {
      throw std::invalid_argument("unknown config key '" + section + "." + it.key() + "'");
    }
  }
}

RatioRange range_from(const json& v) {
  if (!v.is_array() || v.size() != 2) throw std::invalid_argument("range must be [lo, hi]");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

void Config::validate() const {
  if (anchors.spatial_stride < 1 || anchors.temporal_stride < 1) {
    throw std::invalid_argument("anchors strides must be >= 1");
  }
  check_positive(anchors.scales, "anchors.scales");
  check_positive(anchors.ratios, "anchors.ratios");
  check_positive(anchors.temporal_scales, "anchors.temporal_scales");
  check_open_unit(anchors.spatial_pos_iou, "anchors.spatial_pos_iou");
  check_open_unit(anchors.spatial_neg_iou, "anchors.spatial_neg_iou");
  check_open_unit(anchors.temporal_pos_iou, "anchors.temporal_pos_iou");
  check_open_unit(anchors.temporal_neg_iou, "anchors.temporal_neg_iou");
  if (anchors.spatial_neg_iou > anchors.spatial_pos_iou ||
      anchors.temporal_neg_iou > anchors.temporal_pos_iou) {
    throw std::invalid_argument("anchor neg_iou must not exceed pos_iou");
  }
  linker.validate();
  check_alphas(eval.alphas, "eval.alphas");
  check_alphas(eval.temporal_alphas, "eval.temporal_alphas");
  check_alphas(eval.ar_thresholds, "eval.ar_thresholds");
  if (eval.ar_max_budget < 1) throw std::invalid_argument("eval.ar_max_budget must be >= 1");
  dataset.validate();
}

Config merge_config(const Config& base, const json& j) {
  Config c = base;
  each_key(j, "config", [&](const std::string& k, const json& v) {
    if (k == "anchors") {
      each_key(v, "anchors", [&](const std::string& key, const json& x) {
        AnchorSettings& a = c.anchors;
        if (key == "spatial_stride") a.spatial_stride = x.get<int>();
        else if (key == "temporal_stride") a.temporal_stride = x.get<int>();
        else if (key == "scales") a.scales = x.get<std::vector<double>>();
        else if (key == "ratios") a.ratios = x.get<std::vector<double>>();
        else if (key == "temporal_scales") a.temporal_scales = x.get<std::vector<double>>();
        else if (key == "spatial_pos_iou") a.spatial_pos_iou = x.get<double>();
        else if (key == "spatial_neg_iou") a.spatial_neg_iou = x.get<double>();
        else if (key == "temporal_pos_iou") a.temporal_pos_iou = x.get<double>();
        else if (key == "temporal_neg_iou") a.temporal_neg_iou = x.get<double>();
        else return false;
        return true;
      });
    } else if (k == "linker") {
      each_key(v, "linker", [&](const std::string& key, const json& x) {
        LinkerConfig& l = c.linker;
        if (key == "temporal_top_k") l.temporal_top_k = x.get<std::size_t>();
        else if (key == "spatial_top_k") l.spatial_top_k = x.get<std::size_t>();
        else if (key == "temporal_nms") l.temporal_nms = x.get<double>();
        else if (key == "spatial_nms") l.spatial_nms = x.get<double>();
        else if (key == "suppress") l.suppress = x.get<bool>();
        else if (key == "empty_frames") l.empty_frames = parse_empty_frame_policy(x.get<std::string>());
        else return false;
        return true;
      });
    } else if (k == "eval") {
      each_key(v, "eval", [&](const std::string& key, const json& x) {
        EvalSettings& e = c.eval;
        if (key == "alphas") e.alphas = x.get<std::vector<double>>();
        else if (key == "temporal_alphas") e.temporal_alphas = x.get<std::vector<double>>();
        else if (key == "ar_thresholds") e.ar_thresholds = x.get<std::vector<double>>();
        else if (key == "ar_max_budget") e.ar_max_budget = x.get<int>();
        else if (key == "ap_mode") e.ap_mode = parse_ap_mode(x.get<std::string>());
        else if (key == "frame_per_video") e.frame_per_video = x.get<bool>();
        else return false;
        return true;
      });
    } else if (k == "dataset") {
      each_key(v, "dataset", [&](const std::string& key, const json& x) {
        DatasetConfig& d = c.dataset;
        if (key == "temporal_range") d.temporal = range_from(x);
        else if (key == "spatial_range") d.spatial = range_from(x);
        else if (key == "per_class") d.per_class = x.get<std::size_t>();
        else if (key == "seed") d.seed = x.get<std::uint64_t>();
        else if (key == "bin_width") d.bin_width = x.get<double>();
        else return false;
        return true;
      });
    } else {
      return false;
    }
    return true;
  });
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  try {
    return merge_config(Config{}, j);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
}

json config_to_json(const Config& c) {
  json j;
  j["anchors"] = {{"spatial_stride", c.anchors.spatial_stride},
                  {"temporal_stride", c.anchors.temporal_stride},
                  {"scales", c.anchors.scales},
                  {"ratios", c.anchors.ratios},
                  {"temporal_scales", c.anchors.temporal_scales},
                  {"spatial_pos_iou", c.anchors.spatial_pos_iou},
                  {"spatial_neg_iou", c.anchors.spatial_neg_iou},
                  {"temporal_pos_iou", c.anchors.temporal_pos_iou},
                  {"temporal_neg_iou", c.anchors.temporal_neg_iou}};
  j["linker"] = {{"temporal_top_k", c.linker.temporal_top_k},
                 {"spatial_top_k", c.linker.spatial_top_k},
                 {"temporal_nms", c.linker.temporal_nms},
                 {"spatial_nms", c.linker.spatial_nms},
                 {"suppress", c.linker.suppress},
                 {"empty_frames", empty_frame_policy_name(c.linker.empty_frames)}};
  j["eval"] = {{"alphas", c.eval.alphas},
               {"temporal_alphas", c.eval.temporal_alphas},
               {"ar_thresholds", c.eval.ar_thresholds},
               {"ar_max_budget", c.eval.ar_max_budget},
               {"ap_mode", ap_mode_name(c.eval.ap_mode)},
               {"frame_per_video", c.eval.frame_per_video}};
  j["dataset"] = {{"temporal_range", {c.dataset.temporal.lo, c.dataset.temporal.hi}},
                  {"spatial_range", {c.dataset.spatial.lo, c.dataset.spatial.hi}},
                  {"per_class", c.dataset.per_class},
                  {"seed", c.dataset.seed},
                  {"bin_width", c.dataset.bin_width}};
  return j;
}

}  // namespace star
