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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <string>
#include <vector>

#include "star/geometry.hpp"

namespace star {

/// One object box from the source annotations.
struct FrameObjectAnnotation {
  std::string video_id;
  int frame = 0;
  std::string object_id;
  Box box;
  bool relevant = false;  // takes part in the labelled action
};

struct VideoCatalogEntry {
  VideoMeta meta;
  std::string label;
  Tube tube;
  double temporal_ratio = 0.0;
  double spatial_ratio = 0.0;

  friend bool operator==(const VideoCatalogEntry&, const VideoCatalogEntry&) = default;
};

struct TubeSynthesis {
  std::optional<Tube> tube;
  std::string diagnostic;  // why the video was rejected
};

/// Builds a ground-truth tube from one video's object boxes. The tube spans
/// the first to the last frame carrying a relevant box; each annotated frame
/// gets the union of its relevant boxes and unannotated frames in between
/// are filled by corner-wise linear interpolation.
TubeSynthesis synthesize_tube(std::span<const FrameObjectAnnotation> annos);

struct Ratios {
  double temporal = 0.0;
  double spatial = 0.0;
};

/// temporal = tube length / video length,
/// spatial  = mean over tube frames of box area / frame area.
Ratios compute_ratios(const Tube& tube, const VideoMeta& meta);

struct RatioRange {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

enum class FilterOutcome { kKeep, kTemporalTooShort, kTemporalTooLong, kSpatialTooSmall, kSpatialTooLarge };

const char* filter_outcome_name(FilterOutcome o);

/// Closed-interval ratio filter; the temporal bound is checked first.
FilterOutcome filter_video(const Ratios& r, const RatioRange& temporal = {0.2, 0.8},
                           const RatioRange& spatial = {0.01, 0.8});

/// Keeps classes with at least per_class videos and samples exactly
/// per_class of them, uniformly without replacement. Class c is sampled
/// with std::mt19937_64 seeded by seed ^ fnv1a64(c) over its videos sorted
/// by id (partial Fisher-Yates with rejection-sampled bounds), so the choice
/// is independent of input order and of the other classes. Output is sorted
/// by (label, video_id).
std::vector<VideoCatalogEntry> balance_classes(std::vector<VideoCatalogEntry> catalog,
                                               std::size_t per_class, std::uint64_t seed);

std::uint64_t fnv1a64(std::string_view s);

struct Histogram {
  double bin_width = 0.05;
  std::vector<std::size_t> counts;  // bins over [0, 1]; 1.0 lands in the last bin

  static Histogram build(std::span<const double> values, double bin_width);
  std::size_t total() const;
};

struct DatasetStats {
  Histogram temporal;
  Histogram spatial;
  std::size_t class_count = 0;
  std::size_t video_count = 0;
  double mean_temporal_ratio = 0.0;
  double mean_spatial_ratio = 0.0;
};

DatasetStats dataset_stats(std::span<const VideoCatalogEntry> catalog, double bin_width = 0.05);

struct DatasetConfig {
  RatioRange temporal{0.2, 0.8};
  RatioRange spatial{0.01, 0.8};
  std::size_t per_class = 300;
  std::uint64_t seed = 0;
  double bin_width = 0.05;

  void validate() const;
};

struct VideoSource {
  VideoMeta meta;
  std::string label;
};

struct Rejection {
  std::string video_id;
  std::string reason;
};

struct BuildResult {
  std::vector<VideoCatalogEntry> catalog;  // balanced, sorted by (label, video_id)
  std::vector<Rejection> rejected;         // sorted by video_id
  std::size_t videos_in = 0;
  std::size_t synthesized = 0;
  std::size_t kept_after_filter = 0;
  std::size_t classes_after_filter = 0;
};

/// Filter then balance already-synthesized entries. Applying it to its own
/// output reproduces that output.
BuildResult curate(std::vector<VideoCatalogEntry> candidates, const DatasetConfig& cfg);

/// End-to-end construction from raw object annotations and video metadata.
/// Annotations of videos without metadata are reported as rejections.
BuildResult build_catalog(std::span<const FrameObjectAnnotation> annotations,
                          std::span<const VideoSource> videos, const DatasetConfig& cfg);

}  // namespace star
