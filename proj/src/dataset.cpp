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
#include "star/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "star/parallel.hpp"

namespace star {

TubeSynthesis synthesize_tube(std::span<const FrameObjectAnnotation> annos) {
  std::map<int, std::vector<Box>> per_frame;
  for (const FrameObjectAnnotation& a : annos) {
    if (a.relevant) per_frame[a.frame].push_back(a.box);
  }
  if (per_frame.empty()) return {std::nullopt, "no relevant object annotations"};
  if (per_frame.begin()->first < 0) {
    return {std::nullopt, "negative frame index " + std::to_string(per_frame.begin()->first)};
  }

  const int first = per_frame.begin()->first;
  const int last = per_frame.rbegin()->first;
  std::vector<Box> boxes;
  boxes.reserve(static_cast<std::size_t>(last - first + 1));

  auto it = per_frame.begin();
  Box prev = union_box(it->second);
  int prev_frame = it->first;
  boxes.push_back(prev);
  for (++it; it != per_frame.end(); ++it) {
    const Box next = union_box(it->second);
    const int gap = it->first - prev_frame;
    for (int k = 1; k < gap; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(gap);
      auto lerp = [t](double a, double b) { return a + (b - a) * t; };
      boxes.emplace_back(lerp(prev.x1(), next.x1()), lerp(prev.y1(), next.y1()),
                         lerp(prev.x2(), next.x2()), lerp(prev.y2(), next.y2()));
    }
    boxes.push_back(next);
    prev = next;
    prev_frame = it->first;
  }
  return {Tube(0, 1.0, Segment(first, last + 1), std::move(boxes)), {}};
}

Ratios compute_ratios(const Tube& tube, const VideoMeta& meta) {
  const double frame_area = static_cast<double>(meta.width) * static_cast<double>(meta.height);
  double sum = 0.0;
  for (const Box& b : tube.boxes()) sum += box_area(b) / frame_area;
  Ratios r;
  r.temporal = static_cast<double>(tube.segment().length()) / static_cast<double>(meta.num_frames);
  r.spatial = sum / static_cast<double>(tube.boxes().size());
  return r;
}

const char* filter_outcome_name(FilterOutcome o) {
  switch (o) {
    case FilterOutcome::kKeep: return "keep";
    case FilterOutcome::kTemporalTooShort: return "temporal ratio below range";
    case FilterOutcome::kTemporalTooLong: return "temporal ratio above range";
    case FilterOutcome::kSpatialTooSmall: return "spatial ratio below range";
    case FilterOutcome::kSpatialTooLarge: return "spatial ratio above range";
  }
  return "unknown";
}

FilterOutcome filter_video(const Ratios& r, const RatioRange& temporal, const RatioRange& spatial) {
  if (r.temporal < temporal.lo) return FilterOutcome::kTemporalTooShort;
  if (r.temporal > temporal.hi) return FilterOutcome::kTemporalTooLong;
  if (r.spatial < spatial.lo) return FilterOutcome::kSpatialTooSmall;
  if (r.spatial > spatial.hi) return FilterOutcome::kSpatialTooLarge;
  return FilterOutcome::kKeep;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

// Uniform integer in [0, bound) from raw 64-bit draws; bias-free rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

bool by_label_then_id(const VideoCatalogEntry& a, const VideoCatalogEntry& b) {
  if (a.label != b.label) return a.label < b.label;
  return a.meta.video_id < b.meta.video_id;
}

}  // namespace

std::vector<VideoCatalogEntry> balance_classes(std::vector<VideoCatalogEntry> catalog,
                                               std::size_t per_class, std::uint64_t seed) {
  if (per_class == 0) throw std::invalid_argument("per-class count must be at least 1");
  std::sort(catalog.begin(), catalog.end(), by_label_then_id);

  std::vector<VideoCatalogEntry> out;
  std::size_t i = 0;
  while (i < catalog.size()) {
    std::size_t j = i;
    while (j < catalog.size() && catalog[j].label == catalog[i].label) ++j;
    const std::size_t n = j - i;
    if (n >= per_class) {
      std::vector<std::size_t> idx(n);
      for (std::size_t k = 0; k < n; ++k) idx[k] = k;
      std::mt19937_64 rng(seed ^ fnv1a64(catalog[i].label));
      for (std::size_t k = 0; k < per_class && n > per_class; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(uniform_below(rng, n - k));
        std::swap(idx[k], idx[pick]);
      }
      idx.resize(per_class);
      std::sort(idx.begin(), idx.end());
      for (std::size_t k : idx) out.push_back(std::move(catalog[i + k]));
    }
    i = j;
  }
  return out;
}

Histogram Histogram::build(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0) || bin_width > 1.0) {
    throw std::invalid_argument("histogram bin width must be in (0, 1]");
  }
  Histogram h;
  h.bin_width = bin_width;
  const auto bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  h.counts.assign(bins, 0);
  for (double v : values) {
    // The epsilon keeps values sitting on a bin edge (0.25 at width 0.05) in
    // the upper bin despite the inexact division.
    const double pos = std::floor(v / bin_width + 1e-9);
    const auto k = pos < 0.0 ? std::size_t{0}
                             : std::min(static_cast<std::size_t>(pos), bins - 1);
    ++h.counts[k];
  }
  return h;
}

std::size_t Histogram::total() const {
  std::size_t n = 0;
  for (std::size_t c : counts) n += c;
  return n;
}

DatasetStats dataset_stats(std::span<const VideoCatalogEntry> catalog, double bin_width) {
  std::vector<double> t, s;
  std::vector<std::string> labels;
  t.reserve(catalog.size());
  s.reserve(catalog.size());
  for (const VideoCatalogEntry& e : catalog) {
    t.push_back(e.temporal_ratio);
    s.push_back(e.spatial_ratio);
    labels.push_back(e.label);
  }
  std::sort(labels.begin(), labels.end());
  DatasetStats st;
  st.temporal = Histogram::build(t, bin_width);
  st.spatial = Histogram::build(s, bin_width);
  st.class_count = static_cast<std::size_t>(
      std::unique(labels.begin(), labels.end()) - labels.begin());
  st.video_count = catalog.size();
  if (!catalog.empty()) {
    double st_sum = 0.0, ss_sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      st_sum += t[i];
      ss_sum += s[i];
    }
    st.mean_temporal_ratio = st_sum / static_cast<double>(catalog.size());
    st.mean_spatial_ratio = ss_sum / static_cast<double>(catalog.size());
  }
  return st;
}

void DatasetConfig::validate() const {
  auto check = [](const RatioRange& r, const char* what) {
    if (!(r.lo >= 0.0 && r.lo <= r.hi && r.hi <= 1.0)) {
      throw std::invalid_argument(std::string(what) + " range must satisfy 0 <= lo <= hi <= 1");
    }
  };
  check(temporal, "temporal");
  check(spatial, "spatial");
  if (per_class == 0) throw std::invalid_argument("per_class must be at least 1");
  if (!(bin_width > 0.0 && bin_width <= 1.0)) {
    throw std::invalid_argument("bin_width must be in (0, 1]");
  }
}

BuildResult curate(std::vector<VideoCatalogEntry> candidates, const DatasetConfig& cfg) {
  cfg.validate();
  BuildResult res;
  res.videos_in = candidates.size();
  res.synthesized = candidates.size();
  std::vector<VideoCatalogEntry> kept;
  for (VideoCatalogEntry& e : candidates) {
    const Ratios r = compute_ratios(e.tube, e.meta);
    e.temporal_ratio = r.temporal;
    e.spatial_ratio = r.spatial;
    const FilterOutcome o = filter_video(r, cfg.temporal, cfg.spatial);
    if (o == FilterOutcome::kKeep) {
      kept.push_back(std::move(e));
    } else {
      res.rejected.push_back({e.meta.video_id, filter_outcome_name(o)});
    }
  }
  res.kept_after_filter = kept.size();
  {
    std::vector<std::string> labels;
    for (const auto& e : kept) labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    res.classes_after_filter = static_cast<std::size_t>(
        std::unique(labels.begin(), labels.end()) - labels.begin());
  }
  res.catalog = balance_classes(std::move(kept), cfg.per_class, cfg.seed);
  std::sort(res.rejected.begin(), res.rejected.end(),
            [](const Rejection& a, const Rejection& b) { return a.video_id < b.video_id; });
  return res;
}

namespace {

// Clips the tube to the frame; nullopt if any box collapses.
std::optional<Tube> clip_to_frame(const Tube& t, const VideoMeta& m) {
  std::vector<Box> out;
  out.reserve(t.boxes().size());
  const double w = m.width, h = m.height;
  for (const Box& b : t.boxes()) {
    const double x1 = std::clamp(b.x1(), 0.0, w), x2 = std::clamp(b.x2(), 0.0, w);
    const double y1 = std::clamp(b.y1(), 0.0, h), y2 = std::clamp(b.y2(), 0.0, h);
    if (!Box::is_valid(x1, y1, x2, y2)) return std::nullopt;
    out.emplace_back(x1, y1, x2, y2);
  }
  return Tube(t.class_id(), t.score(), t.segment(), std::move(out));
}

}  // namespace

BuildResult build_catalog(std::span<const FrameObjectAnnotation> annotations,
                          std::span<const VideoSource> videos, const DatasetConfig& cfg) {
  cfg.validate();
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    videos[i].meta.validate();
    if (!by_id.emplace(videos[i].meta.video_id, i).second) {
      throw std::invalid_argument("duplicate video metadata for '" + videos[i].meta.video_id + "'");
    }
  }

  std::vector<std::vector<FrameObjectAnnotation>> grouped(videos.size());
  std::vector<Rejection> rejected;
  std::map<std::string, bool> orphan;
  for (const FrameObjectAnnotation& a : annotations) {
    auto it = by_id.find(a.video_id);
    if (it == by_id.end()) {
      orphan[a.video_id] = true;
      continue;
    }
    grouped[it->second].push_back(a);
  }
  for (const auto& [id, _] : orphan) rejected.push_back({id, "annotations for unknown video"});

  struct Slot {
    std::optional<VideoCatalogEntry> entry;
    std::string diagnostic;
  };
  std::vector<Slot> slots(videos.size());
  parallel_for(videos.size(), [&](std::size_t i) {
    const VideoMeta& m = videos[i].meta;
    for (const FrameObjectAnnotation& a : grouped[i]) {
      if (a.frame < 0 || a.frame >= m.num_frames) {
        slots[i].diagnostic = "annotation frame " + std::to_string(a.frame) +
                              " outside video of " + std::to_string(m.num_frames) + " frames";
        return;
      }
    }
    TubeSynthesis syn = synthesize_tube(grouped[i]);
    if (!syn.tube) {
      slots[i].diagnostic = syn.diagnostic;
      return;
    }
    std::optional<Tube> clipped = clip_to_frame(*syn.tube, m);
    if (!clipped) {
      slots[i].diagnostic = "tube box lies outside the frame";
      return;
    }
    const Ratios r = compute_ratios(*clipped, m);
    slots[i].entry = VideoCatalogEntry{m, videos[i].label, std::move(*clipped), r.temporal, r.spatial};
  });

  std::vector<VideoCatalogEntry> candidates;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].entry) {
      candidates.push_back(std::move(*slots[i].entry));
    } else {
      rejected.push_back({videos[i].meta.video_id, slots[i].diagnostic});
    }
  }
  const std::size_t synthesized = candidates.size();
  BuildResult res = curate(std::move(candidates), cfg);
  res.videos_in = videos.size();
  res.synthesized = synthesized;
  res.rejected.insert(res.rejected.end(), rejected.begin(), rejected.end());
  std::sort(res.rejected.begin(), res.rejected.end(),
            [](const Rejection& a, const Rejection& b) { return a.video_id < b.video_id; });
  return res;
}

}  // namespace star
