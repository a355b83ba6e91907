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
#include "star/linker.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "star/kernels.hpp"
#include "star/parallel.hpp"

namespace star {
namespace {

const std::vector<ScoredBox>* candidates_at(const FrameIndex& frames, int frame) {
  auto it = frames.find(frame);
  if (it == frames.end() || it->second.boxes.empty()) return nullptr;
  for (const ScoredBox& b : it->second.boxes) {
    if (b.frame != frame) {
      throw std::invalid_argument("box tagged with frame " + std::to_string(b.frame) +
                                  " stored under frame " + std::to_string(frame));
    }
  }
  return &it->second.boxes;
}

const ScoredBox& best_actionness(const std::vector<ScoredBox>& boxes) {
  return boxes[rank_order(boxes).front()];
}

// Candidate with maximum IoU against prev; ties by score, x1, y1, position.
const ScoredBox& best_overlap(const Box& prev, const std::vector<ScoredBox>& cands,
                              std::vector<Box>& scratch_boxes, std::vector<double>& scratch_iou) {
  scratch_boxes.clear();
  for (const ScoredBox& c : cands) scratch_boxes.push_back(c.box);
  scratch_iou.resize(cands.size());
  kernels::iou_one_to_many(prev, scratch_boxes, scratch_iou);
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const ScoredBox& c = cands[i];
    const ScoredBox& b = cands[best];
    if (scratch_iou[i] != scratch_iou[best]) {
      if (scratch_iou[i] > scratch_iou[best]) best = i;
    } else if (c.score != b.score) {
      if (c.score > b.score) best = i;
    } else if (c.box.x1() != b.box.x1()) {
      if (c.box.x1() < b.box.x1()) best = i;
    } else if (c.box.y1() < b.box.y1()) {
      best = i;
    }
  }
  return cands[best];
}

Box lerp(const Box& a, const Box& b, double t) {
  return Box(a.x1() + (b.x1() - a.x1()) * t, a.y1() + (b.y1() - a.y1()) * t,
             a.x2() + (b.x2() - a.x2()) * t, a.y2() + (b.y2() - a.y2()) * t);
}

}  // namespace

double score_tube(double cls_score, std::span<const double> box_scores) {
  if (box_scores.empty()) throw std::invalid_argument("score_tube needs at least one box score");
  double sum = 0.0;
  for (double s : box_scores) sum += s;
  return cls_score + sum / static_cast<double>(box_scores.size());
}

LinkResult link_tube(const ClassifiedProposal& proposal, const FrameIndex& frames,
                     EmptyFramePolicy policy) {
  const Segment& seg = proposal.segment;
  const auto n = static_cast<std::size_t>(seg.length());

  std::optional<ScoredBox> seed;
  if (const auto* first = candidates_at(frames, seg.start())) {
    seed = best_actionness(*first);
  } else {
    for (auto it = frames.lower_bound(seg.start()); it != frames.begin();) {
      --it;
      if (const auto* c = candidates_at(frames, it->first)) {
        seed = best_actionness(*c);
        break;
      }
    }
    if (!seed) {
      return LinkRejection{"no detections at frame " + std::to_string(seg.start()) +
                           " or any earlier frame"};
    }
  }

  // Greedy chain over frames that have candidates.
  std::vector<std::optional<ScoredBox>> chosen(n);
  std::vector<Box> scratch_boxes;
  std::vector<double> scratch_iou;
  Box prev = seed->box;
  for (std::size_t i = 0; i < n; ++i) {
    const int frame = seg.start() + static_cast<int>(i);
    const auto* c = candidates_at(frames, frame);
    if (c == nullptr) continue;
    chosen[i] = i == 0 ? *seed : best_overlap(prev, *c, scratch_boxes, scratch_iou);
    prev = chosen[i]->box;
  }

  std::vector<Box> boxes;
  std::vector<double> scores;
  std::vector<FrameSource> sources(n, FrameSource::kDetected);
  boxes.reserve(n);
  scores.reserve(n);
  std::optional<std::size_t> left;
  for (std::size_t i = 0; i < n; ++i) {
    if (chosen[i]) {
      left = i;
      boxes.push_back(chosen[i]->box);
      scores.push_back(chosen[i]->score);
      continue;
    }
    std::size_t next = i + 1;
    while (next < n && !chosen[next]) ++next;
    if (policy == EmptyFramePolicy::kInterpolate && left && next < n) {
      const double t = static_cast<double>(i - *left) / static_cast<double>(next - *left);
      const ScoredBox& a = *chosen[*left];
      const ScoredBox& b = *chosen[next];
      boxes.push_back(lerp(a.box, b.box, t));
      scores.push_back(a.score + (b.score - a.score) * t);
      sources[i] = FrameSource::kInterpolated;
    } else {
      const ScoredBox& carry = left ? *chosen[*left] : *seed;
      boxes.push_back(carry.box);
      scores.push_back(carry.score);
      sources[i] = FrameSource::kCarried;
    }
  }

  const double score = score_tube(proposal.cls_score, scores);
  return LinkedTube{Tube(proposal.class_id, score, seg, std::move(boxes)), std::move(scores),
                    std::move(sources)};
}

void LinkerConfig::validate() const {
  if (temporal_top_k < 1 || spatial_top_k < 1) throw std::invalid_argument("top-K must be >= 1");
  for (double t : {temporal_nms, spatial_nms}) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("NMS thresholds must lie in (0, 1)");
  }
}

FrameIndex suppress_frames(const FrameIndex& frames, const LinkerConfig& cfg) {
  std::vector<const FrameDetections*> items;
  items.reserve(frames.size());
  for (const auto& [f, d] : frames) items.push_back(&d);
  std::vector<FrameDetections> out(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    const FrameDetections& d = *items[i];
    out[i].frame = d.frame;
    auto kept = nms_boxes(d.boxes, cfg.spatial_nms);
    if (kept.size() > cfg.spatial_top_k) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(cfg.spatial_top_k), kept.end());
    }
    out[i].boxes = std::move(kept);
  });
  FrameIndex result;
  for (auto& d : out) {
    const int f = d.frame;
    result.emplace(f, std::move(d));
  }
  return result;
}

DetectionSet build_detections(std::span<const ClassifiedProposal> proposals,
                              const FrameIndex& frames, const LinkerConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> selected;
  FrameIndex suppressed;
  const FrameIndex* frame_src = &frames;
  if (cfg.suppress) {
    std::vector<ScoredSegment> segs;
    segs.reserve(proposals.size());
    for (const auto& p : proposals) segs.push_back({p.segment, p.cls_score, p.class_id});
    selected = nms_segment_indices(segs, cfg.temporal_nms);
    if (selected.size() > cfg.temporal_top_k) selected.resize(cfg.temporal_top_k);
    suppressed = suppress_frames(frames, cfg);
    frame_src = &suppressed;
  } else {
    selected.resize(proposals.size());
    std::iota(selected.begin(), selected.end(), std::size_t{0});
  }

  std::vector<std::optional<LinkResult>> results(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) {
    results[i] = link_tube(proposals[selected[i]], *frame_src, cfg.empty_frames);
  });

  DetectionSet out;
  std::vector<std::size_t> order;
  std::vector<Tube> tubes;
  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (auto* linked = std::get_if<LinkedTube>(&*results[i])) {
      tubes.push_back(std::move(linked->tube));
      sources.push_back(selected[i]);
    } else {
      out.diagnostics.push_back({selected[i], std::get<LinkRejection>(*results[i]).reason});
    }
  }
  order.resize(tubes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (tubes[a].score() != tubes[b].score()) return tubes[a].score() > tubes[b].score();
    return sources[a] < sources[b];
  });
  for (std::size_t i : order) {
    out.tubes.push_back(std::move(tubes[i]));
    out.proposal_of.push_back(sources[i]);
  }
  std::sort(out.diagnostics.begin(), out.diagnostics.end(),
            [](const LinkDiagnostic& a, const LinkDiagnostic& b) { return a.proposal < b.proposal; });
  return out;
}

}  // namespace star
