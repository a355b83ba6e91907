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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "star/kernels.hpp"
#include "star/parallel.hpp"

namespace star {
namespace {

__extension__ using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr u128 kExactDoubleLimit = u128{1} << 53;

// Sum of non-negative fractions, kept exact while the reduced denominator
// fits in 128 bits. The long double shadow sum takes over afterwards.
class FractionSum {
 public:
  void add(std::uint64_t num, std::uint64_t den) {
    approx_ += static_cast<long double>(num) / static_cast<long double>(den);
    if (!exact_) return;
    const u128 g = gcd128(den_, den);
    const u128 scale_self = den / g;   // lcm / den_
    const u128 scale_other = den_ / g; // lcm / den
    u128 lcm, lhs, rhs, sum;
    if (__builtin_mul_overflow(den_, scale_self, &lcm) ||
        __builtin_mul_overflow(num_, scale_self, &lhs) ||
        __builtin_mul_overflow(u128{num}, scale_other, &rhs) ||
        __builtin_add_overflow(lhs, rhs, &sum)) {
      exact_ = false;
      return;
    }
    const u128 r = gcd128(sum, lcm);
    num_ = r ? sum / r : 0;
    den_ = r ? lcm / r : 1;
  }

  // Correctly rounded sum / divisor while exact and small enough.
  double divided_by(std::uint64_t divisor) const {
    u128 den;
    if (exact_ && !__builtin_mul_overflow(den_, u128{divisor}, &den)) {
      const u128 r = gcd128(num_, den);
      const u128 n = r ? num_ / r : 0;
      const u128 d = r ? den / r : 1;
      if (n < kExactDoubleLimit && d < kExactDoubleLimit) {
        return static_cast<double>(n) / static_cast<double>(d);
      }
      return static_cast<double>(static_cast<long double>(n) / static_cast<long double>(d));
    }
    return static_cast<double>(approx_ / static_cast<long double>(divisor));
  }

 private:
  u128 num_ = 0;
  u128 den_ = 1;
  bool exact_ = true;
  long double approx_ = 0.0L;
};

// Precision tp/k as an exact fraction for envelope comparisons.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool operator<(const Ratio& o) const { return u128{num} * o.den < u128{o.num} * den; }
};

double all_point_ap(const std::vector<int>& matched, std::size_t num_gt) {
  const std::size_t n = matched.size();
  std::vector<Ratio> env(n);
  std::uint64_t tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (matched[k] >= 0) ++tp;
    env[k] = {tp, k + 1};
  }
  for (std::size_t k = n; k-- > 1;) {
    if (env[k - 1] < env[k]) env[k - 1] = env[k];
  }
  FractionSum sum;
  for (std::size_t k = 0; k < n; ++k) {
    if (matched[k] >= 0) sum.add(env[k].num, env[k].den);
  }
  return sum.divided_by(num_gt);
}

double eleven_point_ap(const std::vector<int>& matched, std::size_t num_gt) {
  const std::size_t n = matched.size();
  std::vector<std::uint64_t> tp(n);
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (matched[k] >= 0) ++acc;
    tp[k] = acc;
  }
  double total = 0.0;
  for (std::uint64_t t = 0; t <= 10; ++t) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      // recall_k >= t / 10, compared in integers
      if (tp[k] * 10 >= t * num_gt) {
        best = std::max(best, static_cast<double>(tp[k]) / static_cast<double>(k + 1));
      }
    }
    total += best;
  }
  return total / 11.0;
}

// Greedy assignment over a dense row-major overlap matrix (dets x gts).
void greedy_on_matrix(const double* overlap, std::size_t nd, std::size_t ng, double alpha,
                      std::vector<char>& used, int* out) {
  used.assign(ng, 0);
  for (std::size_t d = 0; d < nd; ++d) {
    const double* row = overlap + d * ng;
    int best = -1;
    double best_overlap = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
      if (used[g]) continue;
      if (best < 0 || row[g] > best_overlap) {
        best = static_cast<int>(g);
        best_overlap = row[g];
      }
    }
    if (best >= 0 && best_overlap >= alpha) {
      used[static_cast<std::size_t>(best)] = 1;
      out[d] = best;
    } else {
      out[d] = -1;
    }
  }
}

// ---------------------------------------------------------------------------
// Pooled evaluation engine shared by the video, frame and temporal metrics.

struct TubeItem {
  int cls;
  double score;
  const Tube* tube;
};

struct FrameItem {
  int frame;
  int cls;
  double score;
  Box box;
};

struct SegItem {
  int cls;
  double score;
  Segment seg;
};

bool boxes_less(const Box& a, const Box& b) {
  if (a.x1() != b.x1()) return a.x1() < b.x1();
  if (a.y1() != b.y1()) return a.y1() < b.y1();
  if (a.x2() != b.x2()) return a.x2() < b.x2();
  return a.y2() < b.y2();
}

struct TubeTraits {
  using Item = TubeItem;
  static int block(const Item&) { return 0; }
  static bool content_less(const Item& a, const Item& b) {
    const Tube& x = *a.tube;
    const Tube& y = *b.tube;
    if (x.segment() != y.segment()) return x.segment() < y.segment();
    return std::lexicographical_compare(x.boxes().begin(), x.boxes().end(), y.boxes().begin(),
                                        y.boxes().end(), boxes_less);
  }
  static void fill_row(const Item& det, std::span<const Item> gts, double* out) {
    for (std::size_t g = 0; g < gts.size(); ++g) out[g] = tube_st_iou(*det.tube, *gts[g].tube);
  }
};

struct FrameTraits {
  using Item = FrameItem;
  static int block(const Item& i) { return i.frame; }
  static bool content_less(const Item& a, const Item& b) { return boxes_less(a.box, b.box); }
  static void fill_row(const Item& det, std::span<const Item> gts, double* out) {
    for (std::size_t g = 0; g < gts.size(); ++g) out[g] = box_iou(det.box, gts[g].box);
  }
};

struct SegTraits {
  using Item = SegItem;
  static int block(const Item&) { return 0; }
  static bool content_less(const Item& a, const Item& b) { return a.seg < b.seg; }
  static void fill_row(const Item& det, std::span<const Item> gts, double* out) {
    thread_local std::vector<Segment> segs;
    segs.clear();
    for (const Item& g : gts) segs.push_back(g.seg);
    kernels::segment_iou_one_to_many(det.seg, segs, {out, gts.size()});
  }
};

struct Entry {
  int cls;
  double score;
  std::uint32_t video;
  std::uint32_t rank;
};

struct VideoResult {
  std::vector<Entry> entries;
  std::vector<std::vector<char>> tp;  // [alpha][entry]
  std::vector<std::size_t> tp_count;  // [alpha]
  std::size_t num_det = 0;
  std::size_t num_gt = 0;
  std::map<int, std::size_t> gt_per_class;
};

template <typename Traits>
VideoResult match_video(std::vector<typename Traits::Item> dets,
                        std::vector<typename Traits::Item> gts, std::uint32_t video,
                        std::span<const double> alphas) {
  using Item = typename Traits::Item;
  std::sort(dets.begin(), dets.end(), [](const Item& a, const Item& b) {
    const int ba = Traits::block(a), bb = Traits::block(b);
    if (ba != bb) return ba < bb;
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.score != b.score) return a.score > b.score;
    return Traits::content_less(a, b);
  });
  std::sort(gts.begin(), gts.end(), [](const Item& a, const Item& b) {
    const int ba = Traits::block(a), bb = Traits::block(b);
    if (ba != bb) return ba < bb;
    if (a.cls != b.cls) return a.cls < b.cls;
    return Traits::content_less(a, b);
  });

  VideoResult r;
  r.num_det = dets.size();
  r.num_gt = gts.size();
  for (const Item& g : gts) ++r.gt_per_class[g.cls];
  r.entries.reserve(dets.size());
  r.tp.assign(alphas.size(), std::vector<char>(dets.size(), 0));
  r.tp_count.assign(alphas.size(), 0);

  auto key_less = [](const Item& a, const Item& b) {
    const int ba = Traits::block(a), bb = Traits::block(b);
    return ba != bb ? ba < bb : a.cls < b.cls;
  };

  std::vector<double> matrix;
  std::vector<int> assigned;
  std::vector<char> used;
  std::size_t g0 = 0;
  for (std::size_t d0 = 0; d0 < dets.size();) {
    std::size_t d1 = d0 + 1;
    while (d1 < dets.size() && !key_less(dets[d0], dets[d1])) ++d1;
    while (g0 < gts.size() && key_less(gts[g0], dets[d0])) ++g0;
    std::size_t g1 = g0;
    while (g1 < gts.size() && !key_less(dets[d0], gts[g1])) ++g1;

    const std::size_t nd = d1 - d0, ng = g1 - g0;
    for (std::size_t d = d0; d < d1; ++d) {
      r.entries.push_back({dets[d].cls, dets[d].score, video, static_cast<std::uint32_t>(d)});
    }
    if (ng > 0) {
      matrix.resize(nd * ng);
      const std::span<const Item> block_gts(gts.data() + g0, ng);
      for (std::size_t d = 0; d < nd; ++d) {
        Traits::fill_row(dets[d0 + d], block_gts, matrix.data() + d * ng);
      }
      assigned.resize(nd);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        greedy_on_matrix(matrix.data(), nd, ng, alphas[a], used, assigned.data());
        for (std::size_t d = 0; d < nd; ++d) {
          if (assigned[d] >= 0) {
            r.tp[a][d0 + d] = 1;
            ++r.tp_count[a];
          }
        }
      }
    }
    d0 = d1;
  }
  return r;
}

struct Corpus {
  std::vector<const VideoAnnotation*> videos;  // sorted by id
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::vector<const Tube*>> dets;  // per video
};

Corpus index_corpus(std::span<const TubeDetection> dets, std::span<const VideoAnnotation> gts) {
  Corpus c;
  for (const VideoAnnotation& v : gts) {
    v.validate();
    c.videos.push_back(&v);
  }
  std::sort(c.videos.begin(), c.videos.end(), [](const VideoAnnotation* a, const VideoAnnotation* b) {
    return a->meta.video_id < b->meta.video_id;
  });
  for (std::size_t i = 0; i < c.videos.size(); ++i) {
    const auto [it, inserted] =
        c.index.emplace(c.videos[i]->meta.video_id, static_cast<std::uint32_t>(i));
    if (!inserted) throw std::invalid_argument("duplicate video '" + it->first + "'");
  }
  c.dets.resize(c.videos.size());
  for (const TubeDetection& d : dets) {
    auto it = c.index.find(d.video_id);
    if (it == c.index.end()) {
      throw std::invalid_argument("detection references video '" + d.video_id +
                                  "' which has no ground-truth metadata");
    }
    c.dets[it->second].push_back(&d.tube);
  }
  return c;
}

// Per-class AP for each alpha from pooled per-video results.
std::vector<EvalReport> summarize(MetricKind kind, std::span<const double> alphas,
                                  const Corpus& corpus, const std::vector<VideoResult>& results,
                                  const EvalOptions& opts) {
  std::map<int, std::size_t> gt_per_class;
  for (const auto& r : results) {
    for (const auto& [cls, n] : r.gt_per_class) gt_per_class[cls] += n;
  }

  // (video, position) of every entry, grouped by class.
  std::map<int, std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_class;
  std::size_t unknown = 0;
  for (std::uint32_t v = 0; v < results.size(); ++v) {
    const auto& es = results[v].entries;
    for (std::uint32_t i = 0; i < es.size(); ++i) {
      if (gt_per_class.count(es[i].cls) == 0) {
        ++unknown;
        continue;
      }
      by_class[es[i].cls].emplace_back(v, i);
    }
  }
  for (auto& [cls, list] : by_class) {
    std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      const Entry& x = results[a.first].entries[a.second];
      const Entry& y = results[b.first].entries[b.second];
      if (x.score != y.score) return x.score > y.score;
      if (x.video != y.video) return x.video < y.video;
      return x.rank < y.rank;
    });
  }

  std::vector<EvalReport> reports(alphas.size());
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    EvalReport& rep = reports[a];
    rep.kind = kind;
    rep.alpha = alphas[a];
    rep.unknown_class_detections = unknown;
    for (const auto& [cls, num_gt] : gt_per_class) {
      ClassAp c;
      c.class_id = cls;
      c.num_gt = num_gt;
      auto it = by_class.find(cls);
      MatchResult m;
      m.num_gt = num_gt;
      if (it != by_class.end()) {
        for (const auto& [v, i] : it->second) {
          m.scores.push_back(results[v].entries[i].score);
          m.matched_gt.push_back(results[v].tp[a][i] ? 0 : -1);
        }
      }
      c.num_det = m.scores.size();
      c.num_tp = m.num_tp();
      if (opts.frame_per_video && kind == MetricKind::kFrame) {
        // Mean over videos containing the class of the per-video AP.
        std::vector<MatchResult> per_video(results.size());
        if (it != by_class.end()) {
          for (const auto& [v, i] : it->second) {
            per_video[v].scores.push_back(results[v].entries[i].score);
            per_video[v].matched_gt.push_back(results[v].tp[a][i] ? 0 : -1);
          }
        }
        double sum = 0.0;
        std::size_t count = 0;
        for (std::uint32_t v = 0; v < results.size(); ++v) {
          auto g = results[v].gt_per_class.find(cls);
          if (g == results[v].gt_per_class.end()) continue;
          per_video[v].num_gt = g->second;
          sum += *average_precision(per_video[v], opts.ap_mode);
          ++count;
        }
        c.ap = sum / static_cast<double>(count);
      } else {
        c.ap = *average_precision(m, opts.ap_mode);
      }
      rep.classes.push_back(c);
    }
    double total = 0.0;
    for (const ClassAp& c : rep.classes) total += c.ap;
    rep.map = rep.classes.empty() ? 0.0 : total / static_cast<double>(rep.classes.size());
    for (std::uint32_t v = 0; v < results.size(); ++v) {
      rep.videos.push_back({corpus.videos[v]->meta.video_id, results[v].num_gt,
                            results[v].num_det, results[v].tp_count[a]});
    }
  }
  return reports;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("IoU threshold must lie in (0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

std::size_t MatchResult::num_tp() const {
  return static_cast<std::size_t>(
      std::count_if(matched_gt.begin(), matched_gt.end(), [](int g) { return g >= 0; }));
}

MatchResult match_greedy(std::span<const double> scores, std::size_t num_gts,
                         const OverlapFn& overlap, double alpha) {
  MatchResult m;
  m.num_gt = num_gts;
  m.order.resize(scores.size());
  std::iota(m.order.begin(), m.order.end(), std::size_t{0});
  std::stable_sort(m.order.begin(), m.order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<double> matrix(scores.size() * num_gts);
  for (std::size_t p = 0; p < m.order.size(); ++p) {
    for (std::size_t g = 0; g < num_gts; ++g) matrix[p * num_gts + g] = overlap(m.order[p], g);
    m.scores.push_back(scores[m.order[p]]);
  }
  m.matched_gt.resize(scores.size());
  std::vector<char> used;
  greedy_on_matrix(matrix.data(), scores.size(), num_gts, alpha, used, m.matched_gt.data());
  return m;
}

std::optional<double> average_precision(const MatchResult& match, ApMode mode) {
  if (match.num_gt == 0) return std::nullopt;
  return mode == ApMode::kAllPoint ? all_point_ap(match.matched_gt, match.num_gt)
                                   : eleven_point_ap(match.matched_gt, match.num_gt);
}

EvalReport video_map(std::span<const TubeDetection> dets, std::span<const VideoAnnotation> gts,
                     double alpha, const EvalOptions& opts) {
  check_alpha(alpha);
  const Corpus corpus = index_corpus(dets, gts);
  std::vector<VideoResult> results(corpus.videos.size());
  const double alphas[] = {alpha};
  parallel_for(corpus.videos.size(), [&](std::size_t v) {
    std::vector<TubeItem> d, g;
    for (const Tube* t : corpus.dets[v]) d.push_back({t->class_id(), t->score(), t});
    for (const Tube& t : corpus.videos[v]->tubes) g.push_back({t.class_id(), t.score(), &t});
    results[v] = match_video<TubeTraits>(std::move(d), std::move(g), static_cast<std::uint32_t>(v),
                                         alphas);
  });
  return summarize(MetricKind::kVideo, alphas, corpus, results, opts).front();
}

EvalReport frame_map(std::span<const TubeDetection> dets, std::span<const VideoAnnotation> gts,
                     double alpha, const EvalOptions& opts) {
  check_alpha(alpha);
  const Corpus corpus = index_corpus(dets, gts);
  std::vector<VideoResult> results(corpus.videos.size());
  const double alphas[] = {alpha};
  auto explode = [](const Tube& t, std::vector<FrameItem>& out) {
    for (int f = t.segment().start(); f < t.segment().end(); ++f) {
      out.push_back({f, t.class_id(), t.score(), t.box_at(f)});
    }
  };
  parallel_for(corpus.videos.size(), [&](std::size_t v) {
    std::vector<FrameItem> d, g;
    for (const Tube* t : corpus.dets[v]) explode(*t, d);
    for (const Tube& t : corpus.videos[v]->tubes) explode(t, g);
    results[v] = match_video<FrameTraits>(std::move(d), std::move(g),
                                          static_cast<std::uint32_t>(v), alphas);
  });
  return summarize(MetricKind::kFrame, alphas, corpus, results, opts).front();
}

std::vector<double> default_temporal_alphas() {
  std::vector<double> a;
  for (int k = 10; k <= 19; ++k) a.push_back(k / 20.0);
  return a;
}

TemporalReport temporal_map(std::span<const TubeDetection> dets,
                            std::span<const VideoAnnotation> gts, std::span<const double> alphas,
                            const EvalOptions& opts) {
  if (alphas.empty()) throw std::invalid_argument("temporal_map needs at least one threshold");
  for (double a : alphas) check_alpha(a);
  const Corpus corpus = index_corpus(dets, gts);
  std::vector<VideoResult> results(corpus.videos.size());
  parallel_for(corpus.videos.size(), [&](std::size_t v) {
    std::vector<SegItem> d, g;
    for (const Tube* t : corpus.dets[v]) d.push_back({t->class_id(), t->score(), t->segment()});
    // Keep the best-scoring copy of each (class, segment).
    std::sort(d.begin(), d.end(), [](const SegItem& a, const SegItem& b) {
      if (a.cls != b.cls) return a.cls < b.cls;
      if (a.seg != b.seg) return a.seg < b.seg;
      return a.score > b.score;
    });
    d.erase(std::unique(d.begin(), d.end(),
                        [](const SegItem& a, const SegItem& b) {
                          return a.cls == b.cls && a.seg == b.seg;
                        }),
            d.end());
    for (const Tube& t : corpus.videos[v]->tubes) g.push_back({t.class_id(), t.score(), t.segment()});
    results[v] = match_video<SegTraits>(std::move(d), std::move(g), static_cast<std::uint32_t>(v),
                                        alphas);
  });
  TemporalReport out;
  out.per_alpha = summarize(MetricKind::kTemporal, alphas, corpus, results, opts);
  double total = 0.0;
  for (const EvalReport& r : out.per_alpha) total += r.map;
  out.average_map = total / static_cast<double>(out.per_alpha.size());
  return out;
}

RecallReport average_recall(std::span<const VideoProposal> proposals,
                            std::span<const VideoAnnotation> gts,
                            std::span<const double> thresholds, int max_budget) {
  if (thresholds.empty()) throw std::invalid_argument("average_recall needs thresholds");
  if (max_budget < 1) throw std::invalid_argument("max_budget must be >= 1");
  std::vector<TubeDetection> none;
  const Corpus corpus = index_corpus(none, gts);

  std::vector<std::vector<const VideoProposal*>> by_video(corpus.videos.size());
  for (const VideoProposal& p : proposals) {
    auto it = corpus.index.find(p.video_id);
    if (it == corpus.index.end()) {
      throw std::invalid_argument("proposal references video '" + p.video_id +
                                  "' which has no ground-truth metadata");
    }
    by_video[it->second].push_back(&p);
  }

  const auto budgets = static_cast<std::size_t>(max_budget);
  const std::size_t nt = thresholds.size();
  // Per video: hits[b][t] = GTs recalled at threshold t with budget b + 1;
  // hits_all[t] with every proposal.
  struct VideoRecall {
    std::vector<std::size_t> hits;      // budgets x thresholds
    std::vector<std::size_t> hits_all;  // thresholds
    std::size_t num_gt = 0;
    std::size_t num_proposals = 0;
  };
  std::vector<VideoRecall> per_video(corpus.videos.size());
  parallel_for(corpus.videos.size(), [&](std::size_t v) {
    auto props = by_video[v];
    std::sort(props.begin(), props.end(), [](const VideoProposal* a, const VideoProposal* b) {
      if (a->score != b->score) return a->score > b->score;
      return a->segment < b->segment;
    });
    std::vector<Segment> segs;
    for (const VideoProposal* p : props) segs.push_back(p->segment);
    VideoRecall& vr = per_video[v];
    vr.hits.assign(budgets * nt, 0);
    vr.hits_all.assign(nt, 0);
    vr.num_proposals = segs.size();
    std::vector<double> ious(segs.size());
    for (const Tube& gt : corpus.videos[v]->tubes) {
      ++vr.num_gt;
      kernels::segment_iou_one_to_many(gt.segment(), segs, ious);
      double best = 0.0;
      for (std::size_t b = 0; b < budgets; ++b) {
        if (b < ious.size()) best = std::max(best, ious[b]);
        for (std::size_t t = 0; t < nt; ++t) {
          if (best >= thresholds[t]) ++vr.hits[b * nt + t];
        }
      }
      for (double iou : ious) best = std::max(best, iou);
      for (std::size_t t = 0; t < nt; ++t) {
        if (best >= thresholds[t]) ++vr.hits_all[t];
      }
    }
  });

  RecallReport rep;
  rep.thresholds.assign(thresholds.begin(), thresholds.end());
  std::vector<std::size_t> hits_all(nt, 0);
  std::vector<std::size_t> hits(budgets * nt, 0);
  std::vector<std::size_t> realised(budgets, 0);
  for (const VideoRecall& vr : per_video) {
    rep.num_gt += vr.num_gt;
    for (std::size_t t = 0; t < nt; ++t) hits_all[t] += vr.hits_all[t];
    for (std::size_t i = 0; i < hits.size(); ++i) hits[i] += vr.hits[i];
    for (std::size_t b = 0; b < budgets; ++b) realised[b] += std::min(vr.num_proposals, b + 1);
  }
  const double num_gt = static_cast<double>(rep.num_gt);
  auto mean_recall = [&](const std::size_t* h) {
    if (rep.num_gt == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t t = 0; t < nt; ++t) sum += static_cast<double>(h[t]) / num_gt;
    return sum / static_cast<double>(nt);
  };
  for (std::size_t t = 0; t < nt; ++t) {
    rep.recall.push_back(rep.num_gt ? static_cast<double>(hits_all[t]) / num_gt : 0.0);
  }
  rep.average_recall = mean_recall(hits_all.data());
  const double nv = static_cast<double>(std::max<std::size_t>(corpus.videos.size(), 1));
  for (std::size_t b = 0; b < budgets; ++b) {
    rep.curve.push_back({static_cast<int>(b + 1), static_cast<double>(realised[b]) / nv,
                         mean_recall(hits.data() + b * nt)});
  }
  return rep;
}

}  // namespace star
