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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "star/parallel.hpp"

namespace star {

void ScenarioSpec::validate() const {
  auto rate = [](double r, const char* what) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
  };
  if (num_videos < 0) throw std::invalid_argument("num_videos must be >= 0");
  if (num_classes < 1) throw std::invalid_argument("num_classes must be >= 1");
  if (min_frames < 1 || max_frames < min_frames) {
    throw std::invalid_argument("frame counts must satisfy 1 <= min_frames <= max_frames");
  }
  if (width < 8 || height < 8) throw std::invalid_argument("frame size must be at least 8x8");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
  if (tubes_per_video < 0) throw std::invalid_argument("tubes_per_video must be >= 0");
  if (!(min_tube_fraction > 0.0 && min_tube_fraction <= max_tube_fraction &&
        max_tube_fraction <= 1.0)) {
    throw std::invalid_argument("tube fractions must satisfy 0 < min <= max <= 1");
  }
  if (!(max_speed >= 0.0)) throw std::invalid_argument("max_speed must be >= 0");
  if (!(noise.jitter_sigma >= 0.0)) throw std::invalid_argument("jitter_sigma must be >= 0");
  if (!(noise.score_noise >= 0.0)) throw std::invalid_argument("score_noise must be >= 0");
  if (!(noise.segment_jitter >= 0.0)) throw std::invalid_argument("segment_jitter must be >= 0");
  rate(noise.fp_rate, "fp_rate");
  rate(noise.fn_rate, "fn_rate");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hand-rolled draws so the stream is identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive
    const auto bound = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return lo + static_cast<int>(r % bound);
    }
  }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

struct Motion {
  double x, y, w, h, vx, vy;
};

Motion draw_motion(Rng& rng, const ScenarioSpec& s) {
  Motion m;
  m.w = rng.uniform(0.15, 0.5) * s.width;
  m.h = rng.uniform(0.15, 0.5) * s.height;
  m.x = rng.uniform(0.0, s.width - m.w);
  m.y = rng.uniform(0.0, s.height - m.h);
  m.vx = rng.uniform(-s.max_speed, s.max_speed);
  m.vy = rng.uniform(-s.max_speed, s.max_speed);
  return m;
}

Box box_at(const Motion& m, int k, const ScenarioSpec& s) {
  const double x = std::clamp(m.x + m.vx * k, 0.0, s.width - m.w);
  const double y = std::clamp(m.y + m.vy * k, 0.0, s.height - m.h);
  return Box(x, y, x + m.w, y + m.h);
}

// Keeps a perturbed box inside the frame and at least 1 px on each side.
Box fit(double x1, double y1, double x2, double y2, const ScenarioSpec& s) {
  auto axis = [](double& lo, double& hi, double extent) {
    lo = std::clamp(lo, 0.0, extent - 1.0);
    hi = std::clamp(hi, 0.0, extent);
    if (hi - lo < 1.0) hi = lo + 1.0;
  };
  axis(x1, x2, s.width);
  axis(y1, y2, s.height);
  return Box(x1, y1, x2, y2);
}

Box jitter(const Box& b, const double n[4], double sigma, const ScenarioSpec& s) {
  if (sigma == 0.0) return b;
  return fit(b.x1() + sigma * n[0], b.y1() + sigma * n[1], b.x2() + sigma * n[2],
             b.y2() + sigma * n[3], s);
}

double perfect_minus(double noise, double n) {
  return std::clamp(1.0 - noise * std::fabs(n), 1e-3, 1.0);
}

struct VideoOut {
  VideoAnnotation gt;
  std::vector<Tube> dets;
  FrameIndex frames;
  std::vector<ClassifiedProposal> proposals;
};

VideoOut generate_video(const ScenarioSpec& s, int v) {
  Rng rng(splitmix64(s.seed ^ splitmix64(static_cast<std::uint64_t>(v))));
  const NoiseModel& nz = s.noise;
  VideoOut out;

  char id[32];
  std::snprintf(id, sizeof id, "vid_%05d", v);
  const int T = rng.uniform_int(s.min_frames, s.max_frames);
  out.gt.meta = VideoMeta{id, T, s.width, s.height, s.fps};

  const int min_len = std::max(1, static_cast<int>(std::lround(s.min_tube_fraction * T)));
  const int max_len = std::max(min_len, static_cast<int>(std::lround(s.max_tube_fraction * T)));

  for (int j = 0; j < s.tubes_per_video; ++j) {
    const int cls = rng.uniform_int(0, s.num_classes - 1);
    const int len = rng.uniform_int(min_len, max_len);
    const int start = rng.uniform_int(0, T - len);
    const Motion m = draw_motion(rng, s);
    std::vector<Box> boxes;
    for (int k = 0; k < len; ++k) boxes.push_back(box_at(m, k, s));
    out.gt.tubes.emplace_back(cls, 1.0, Segment(start, start + len), std::move(boxes));
  }

  std::vector<bool> missed;
  for (const Tube& g : out.gt.tubes) {
    const bool miss = rng.uniform() < nz.fn_rate;
    missed.push_back(miss);
    const double ns = rng.normal(), ne = rng.normal(), nscore = rng.normal();
    std::vector<double> n(static_cast<std::size_t>(4 * T));
    for (double& x : n) x = rng.normal();
    if (miss) continue;

    int a = g.segment().start() + static_cast<int>(std::lround(nz.segment_jitter * ns));
    int b = g.segment().end() + static_cast<int>(std::lround(nz.segment_jitter * ne));
    a = std::clamp(a, 0, T - 1);
    b = std::clamp(b, a + 1, T);
    std::vector<Box> boxes;
    for (int f = a; f < b; ++f) {
      const int src = std::clamp(f, g.segment().start(), g.segment().end() - 1);
      boxes.push_back(jitter(g.box_at(src), &n[static_cast<std::size_t>(4 * f)], nz.jitter_sigma, s));
    }
    const double score = perfect_minus(nz.score_noise, nscore);
    out.dets.emplace_back(g.class_id(), score, Segment(a, b), std::move(boxes));
    out.proposals.push_back({Segment(a, b), g.class_id(), score});
  }

  // Spurious tubes; drawn unconditionally to keep the stream aligned.
  for (std::size_t j = 0; j < out.gt.tubes.size(); ++j) {
    const bool emit = rng.uniform() < nz.fp_rate;
    const int cls = rng.uniform_int(0, s.num_classes - 1);
    const int len = rng.uniform_int(min_len, max_len);
    const int start = rng.uniform_int(0, T - len);
    const Motion m = draw_motion(rng, s);
    const double score = rng.uniform(0.05, 0.6);
    if (!emit) continue;
    std::vector<Box> boxes;
    for (int k = 0; k < len; ++k) boxes.push_back(box_at(m, k, s));
    out.dets.emplace_back(cls, score, Segment(start, start + len), std::move(boxes));
    out.proposals.push_back({Segment(start, start + len), cls, score});
  }

  for (int f = 0; f < T; ++f) {
    FrameDetections fd;
    fd.frame = f;
    for (std::size_t j = 0; j < out.gt.tubes.size(); ++j) {
      const Tube& g = out.gt.tubes[j];
      double n[4];
      for (double& x : n) x = rng.normal();
      const double na = rng.normal();
      if (!g.segment().contains(f) || missed[j]) continue;
      fd.boxes.push_back({jitter(g.box_at(f), n, nz.jitter_sigma, s),
                          perfect_minus(nz.score_noise, na), f});
    }
    const bool clutter = rng.uniform() < nz.fp_rate;
    const Motion m = draw_motion(rng, s);
    const double act = rng.uniform(0.05, 0.5);
    if (clutter) fd.boxes.push_back({box_at(m, 0, s), act, f});
    if (!fd.boxes.empty()) out.frames.emplace(f, std::move(fd));
  }
  return out;
}

}  // namespace

SyntheticCorpus generate_corpus(const ScenarioSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.num_videos);
  std::vector<VideoOut> videos(n);
  parallel_for(n, [&](std::size_t v) { videos[v] = generate_video(spec, static_cast<int>(v)); });

  SyntheticCorpus c;
  for (VideoOut& v : videos) {
    const std::string& id = v.gt.meta.video_id;
    for (Tube& t : v.dets) c.dets.push_back({id, std::move(t)});
    c.frame_dets.push_back({id, std::move(v.frames)});
    c.proposals.push_back({id, std::move(v.proposals)});
    c.gts.push_back(std::move(v.gt));
  }
  return c;
}

}  // namespace star
