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
#include "star/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace star::oracle {

namespace {

long long cell(double v, double pitch) { return std::llround(v / pitch); }

}  // namespace

double iou_grid(const Box& a, const Box& b, double pitch) {
  const long long ax1 = cell(a.x1(), pitch), ay1 = cell(a.y1(), pitch);
  const long long ax2 = cell(a.x2(), pitch), ay2 = cell(a.y2(), pitch);
  const long long bx1 = cell(b.x1(), pitch), by1 = cell(b.y1(), pitch);
  const long long bx2 = cell(b.x2(), pitch), by2 = cell(b.y2(), pitch);
  const long long lox = ax1 < bx1 ? ax1 : bx1, hix = ax2 > bx2 ? ax2 : bx2;
  const long long loy = ay1 < by1 ? ay1 : by1, hiy = ay2 > by2 ? ay2 : by2;

  long long in_a = 0, in_b = 0, both = 0;
  for (long long i = lox; i < hix; ++i) {
    for (long long j = loy; j < hiy; ++j) {
      const bool pa = i >= ax1 && i < ax2 && j >= ay1 && j < ay2;
      const bool pb = i >= bx1 && i < bx2 && j >= by1 && j < by2;
      in_a += pa;
      in_b += pb;
      both += pa && pb;
    }
  }
  return static_cast<double>(both) / static_cast<double>(in_a + in_b - both);
}

namespace {

double frame_iou(const Box& a, const Box& b) {
  double w = (a.x2() < b.x2() ? a.x2() : b.x2()) - (a.x1() > b.x1() ? a.x1() : b.x1());
  double h = (a.y2() < b.y2() ? a.y2() : b.y2()) - (a.y1() > b.y1() ? a.y1() : b.y1());
  if (w < 0.0) w = 0.0;
  if (h < 0.0) h = 0.0;
  const double inter = w * h;
  const double area_a = (a.x2() - a.x1()) * (a.y2() - a.y1());
  const double area_b = (b.x2() - b.x1()) * (b.y2() - b.y1());
  return inter / (area_a + area_b - inter);
}

}  // namespace

double tube_st_iou(const Tube& a, const Tube& b) {
  const int lo = a.segment().start() < b.segment().start() ? a.segment().start() : b.segment().start();
  const int hi = a.segment().end() > b.segment().end() ? a.segment().end() : b.segment().end();
  int in_a = 0, in_b = 0, both = 0;
  double sum = 0.0;
  for (int f = lo; f < hi; ++f) {
    const bool pa = f >= a.segment().start() && f < a.segment().end();
    const bool pb = f >= b.segment().start() && f < b.segment().end();
    in_a += pa;
    in_b += pb;
    if (pa && pb) {
      ++both;
      sum += frame_iou(a.boxes()[static_cast<std::size_t>(f - a.segment().start())],
                       b.boxes()[static_cast<std::size_t>(f - b.segment().start())]);
    }
  }
  if (both == 0) return 0.0;
  const double t = static_cast<double>(both) / static_cast<double>(in_a + in_b - both);
  return t * (sum / static_cast<double>(both));
}

namespace {

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

Frac reduce(Frac f) {
  const std::int64_t g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

Frac add(Frac a, Frac b) { return reduce({a.num * b.den + b.num * a.den, a.den * b.den}); }
Frac mul(Frac a, Frac b) { return reduce({a.num * b.num, a.den * b.den}); }
bool less(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }

}  // namespace

std::optional<double> average_precision(std::span<const double> scores, std::size_t num_gts,
                                        const std::function<double(std::size_t, std::size_t)>& overlap,
                                        double alpha) {
  if (scores.size() > kMaxDetections || num_gts > kMaxGroundTruth) {
    throw std::length_error("instance too large for the AP oracle");
  }
  if (num_gts == 0) return std::nullopt;

  // Selection sort keeps input order among equal scores.
  std::vector<std::size_t> order;
  std::vector<bool> used(scores.size(), false);
  for (std::size_t k = 0; k < scores.size(); ++k) {
    std::size_t best = scores.size();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (used[i]) continue;
      if (best == scores.size() || scores[i] > scores[best]) best = i;
    }
    used[best] = true;
    order.push_back(best);
  }

  std::vector<bool> taken(num_gts, false);
  std::vector<Frac> precision, recall;
  std::int64_t tp = 0, seen = 0;
  for (std::size_t d : order) {
    ++seen;
    int pick = -1;
    double pick_ov = 0.0;
    for (std::size_t g = 0; g < num_gts; ++g) {
      if (taken[g]) continue;
      const double ov = overlap(d, g);
      if (pick < 0 || ov > pick_ov) {
        pick = static_cast<int>(g);
        pick_ov = ov;
      }
    }
    if (pick >= 0 && pick_ov >= alpha) {
      taken[static_cast<std::size_t>(pick)] = true;
      ++tp;
    }
    precision.push_back(reduce({tp, seen}));
    recall.push_back(reduce({tp, static_cast<std::int64_t>(num_gts)}));
  }

  // Walk the distinct recall levels; each contributes its recall increment
  // times the best precision reached at that recall or beyond.
  Frac area{0, 1};
  Frac prev_recall{0, 1};
  for (std::size_t i = 0; i < recall.size(); ++i) {
    if (!less(prev_recall, recall[i])) continue;
    Frac best{0, 1};
    for (std::size_t j = i; j < precision.size(); ++j) {
      if (less(best, precision[j])) best = precision[j];
    }
    area = add(area, mul(add(recall[i], {-prev_recall.num, prev_recall.den}), best));
    prev_recall = recall[i];
  }
  return static_cast<double>(area.num) / static_cast<double>(area.den);
}

}  // namespace star::oracle
