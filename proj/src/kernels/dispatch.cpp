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

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

#include "star/kernels.hpp"

namespace star::kernels {
namespace {

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(STAR_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(STAR_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::atomic<const KernelTable*> g_active{nullptr};
std::atomic<Backend> g_active_backend{Backend::kScalar};
std::once_flag g_init;

void init_from_environment() {
  std::call_once(g_init, [] {
    auto avail = available_backends();
    Backend chosen = avail.back();
    if (const char* env = std::getenv("STAR_SIMD")) {
      auto requested = parse_backend(env);
      if (requested && cpu_supports(*requested)) chosen = *requested;
    }
    g_active_backend.store(chosen);
    g_active.store(&table_for(chosen));
  });
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    init_from_environment();
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "neon") return Backend::kNeon;
  return std::nullopt;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::kScalar};
  for (Backend b : {Backend::kNeon, Backend::kAvx2}) {
    if (cpu_supports(b)) out.push_back(b);
  }
  return out;
}

Backend active_backend() {
  active();
  return g_active_backend.load();
}

bool set_backend(Backend b) {
  if (!cpu_supports(b)) return false;
  init_from_environment();
  g_active_backend.store(b);
  g_active.store(&table_for(b), std::memory_order_release);
  return true;
}

const KernelTable& table_for(Backend b) {
  if (!cpu_supports(b)) {
    throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) +
                                "' is not available");
  }
  switch (b) {
#if defined(STAR_HAVE_AVX2_KERNELS)
    case Backend::kAvx2:
      return detail::avx2_table();
#endif
#if defined(STAR_HAVE_NEON_KERNELS)
    case Backend::kNeon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

void iou_one_to_many(const Box& ref, std::span<const Box> boxes, std::span<double> out) {
  active().iou_one_to_many(ref, boxes, out);
}

void iou_pairwise(std::span<const Box> a, std::span<const Box> b, std::span<double> out) {
  active().iou_pairwise(a, b, out);
}

void segment_iou_one_to_many(const Segment& ref, std::span<const Segment> segs,
                             std::span<double> out) {
  active().segment_iou_one_to_many(ref, segs, out);
}

}  // namespace star::kernels
