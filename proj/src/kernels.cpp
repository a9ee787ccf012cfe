//
// Copyright 2026 The ldpvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "ldpvote/kernels.hpp"

#include <atomic>
#include <cmath>

namespace ldpvote::kernels {

namespace scalar {

void add_inplace(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void scale_inplace(double* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

namespace {

// Four interleaved accumulators, combined as (l0+l2)+(l1+l3), tail folded
// sequentially. Mirrors the AVX2 lane layout exactly.
template <typename Term>
double reduce_sum(std::size_t n, Term term) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t vec_n = n - n % 4;
  for (std::size_t i = 0; i < vec_n; i += 4) {
    lane[0] += term(i);
    lane[1] += term(i + 1);
    lane[2] += term(i + 2);
    lane[3] += term(i + 3);
  }
  double total = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t i = vec_n; i < n; ++i) total += term(i);
  return total;
}

}  // namespace

double sum(const double* x, std::size_t n) {
  return reduce_sum(n, [&](std::size_t i) { return x[i]; });
}

double l1_norm(const double* x, std::size_t n) {
  return reduce_sum(n, [&](std::size_t i) { return std::fabs(x[i]); });
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  return reduce_sum(n, [&](std::size_t i) { return std::fabs(a[i] - b[i]); });
}

double squared_l2_distance(const double* a, const double* b, std::size_t n) {
  return reduce_sum(n, [&](std::size_t i) {
    const double diff = a[i] - b[i];
    return diff * diff;
  });
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    best = std::fmax(best, std::fabs(a[i] - b[i]));
  }
  return best;
}

}  // namespace scalar

namespace {

struct Backend {
  void (*add_inplace)(double*, const double*, std::size_t);
  void (*scale_inplace)(double*, double, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*l1_norm)(const double*, std::size_t);
  double (*l1_distance)(const double*, const double*, std::size_t);
  double (*squared_l2_distance)(const double*, const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  const char* name;
};

constexpr Backend kScalarBackend = {
    scalar::add_inplace,   scalar::scale_inplace,
    scalar::sum,           scalar::l1_norm,
    scalar::l1_distance,   scalar::squared_l2_distance,
    scalar::max_abs_diff,  "scalar"};

#if LDPVOTE_HAVE_AVX2_BACKEND
constexpr Backend kAvx2Backend = {
    avx2::add_inplace,   avx2::scale_inplace,
    avx2::sum,           avx2::l1_norm,
    avx2::l1_distance,   avx2::squared_l2_distance,
    avx2::max_abs_diff,  "avx2"};
#endif

bool avx2_supported() {
#if LDPVOTE_HAVE_AVX2_BACKEND && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

std::atomic<bool> g_simd_enabled{true};

const Backend& backend() {
#if LDPVOTE_HAVE_AVX2_BACKEND
  static const bool has_avx2 = avx2_supported();
  if (has_avx2 && g_simd_enabled.load(std::memory_order_relaxed)) {
    return kAvx2Backend;
  }
#endif
  return kScalarBackend;
}

}  // namespace

void add_inplace(double* acc, const double* x, std::size_t n) {
  backend().add_inplace(acc, x, n);
}

void scale_inplace(double* x, double s, std::size_t n) {
  backend().scale_inplace(x, s, n);
}

double sum(const double* x, std::size_t n) { return backend().sum(x, n); }

double l1_norm(const double* x, std::size_t n) {
  return backend().l1_norm(x, n);
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  return backend().l1_distance(a, b, n);
}

double squared_l2_distance(const double* a, const double* b, std::size_t n) {
  return backend().squared_l2_distance(a, b, n);
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  return backend().max_abs_diff(a, b, n);
}

const char* active_backend() { return backend().name; }

void set_simd_enabled(bool enabled) {
  g_simd_enabled.store(enabled, std::memory_order_relaxed);
}

bool simd_enabled() {
  return avx2_supported() && g_simd_enabled.load(std::memory_order_relaxed);
}

}  // namespace ldpvote::kernels
