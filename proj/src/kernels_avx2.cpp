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

// Compiled with -mavx2; callers must gate on runtime CPU support.

#include "ldpvote/kernels.hpp"

#if LDPVOTE_HAVE_AVX2_BACKEND

#include <immintrin.h>

#include <cmath>

namespace ldpvote::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign_mask, x);
}

// (l0+l2)+(l1+l3): extract halves, add, then pair the two remaining lanes.
inline double reduce_lanes(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // [l0+l2, l1+l3]
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

inline double reduce_max(__m128d pair) {
  return std::fmax(_mm_cvtsd_f64(pair),
                   _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair)));
}

}  // namespace

void add_inplace(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(acc + i);
    const __m256d b = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(a, b));
  }
  for (; i < n; ++i) acc[i] += x[i];
}

void scale_inplace(double* x, double s, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vs));
  }
  for (; i < n; ++i) x[i] *= s;
}

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  }
  double total = reduce_lanes(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double l1_norm(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
  }
  double total = reduce_lanes(acc);
  for (; i < n; ++i) total += std::fabs(x[i]);
  return total;
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, abs_pd(diff));
  }
  double total = reduce_lanes(acc);
  for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

double squared_l2_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
  }
  double total = reduce_lanes(acc);
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    total += diff * diff;
  }
  return total;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, abs_pd(diff));
  }
  const __m128d pair = _mm_max_pd(_mm256_castpd256_pd128(acc),
                                  _mm256_extractf128_pd(acc, 1));
  double best = reduce_max(pair);
  for (; i < n; ++i) best = std::fmax(best, std::fabs(a[i] - b[i]));
  return best;
}

}  // namespace ldpvote::kernels::avx2

#endif  // LDPVOTE_HAVE_AVX2_BACKEND
