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

#ifndef LDPVOTE_KERNELS_HPP_
#define LDPVOTE_KERNELS_HPP_

#include <cmath>
#include <cstddef>

// Dense double-vector kernels behind the aggregation and error-metric loops.
// Two backends: a scalar reference and an AVX2 variant selected at runtime.
//
// Both backends produce bit-identical results. Elementwise kernels reorder
// nothing; reductions accumulate in four interleaved partial sums (lane l
// takes indices i with i % 4 == l over the first 4*(n/4) elements), combine
// as (l0+l2)+(l1+l3), then fold the tail sequentially. The AVX2 code realizes
// the same order with 4-wide vectors, so scalar-vs-SIMD equivalence tests can
// require exact equality.

namespace ldpvote::kernels {

// acc[i] += x[i]
void add_inplace(double* acc, const double* x, std::size_t n);
// x[i] *= s
void scale_inplace(double* x, double s, std::size_t n);

double sum(const double* x, std::size_t n);
double l1_norm(const double* x, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
double squared_l2_distance(const double* a, const double* b, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);

// Reference implementations; always available, used by equivalence tests.
namespace scalar {
void add_inplace(double* acc, const double* x, std::size_t n);
void scale_inplace(double* x, double s, std::size_t n);
double sum(const double* x, std::size_t n);
double l1_norm(const double* x, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
double squared_l2_distance(const double* a, const double* b, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define LDPVOTE_HAVE_AVX2_BACKEND 1
namespace avx2 {
void add_inplace(double* acc, const double* x, std::size_t n);
void scale_inplace(double* x, double s, std::size_t n);
double sum(const double* x, std::size_t n);
double l1_norm(const double* x, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
double squared_l2_distance(const double* a, const double* b, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#else
#define LDPVOTE_HAVE_AVX2_BACKEND 0
#endif

// Neumaier-compensated accumulator. For the short non-negative sums used by
// sensitivity computations the result is the correctly rounded total, which
// makes it independent of accumulation order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Name of the backend the dispatched entry points currently use
// ("avx2" or "scalar").
const char* active_backend();

// Force the scalar backend (or re-enable auto-detection). For tests.
void set_simd_enabled(bool enabled);
bool simd_enabled();

}  // namespace ldpvote::kernels

#endif  // LDPVOTE_KERNELS_HPP_
