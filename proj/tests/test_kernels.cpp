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

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "ldpvote/rng.hpp"

namespace ldpvote {
namespace {

std::vector<double> random_values(std::size_t n, RngHandle& rng) {
  std::vector<double> values(n);
  for (auto& v : values) v = rng.uniform() * 20.0 - 10.0;
  return values;
}

// The dispatched backend must be bit-identical to the scalar reference,
// whatever the CPU selected. Sizes cover empty, sub-vector, and tails.
TEST_CASE("dispatched kernels match the scalar reference exactly") {
  RngHandle rng(101);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 12u, 31u, 64u, 97u,
                        1000u}) {
    CAPTURE(n);
    const std::vector<double> a = random_values(n, rng);
    const std::vector<double> b = random_values(n, rng);

    CHECK(kernels::sum(a.data(), n) == kernels::scalar::sum(a.data(), n));
    CHECK(kernels::l1_norm(a.data(), n) ==
          kernels::scalar::l1_norm(a.data(), n));
    CHECK(kernels::l1_distance(a.data(), b.data(), n) ==
          kernels::scalar::l1_distance(a.data(), b.data(), n));
    CHECK(kernels::squared_l2_distance(a.data(), b.data(), n) ==
          kernels::scalar::squared_l2_distance(a.data(), b.data(), n));
    CHECK(kernels::max_abs_diff(a.data(), b.data(), n) ==
          kernels::scalar::max_abs_diff(a.data(), b.data(), n));

    std::vector<double> acc_dispatched = a;
    std::vector<double> acc_scalar = a;
    kernels::add_inplace(acc_dispatched.data(), b.data(), n);
    kernels::scalar::add_inplace(acc_scalar.data(), b.data(), n);
    CHECK(acc_dispatched == acc_scalar);

    std::vector<double> scaled_dispatched = a;
    std::vector<double> scaled_scalar = a;
    kernels::scale_inplace(scaled_dispatched.data(), 0.37, n);
    kernels::scalar::scale_inplace(scaled_scalar.data(), 0.37, n);
    CHECK(scaled_dispatched == scaled_scalar);
  }
}

TEST_CASE("forcing the scalar backend changes only the dispatch") {
  RngHandle rng(102);
  const std::vector<double> a = random_values(37, rng);
  const double with_simd = kernels::sum(a.data(), a.size());
  kernels::set_simd_enabled(false);
  CHECK(std::string(kernels::active_backend()) == "scalar");
  const double without_simd = kernels::sum(a.data(), a.size());
  kernels::set_simd_enabled(true);
  CHECK(with_simd == without_simd);
}

TEST_CASE("reductions agree with exact arithmetic on integer data") {
  std::vector<double> values(100);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(i) - 50.0;
  }
  // sum_{i=0}^{99} (i - 50) = 4950 - 5000; sum |i - 50| = 1275 + 1225.
  CHECK(kernels::sum(values.data(), values.size()) == -50.0);
  CHECK(kernels::l1_norm(values.data(), values.size()) == 2500.0);
  std::vector<double> zeros(values.size(), 0.0);
  CHECK(kernels::l1_distance(values.data(), zeros.data(), values.size()) ==
        2500.0);
  CHECK(kernels::max_abs_diff(values.data(), zeros.data(), values.size()) ==
        50.0);
}

TEST_CASE("empty inputs reduce to zero") {
  CHECK(kernels::sum(nullptr, 0) == 0.0);
  CHECK(kernels::l1_norm(nullptr, 0) == 0.0);
  CHECK(kernels::max_abs_diff(nullptr, nullptr, 0) == 0.0);
}

}  // namespace
}  // namespace ldpvote
