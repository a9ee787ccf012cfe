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

#include "ldpvote/rng.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

namespace ldpvote {
namespace {

TEST_CASE("identical seeds replay the identical stream") {
  RngHandle a(42);
  RngHandle b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different seeds diverge") {
  RngHandle a(1);
  RngHandle b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("derive depends only on the seed, not on consumption") {
  RngHandle fresh(7);
  RngHandle consumed(7);
  for (int i = 0; i < 17; ++i) consumed.next_u64();
  RngHandle child_a = fresh.derive(3);
  RngHandle child_b = consumed.derive(3);
  CHECK(child_a.next_u64() == child_b.next_u64());
  // Distinct stream ids give distinct children.
  CHECK(fresh.derive(4).next_u64() != fresh.derive(5).next_u64());
}

TEST_CASE("uniform stays in [0,1) and is roughly centered") {
  RngHandle rng(11);
  double total = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    total += u;
  }
  // Mean of n uniforms: 0.5 +- 3/sqrt(12 n).
  CHECK(std::fabs(total / n - 0.5) < 3.0 / std::sqrt(12.0 * n));
}

TEST_CASE("centered_uniform avoids both endpoints") {
  RngHandle rng(12);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.centered_uniform();
    REQUIRE(u > -0.5);
    REQUIRE(u < 0.5);
  }
}

TEST_CASE("next_below is within range and unbiased at coarse resolution") {
  RngHandle rng(13);
  std::vector<long> counts(6, 0);
  const long n = 120000;
  for (long i = 0; i < n; ++i) {
    const auto v = rng.next_below(6);
    REQUIRE(v < 6);
    ++counts[v];
  }
  const double expected = static_cast<double>(n) / 6.0;
  const double band = 3.0 * std::sqrt(expected * (1.0 - 1.0 / 6.0));
  for (long count : counts) {
    CHECK(std::fabs(static_cast<double>(count) - expected) < band);
  }
}

}  // namespace
}  // namespace ldpvote
