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

#ifndef LDPVOTE_RNG_HPP_
#define LDPVOTE_RNG_HPP_

#include <concepts>
#include <cstdint>

namespace ldpvote {

// Anything that yields doubles in [0, 1). Mechanisms are templated on this so
// tests can substitute degenerate sources (e.g. a constant stream).
template <typename T>
concept UniformRng = requires(T t) {
  { t.uniform() } -> std::convertible_to<double>;
};

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Deterministic, seedable, splittable generator: xoshiro256++ seeded through
// splitmix64. Identical seed gives an identical stream on every platform.
//
// Splitting: `derive(i)` produces an independent child stream keyed on
// (seed, i). Handles are cheap value types; one handle per logical entity
// (voter, trial) keeps results independent of evaluation order.
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = detail::mix64(x++);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in the open interval (-1/2, 1/2); never hits either endpoint,
  // which keeps inverse-CDF transforms finite.
  double centered_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53 - 0.5;
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Child stream keyed on (this handle's seed, stream). Derivation depends
  // only on the seed, not on how much of this stream was consumed.
  RngHandle derive(std::uint64_t stream) const {
    return RngHandle(detail::mix64(seed_ ^ detail::mix64(stream)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4];
};

static_assert(UniformRng<RngHandle>);

}  // namespace ldpvote

#endif  // LDPVOTE_RNG_HPP_
