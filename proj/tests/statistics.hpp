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

#ifndef LDPVOTE_TESTS_STATISTICS_HPP_
#define LDPVOTE_TESTS_STATISTICS_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "ldpvote/mechanisms.hpp"
#include "ldpvote/voting.hpp"

// Test-only oracles: exact per-coordinate moments of the mechanisms,
// derived independently of the implementation paths they check.

namespace ldpvote::testing {

// Running per-coordinate mean and per-report squared-error mean.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t d)
      : mean_sum_(d, 0.0), count_(0), squared_error_sum_(0.0), l1_sum_(0.0) {}

  void add(const std::vector<double>& view,
           const std::vector<double>& reference) {
    for (std::size_t j = 0; j < mean_sum_.size(); ++j) {
      mean_sum_[j] += view[j];
      const double diff = view[j] - reference[j];
      squared_error_sum_ += diff * diff;
      l1_sum_ += std::fabs(view[j]);
    }
    ++count_;
  }

  double mean(std::size_t j) const {
    return mean_sum_[j] / static_cast<double>(count_);
  }
  // Mean of |view - reference|_2^2 per report.
  double mean_squared_error() const {
    return squared_error_sum_ / static_cast<double>(count_);
  }
  double mean_l1_norm() const {
    return l1_sum_ / static_cast<double>(count_);
  }
  long count() const { return count_; }

 private:
  std::vector<double> mean_sum_;
  long count_;
  double squared_error_sum_;
  double l1_sum_;
};

// Exact Var[view_j] for the weighted sampling mechanism, for the candidate
// holding rank `rank` in the vote, by enumerating (sampled rank, bit).
inline double sampling_coordinate_variance(const ScoreVector& w,
                                           double epsilon,
                                           const SamplingParams& params,
                                           int rank) {
  const double root = std::sqrt(std::exp(epsilon));
  const double flip = 1.0 / (root + 1.0);
  double second_moment = 0.0;
  for (int j = 0; j < w.dimension(); ++j) {
    if (params.masses[j] <= 0.0) continue;
    const double g = (w.weights[j] - params.intercept) / params.masses[j];
    const BitLevels levels = sampling_bit_levels(g, params.intercept, epsilon);
    const double p_one = (j == rank) ? 1.0 - flip : flip;
    second_moment +=
        params.masses[j] * (p_one * levels.one * levels.one +
                            (1.0 - p_one) * levels.zero * levels.zero);
  }
  const double mean = w.weights[rank];
  return second_moment - mean * mean;
}

// Exact Var[view_j] for the additive mechanism.
inline double additive_coordinate_variance(const ScoredVote& vote,
                                           const ScoreVector& w,
                                           double epsilon, int k,
                                           int candidate) {
  const AdditiveParams params = additive_params(w, epsilon, k);
  const double p =
      additive_inclusion_probability(vote, w, epsilon, k, candidate);
  return params.a_k * params.a_k * p * (1.0 - p);
}

// Exact Var[view_j] for the Laplace mechanism.
inline double laplace_coordinate_variance(const ScoreVector& w,
                                          double epsilon) {
  const double scale = sensitivity(w) / epsilon;
  return 2.0 * scale * scale;
}

}  // namespace ldpvote::testing

#endif  // LDPVOTE_TESTS_STATISTICS_HPP_
