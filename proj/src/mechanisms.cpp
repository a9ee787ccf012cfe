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

#include "ldpvote/mechanisms.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ldpvote {

const char* mechanism_kind_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::laplace:
      return "laplace";
    case MechanismKind::weighted_sampling:
      return "weighted_sampling";
    case MechanismKind::additive:
      return "additive";
  }
  throw std::invalid_argument("unknown mechanism kind");
}

MechanismKind mechanism_kind_from_name(const std::string& name) {
  if (name == "laplace") return MechanismKind::laplace;
  if (name == "weighted_sampling") return MechanismKind::weighted_sampling;
  if (name == "additive") return MechanismKind::additive;
  throw std::invalid_argument("unknown mechanism: " + name);
}

void validate_sampling_params(const SamplingParams& params, int d) {
  if (static_cast<int>(params.masses.size()) != d) {
    throw std::invalid_argument("sampling masses length mismatch");
  }
  double total = 0.0;
  for (double mass : params.masses) {
    if (!(mass >= 0.0)) {
      throw std::invalid_argument("sampling masses must be non-negative");
    }
    total += mass;
  }
  if (std::fabs(total - 1.0) > kMassSumTolerance) {
    throw std::invalid_argument("sampling masses must sum to 1");
  }
  if (!std::isfinite(params.intercept)) {
    throw std::invalid_argument("sampling intercept must be finite");
  }
}

namespace {

// Intercept index ceil(d/2), as a 0-based offset.
int median_rank_index(int d) { return (d + 1) / 2 - 1; }

}  // namespace

double omega(const ScoreVector& w) {
  const int d = w.dimension();
  const double c = w.weights[median_rank_index(d)];
  double total = 0.0;
  for (double weight : w.weights) total += std::fabs(weight - c);
  return total;
}

SamplingParams optimal_sampling_params(const ScoreVector& w) {
  const int d = w.dimension();
  const double c = w.weights[median_rank_index(d)];
  const double normalizer = omega(w);
  if (normalizer <= 0.0) {
    throw std::domain_error(
        "constant score vector: sampling masses are undefined");
  }
  SamplingParams params;
  params.intercept = c;
  params.masses.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    params.masses[j] = std::fabs(w.weights[j] - c) / normalizer;
  }
  return params;
}

BitLevels sampling_bit_levels(double g, double intercept, double epsilon) {
  const double root = std::sqrt(std::exp(epsilon));
  return BitLevels{root / (root - 1.0) * g + intercept,
                   -1.0 / (root - 1.0) * g + intercept};
}

AdditiveParams additive_params(const ScoreVector& w, double epsilon, int k) {
  const int d = w.dimension();
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (k < 1 || k >= d) throw std::invalid_argument("need 1 <= k < d");

  AdditiveParams params;
  params.subset_size = k;
  double w_sum = 0.0;
  for (double weight : w.weights) w_sum += weight;
  for (int j = 0; j < k; ++j) params.w_max_k += w.weights[j];
  for (int j = d - k; j < d; ++j) params.w_min_k += w.weights[j];
  const double spread = params.w_max_k - params.w_min_k;
  if (spread <= 0.0) {
    throw std::domain_error("degenerate rule: all k-subset scores are equal");
  }

  const double e_eps = std::exp(epsilon);
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  params.phi = binomial_coefficient(d, k) *
               (kk / dd * (e_eps - 1.0) * w_sum - e_eps * params.w_min_k +
                params.w_max_k) /
               spread;
  const double front = (dd - 1.0) / ((dd - kk) * (e_eps - 1.0));
  params.a_k = front * (w_sum * (e_eps - 1.0) -
                        dd / kk * e_eps * params.w_min_k +
                        dd / kk * params.w_max_k);
  params.b_k = front * ((kk - 1.0) * (e_eps - 1.0) / (dd - 1.0) * w_sum -
                        e_eps * params.w_min_k + params.w_max_k);
  return params;
}

std::map<std::uint32_t, double> additive_probabilities(const ScoredVote& vote,
                                                       const ScoreVector& w,
                                                       double epsilon, int k) {
  const int d = w.dimension();
  if (static_cast<int>(vote.scores.size()) != d) {
    throw std::invalid_argument("vote/score vector length mismatch");
  }
  if (d > 12) {
    throw std::invalid_argument(
        "subset enumeration is for cross-checks only (d <= 12)");
  }
  const AdditiveParams params = additive_params(w, epsilon, k);
  const double spread = params.w_max_k - params.w_min_k;
  const double e_eps = std::exp(epsilon);

  std::map<std::uint32_t, double> probabilities;
  const std::uint32_t limit = std::uint32_t{1} << d;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) != k) continue;
    double subset_score = 0.0;
    for (int j = 0; j < d; ++j) {
      if (mask & (std::uint32_t{1} << j)) subset_score += vote.scores[j];
    }
    probabilities[mask] =
        (subset_score - params.w_min_k) / spread * (e_eps - 1.0) / params.phi +
        1.0 / params.phi;
  }
  return probabilities;
}

double additive_inclusion_probability(const ScoredVote& vote,
                                      const ScoreVector& w, double epsilon,
                                      int k, int candidate) {
  const int d = w.dimension();
  if (candidate < 0 || candidate >= d) {
    throw std::invalid_argument("candidate index out of range");
  }
  const AdditiveParams params = additive_params(w, epsilon, k);
  const double e_eps = std::exp(epsilon);
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  double w_sum = 0.0;
  for (double weight : w.weights) w_sum += weight;

  const double numerator =
      (dd - kk) * (e_eps - 1.0) / (dd - 1.0) * vote.scores[candidate] +
      (kk - 1.0) * (e_eps - 1.0) / (dd - 1.0) * w_sum -
      e_eps * params.w_min_k + params.w_max_k;
  const double denominator = kk / dd * (e_eps - 1.0) * w_sum -
                             e_eps * params.w_min_k + params.w_max_k;
  return kk / dd * numerator / denominator;
}

std::vector<double> additive_presence_weights(const ScoreVector& w,
                                              double epsilon, int k) {
  const AdditiveParams params = additive_params(w, epsilon, k);
  const double spread = params.w_max_k - params.w_min_k;
  const double e_eps = std::exp(epsilon);
  const int d = w.dimension();
  std::vector<double> z(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    z[j] = (w.weights[j] - params.w_min_k / static_cast<double>(k)) / spread *
               (e_eps - 1.0) +
           1.0 / static_cast<double>(k);
  }
  return z;
}

double binomial_coefficient(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  if (r > n - r) r = n - r;
  double result = 1.0;
  for (int i = 1; i <= r; ++i) {
    result *= static_cast<double>(n - r + i);
    result /= static_cast<double>(i);
  }
  return result;
}

}  // namespace ldpvote
