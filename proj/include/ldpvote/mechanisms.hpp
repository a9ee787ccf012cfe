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

#ifndef LDPVOTE_MECHANISMS_HPP_
#define LDPVOTE_MECHANISMS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ldpvote/rng.hpp"
#include "ldpvote/voting.hpp"

// The three epsilon-LDP randomizers. Each consumes one vote and emits an
// unbiased PrivateView of its score form:
//
//   laplace:            v_j + Lap(Delta/eps) per coordinate.
//   weighted sampling:  sample one rank by mass m, one-hot encode the
//                       candidate at that rank, flip bits with probability
//                       1/(sqrt(e^eps)+1), rescale to an unbiased estimate.
//   additive:           release a k-subset of candidates with probability
//                       linear in its total score, then map membership to
//                       scores via a_k, b_k.
//
// All mechanisms are pure given the RNG; use one derived handle per voter.

namespace ldpvote {

enum class MechanismKind { laplace, weighted_sampling, additive };

const char* mechanism_kind_name(MechanismKind kind);
MechanismKind mechanism_kind_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Weighted sampling

// Per-rank sampling masses m (non-negative, summing to 1) and the intercept
// c subtracted from weights before rescaling.
struct SamplingParams {
  std::vector<double> masses;
  double intercept = 0.0;
};

inline constexpr double kMassSumTolerance = 1e-12;

void validate_sampling_params(const SamplingParams& params, int d);

// Median-centered score deviation: sum_j |w_j - w_ceil(d/2)|.
double omega(const ScoreVector& w);

// Error-minimizing parameters: c = w_ceil(d/2), m_j = |w_j - c| / omega(w).
// Throws std::domain_error for constant score vectors (all masses 0/0).
SamplingParams optimal_sampling_params(const ScoreVector& w);

// The two values a released coordinate can take, given the sampled rank's
// rescale factor g = (w_rank - c)/m_rank: `one` when the randomized bit is
// set, `zero` otherwise.
struct BitLevels {
  double one = 0.0;
  double zero = 0.0;
};
BitLevels sampling_bit_levels(double g, double intercept, double epsilon);

template <typename Rng>
  requires UniformRng<Rng>
PrivateView weighted_sampling_mechanism(const Ranking& ranking, double epsilon,
                                        const ScoreVector& w,
                                        const SamplingParams& params,
                                        Rng& rng) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const int d = w.dimension();
  if (ranking.dimension() != d) {
    throw std::invalid_argument("ranking/score vector length mismatch");
  }
  validate_sampling_params(params, d);

  // Select one rank; zero-mass ranks are never drawn, so their undefined
  // rescale factor is never evaluated.
  double r = rng.uniform();
  int rank = -1;
  for (int j = 0; j < d; ++j) {
    if (params.masses[j] <= 0.0) continue;
    rank = j;
    r -= params.masses[j];
    if (r < 0.0) break;
  }
  if (rank < 0) throw std::invalid_argument("sampling masses are all zero");

  const double flip_threshold = 1.0 / (std::sqrt(std::exp(epsilon)) + 1.0);
  const double g =
      (w.weights[rank] - params.intercept) / params.masses[rank];
  const BitLevels levels = sampling_bit_levels(g, params.intercept, epsilon);

  const int hot = ranking.order[rank];
  PrivateView view;
  view.values.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    bool bit = (j == hot);
    if (rng.uniform() < flip_threshold) bit = !bit;
    view.values[j] = bit ? levels.one : levels.zero;
  }
  return view;
}

// ---------------------------------------------------------------------------
// Laplace

// Inverse CDF of the centered Laplace distribution with the given scale,
// evaluated at u in (-1/2, 1/2). Exactly zero at u = 0.
inline double laplace_noise(double scale, double centered_u) {
  const double sign = (centered_u > 0.0) - (centered_u < 0.0);
  return -scale * sign * std::log1p(-2.0 * std::fabs(centered_u));
}

template <typename Rng>
  requires UniformRng<Rng>
PrivateView laplace_mechanism(const ScoredVote& vote, double epsilon,
                              const ScoreVector& w, Rng& rng) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const std::size_t d = vote.scores.size();
  if (static_cast<int>(d) != w.dimension()) {
    throw std::invalid_argument("vote/score vector length mismatch");
  }
  const double scale = sensitivity(w) / epsilon;
  PrivateView view;
  view.values.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    view.values[j] = vote.scores[j] + laplace_noise(scale, rng.uniform() - 0.5);
  }
  return view;
}

// ---------------------------------------------------------------------------
// Additive

// Estimator coefficients and normalizer for releasing k-subsets with
// probability linear in their total score.
struct AdditiveParams {
  int subset_size = 1;  // k
  double a_k = 0.0;
  double b_k = 0.0;
  double w_max_k = 0.0;  // largest k-subset total weight
  double w_min_k = 0.0;  // smallest k-subset total weight
  double phi = 0.0;      // normalizer
};

// Throws std::invalid_argument for k outside [1, d) and std::domain_error
// when the rule is degenerate for this k (w_max_k == w_min_k).
AdditiveParams additive_params(const ScoreVector& w, double epsilon, int k);

// Subset release probability: ((sum_{j in S} v_j - w_min_k) / (w_max_k -
// w_min_k)) * (e^eps - 1)/phi + 1/phi. Keyed by candidate bitmask (bit j =>
// candidate j in S). Enumeration is meant for cross-checks; d is capped at 12.
std::map<std::uint32_t, double> additive_probabilities(const ScoredVote& vote,
                                                       const ScoreVector& w,
                                                       double epsilon, int k);

// Closed-form marginal Pr[candidate in released subset] for a vote.
double additive_inclusion_probability(const ScoredVote& vote,
                                      const ScoreVector& w, double epsilon,
                                      int k, int candidate);

// Per-rank presence weights z. The subset over rank positions is released
// with probability proportional to sum of its entries' z values.
std::vector<double> additive_presence_weights(const ScoreVector& w,
                                              double epsilon, int k);

double binomial_coefficient(int n, int r);

// Samples a k-subset T of rank positions {0..d-1} with
// Pr[T] proportional to sum_{j in T} z_j, in O(d*k).
//
// Works by repeatedly drawing the smallest selected position j* with
//   Pr[min(T) = j] ∝ C(d-j-1, k-1) * (z_j + (k-1)/(d-j-1) * sum_{j' > j} z_j')
// and recursing on the suffix with k-1 picks and weights
// z'_j = z_j + z_{j*}/(k-1), which spreads the fixed pick's weight over the
// remaining choices so the proportional-to-sum form is preserved.
//
// Individual z_j may be negative as long as every k-subset sum is
// non-negative; all selection probabilities then stay non-negative.
template <typename Rng>
  requires UniformRng<Rng>
std::vector<int> additive_select(int d, int k, std::span<const double> z,
                                 Rng& rng) {
  if (k < 1 || k > d) throw std::invalid_argument("need 1 <= k <= d");
  if (static_cast<int>(z.size()) != d) {
    throw std::invalid_argument("presence weight length mismatch");
  }

  std::vector<double> weights(z.begin(), z.end());
  std::vector<int> selected;
  selected.reserve(static_cast<std::size_t>(k));

  int offset = 0;  // absolute index of weights[0]
  int remaining_d = d;
  int remaining_k = k;
  std::vector<double> probs;
  while (remaining_k > 0) {
    if (remaining_k == remaining_d) {
      for (int j = 0; j < remaining_d; ++j) selected.push_back(offset + j);
      break;
    }

    const int last_start = remaining_d - remaining_k;  // last viable minimum
    probs.assign(static_cast<std::size_t>(last_start) + 1, 0.0);
    double suffix = 0.0;
    for (int j = remaining_d - 1; j > last_start; --j) suffix += weights[j];
    double total = 0.0;
    for (int j = last_start; j >= 0; --j) {
      const int tail = remaining_d - 1 - j;  // positions after j
      double p = weights[j];
      if (remaining_k > 1) {
        p += suffix * static_cast<double>(remaining_k - 1) /
             static_cast<double>(tail);
      }
      p *= binomial_coefficient(tail, remaining_k - 1);
      if (p < 0.0) p = 0.0;  // round-off guard
      probs[j] = p;
      total += p;
      suffix += weights[j];
    }
    if (!(total > 0.0)) {
      throw std::invalid_argument("presence weights admit no valid subset");
    }

    double r = rng.uniform() * total;
    int pick = -1;
    for (int j = 0; j <= last_start; ++j) {
      if (probs[j] <= 0.0) continue;
      pick = j;
      r -= probs[j];
      if (r < 0.0) break;
    }

    selected.push_back(offset + pick);
    --remaining_k;
    if (remaining_k == 0) break;

    const double spread = weights[pick] / static_cast<double>(remaining_k);
    const int suffix_len = remaining_d - 1 - pick;
    for (int j = 0; j < suffix_len; ++j) {
      weights[j] = weights[pick + 1 + j] + spread;
    }
    weights.resize(static_cast<std::size_t>(suffix_len));
    offset += pick + 1;
    remaining_d = suffix_len;
  }
  return selected;
}

// Variant with precomputed params and presence weights, for tight loops.
template <typename Rng>
  requires UniformRng<Rng>
PrivateView additive_mechanism(const Ranking& ranking,
                               const AdditiveParams& params,
                               std::span<const double> z, Rng& rng) {
  const int d = ranking.dimension();
  const std::vector<int> picked_ranks =
      additive_select(d, params.subset_size, z, rng);

  PrivateView view;
  view.values.assign(static_cast<std::size_t>(d), -params.b_k);
  for (int rank : picked_ranks) {
    view.values[ranking.order[rank]] = params.a_k - params.b_k;
  }
  return view;
}

template <typename Rng>
  requires UniformRng<Rng>
PrivateView additive_mechanism(const Ranking& ranking, double epsilon,
                               const ScoreVector& w, int k, Rng& rng) {
  const AdditiveParams params = additive_params(w, epsilon, k);
  if (ranking.dimension() != w.dimension()) {
    throw std::invalid_argument("ranking/score vector length mismatch");
  }
  const std::vector<double> z = additive_presence_weights(w, epsilon, k);
  return additive_mechanism(ranking, params, z, rng);
}

// ---------------------------------------------------------------------------
// Dispatch

// One randomizer choice: epsilon plus the mechanism-specific knobs.
struct MechanismConfig {
  MechanismKind kind = MechanismKind::laplace;
  double epsilon = 1.0;
  int additive_k = 1;
  // Masses/intercept for weighted sampling; defaults to the optimal ones.
  std::optional<SamplingParams> sampling;
  // Adversary band switch: size the view-disguise target band as Delta
  // instead of Delta/epsilon.
  bool laplace_raw_delta_band = false;
};

template <typename Rng>
  requires UniformRng<Rng>
PrivateView randomize(const Ranking& ranking, const ScoreVector& w,
                      const MechanismConfig& config, Rng& rng) {
  switch (config.kind) {
    case MechanismKind::laplace:
      return laplace_mechanism(to_scored_vote(ranking, w), config.epsilon, w,
                               rng);
    case MechanismKind::weighted_sampling: {
      if (config.sampling.has_value()) {
        return weighted_sampling_mechanism(ranking, config.epsilon, w,
                                           *config.sampling, rng);
      }
      return weighted_sampling_mechanism(ranking, config.epsilon, w,
                                         optimal_sampling_params(w), rng);
    }
    case MechanismKind::additive:
      return additive_mechanism(ranking, config.epsilon, w, config.additive_k,
                                rng);
  }
  throw std::invalid_argument("unknown mechanism kind");
}

}  // namespace ldpvote

#endif  // LDPVOTE_MECHANISMS_HPP_
