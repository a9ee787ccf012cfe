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

#include "ldpvote/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ldpvote/kernels.hpp"

namespace ldpvote::enumeration {

std::vector<Ranking> all_rankings(int d) {
  if (d < 1 || d > 10) {
    throw std::invalid_argument("ranking enumeration supports 1 <= d <= 10");
  }
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::vector<Ranking> rankings;
  do {
    rankings.push_back(Ranking{order});
  } while (std::next_permutation(order.begin(), order.end()));
  return rankings;
}

double brute_force_sensitivity(const ScoreVector& w) {
  const auto rankings = all_rankings(w.dimension());
  std::vector<ScoredVote> votes;
  votes.reserve(rankings.size());
  for (const auto& ranking : rankings) {
    votes.push_back(to_scored_vote(ranking, w));
  }
  const std::size_t d = w.weights.size();
  double best = 0.0;
  for (const auto& a : votes) {
    for (const auto& b : votes) {
      // Compensated per-pair distance: every pair realizing the maximum then
      // rounds to the same double, whatever order its terms appear in.
      kernels::CompensatedSum distance;
      for (std::size_t j = 0; j < d; ++j) {
        distance.add(std::fabs(a.scores[j] - b.scores[j]));
      }
      best = std::max(best, distance.value());
    }
  }
  return best;
}

double min_l1_to_vote_domain(const std::vector<double>& point,
                             const ScoreVector& w) {
  if (point.size() != w.weights.size()) {
    throw std::invalid_argument("point/score vector length mismatch");
  }
  std::vector<double> sorted = point;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double distance = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    distance += std::fabs(sorted[j] - w.weights[j]);
  }
  return distance;
}

std::map<std::vector<double>, double> sampling_output_distribution(
    const Ranking& ranking, double epsilon, const ScoreVector& w,
    const SamplingParams& params) {
  const int d = w.dimension();
  validate_sampling_params(params, d);
  const double flip = 1.0 / (std::sqrt(std::exp(epsilon)) + 1.0);

  std::map<std::vector<double>, double> distribution;
  for (int rank = 0; rank < d; ++rank) {
    if (params.masses[rank] <= 0.0) continue;
    const double g =
        (w.weights[rank] - params.intercept) / params.masses[rank];
    const BitLevels levels = sampling_bit_levels(g, params.intercept, epsilon);
    const int hot = ranking.order[rank];
    const std::uint32_t limit = std::uint32_t{1} << d;
    for (std::uint32_t bits = 0; bits < limit; ++bits) {
      double probability = params.masses[rank];
      std::vector<double> view(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        const bool bit = (bits >> j) & 1u;
        const bool original = (j == hot);
        probability *= (bit == original) ? (1.0 - flip) : flip;
        view[j] = bit ? levels.one : levels.zero;
      }
      distribution[view] += probability;
    }
  }
  return distribution;
}

std::vector<std::vector<double>> sampling_output_domain(
    double epsilon, const ScoreVector& w, const SamplingParams& params) {
  // The reachable views do not depend on the vote: every bit pattern has
  // positive flip probability, so only the sampled rank's rescale factor
  // matters. Use the identity ranking as a representative.
  std::vector<int> identity(static_cast<std::size_t>(w.dimension()));
  std::iota(identity.begin(), identity.end(), 0);
  const auto distribution = sampling_output_distribution(
      Ranking{identity}, epsilon, w, params);
  std::vector<std::vector<double>> domain;
  domain.reserve(distribution.size());
  for (const auto& [view, probability] : distribution) {
    domain.push_back(view);
  }
  return domain;
}

double max_ldp_ratio_sampling(double epsilon, const ScoreVector& w,
                              const SamplingParams& params) {
  const auto rankings = all_rankings(w.dimension());
  std::vector<std::map<std::vector<double>, double>> distributions;
  distributions.reserve(rankings.size());
  std::set<std::vector<double>> outputs;
  for (const auto& ranking : rankings) {
    distributions.push_back(
        sampling_output_distribution(ranking, epsilon, w, params));
    for (const auto& [view, probability] : distributions.back()) {
      outputs.insert(view);
    }
  }

  double worst = 0.0;
  for (const auto& p : distributions) {
    for (const auto& q : distributions) {
      for (const auto& output : outputs) {
        const auto pit = p.find(output);
        const double pp = pit == p.end() ? 0.0 : pit->second;
        if (pp == 0.0) continue;
        const auto qit = q.find(output);
        const double qq = qit == q.end() ? 0.0 : qit->second;
        if (qq == 0.0) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, pp / qq);
      }
    }
  }
  return worst;
}

double max_ldp_ratio_additive(double epsilon, const ScoreVector& w, int k) {
  const auto rankings = all_rankings(w.dimension());
  std::vector<std::map<std::uint32_t, double>> distributions;
  distributions.reserve(rankings.size());
  for (const auto& ranking : rankings) {
    distributions.push_back(additive_probabilities(to_scored_vote(ranking, w),
                                                   w, epsilon, k));
  }
  double worst = 0.0;
  for (const auto& p : distributions) {
    for (const auto& q : distributions) {
      for (const auto& [mask, pp] : p) {
        const double qq = q.at(mask);
        if (pp == 0.0) continue;
        if (qq == 0.0) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, pp / qq);
      }
    }
  }
  return worst;
}

double max_ldp_ratio_laplace(double epsilon, const ScoreVector& w,
                             int points_per_pair, RngHandle& rng) {
  const int d = w.dimension();
  const double delta = sensitivity(w);
  const auto rankings = all_rankings(d);
  std::vector<ScoredVote> votes;
  votes.reserve(rankings.size());
  for (const auto& ranking : rankings) {
    votes.push_back(to_scored_vote(ranking, w));
  }

  const double low = w.weights[d - 1] - 2.0 * delta / epsilon;
  const double high = w.weights[0] + 2.0 * delta / epsilon;
  std::vector<double> point(static_cast<std::size_t>(d));
  double worst = 0.0;
  for (const auto& v : votes) {
    for (const auto& v_prime : votes) {
      for (int i = 0; i < points_per_pair; ++i) {
        for (int j = 0; j < d; ++j) {
          point[j] = low + (high - low) * rng.uniform();
        }
        const double gap =
            kernels::l1_distance(point.data(), v_prime.scores.data(), point.size()) -
            kernels::l1_distance(point.data(), v.scores.data(), point.size());
        worst = std::max(worst, std::exp(epsilon * gap / delta));
      }
    }
  }
  return worst;
}

double tv_distance(const std::map<std::uint32_t, double>& p,
                   const std::map<std::uint32_t, double>& q) {
  double total = 0.0;
  for (const auto& [mask, pp] : p) {
    const auto it = q.find(mask);
    total += std::fabs(pp - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [mask, qq] : q) {
    if (p.find(mask) == p.end()) total += qq;
  }
  return 0.5 * total;
}

std::map<std::uint32_t, double> empirical_additive_distribution(
    const Ranking& ranking, double epsilon, const ScoreVector& w, int k,
    long samples, RngHandle& rng) {
  const int d = w.dimension();
  const std::vector<double> z = additive_presence_weights(w, epsilon, k);
  std::map<std::uint32_t, long> counts;
  for (long i = 0; i < samples; ++i) {
    const std::vector<int> picked = additive_select(d, k, z, rng);
    std::uint32_t mask = 0;
    for (int rank : picked) {
      mask |= std::uint32_t{1} << ranking.order[rank];
    }
    ++counts[mask];
  }
  std::map<std::uint32_t, double> frequencies;
  for (const auto& [mask, count] : counts) {
    frequencies[mask] =
        static_cast<double>(count) / static_cast<double>(samples);
  }
  return frequencies;
}

}  // namespace ldpvote::enumeration
