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

#include "ldpvote/adversary.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ldpvote {

const char* attack_kind_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::data_amplification:
      return "data_amplification";
    case AttackKind::view_disguise:
      return "view_disguise";
  }
  throw std::invalid_argument("unknown attack kind");
}

AttackKind attack_kind_from_name(const std::string& name) {
  if (name == "data_amplification") return AttackKind::data_amplification;
  if (name == "view_disguise") return AttackKind::view_disguise;
  throw std::invalid_argument("unknown attack kind: " + name);
}

std::vector<Ranking> random_fraud_votes(int count, int d, RngHandle& rng) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  std::vector<Ranking> votes;
  votes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Ranking ranking;
    ranking.order.resize(static_cast<std::size_t>(d));
    std::iota(ranking.order.begin(), ranking.order.end(), 0);
    for (int j = d - 1; j > 0; --j) {
      const int pick = static_cast<int>(
          rng.next_below(static_cast<std::uint64_t>(j) + 1));
      std::swap(ranking.order[j], ranking.order[pick]);
    }
    votes.push_back(std::move(ranking));
  }
  return votes;
}

namespace {

PrivateView disguised_laplace_view(const MechanismConfig& config,
                                   const ScoreVector& w, int j1, int j2) {
  const int d = w.dimension();
  const double delta = sensitivity(w);
  const double scale =
      config.laplace_raw_delta_band ? delta : delta / config.epsilon;
  const double q = std::log(1.0 / (1.0 - 0.95));
  PrivateView view;
  view.values.assign(static_cast<std::size_t>(d),
                     w.weights[(d + 1) / 2 - 1]);
  view.values[j2] = q * scale + w.weights[0];
  view.values[j1] = -q * scale + w.weights[d - 1];
  return view;
}

// A single view fixes one sampled rank, so every coordinate shares the same
// rescale factor g; the widest reachable view[j2] - view[j1] gap is
// |g| (sqrt(e^eps)+1)/(sqrt(e^eps)-1) for the rank maximizing |g|. Bits are
// then set so j2 takes the high level and every other coordinate the low
// one.
PrivateView disguised_sampling_view(const MechanismConfig& config,
                                    const ScoreVector& w, int j1, int j2) {
  const SamplingParams params =
      config.sampling.has_value() ? *config.sampling
                                  : optimal_sampling_params(w);
  const int d = w.dimension();
  validate_sampling_params(params, d);

  int best_rank = -1;
  double best_magnitude = -1.0;
  for (int j = 0; j < d; ++j) {
    if (params.masses[j] <= 0.0) continue;
    const double g = (w.weights[j] - params.intercept) / params.masses[j];
    if (std::fabs(g) > best_magnitude) {
      best_magnitude = std::fabs(g);
      best_rank = j;
    }
  }
  if (best_rank < 0) {
    throw std::invalid_argument("sampling masses are all zero");
  }

  const double g =
      (w.weights[best_rank] - params.intercept) / params.masses[best_rank];
  const BitLevels levels =
      sampling_bit_levels(g, params.intercept, config.epsilon);
  const double high = std::max(levels.one, levels.zero);
  const double low = std::min(levels.one, levels.zero);
  PrivateView view;
  view.values.assign(static_cast<std::size_t>(d), low);
  view.values[j2] = high;
  (void)j1;  // already at the domain minimum
  return view;
}

PrivateView disguised_additive_view(const MechanismConfig& config,
                                    const ScoreVector& w, int j1, int j2) {
  const AdditiveParams params =
      additive_params(w, config.epsilon, config.additive_k);
  const int d = w.dimension();
  PrivateView view;
  view.values.assign(static_cast<std::size_t>(d), -params.b_k);
  view.values[j2] = params.a_k - params.b_k;
  int placed = 1;
  for (int j = 0; j < d && placed < params.subset_size; ++j) {
    if (j == j1 || j == j2) continue;
    view.values[j] = params.a_k - params.b_k;
    ++placed;
  }
  return view;
}

}  // namespace

std::vector<PrivateView> disguised_views(const MechanismConfig& config,
                                         const ScoreVector& w, int j1, int j2,
                                         int count) {
  const int d = w.dimension();
  if (j1 < 0 || j1 >= d || j2 < 0 || j2 >= d || j1 == j2) {
    throw std::invalid_argument("need distinct targets j1 != j2 in range");
  }
  if (count < 0) throw std::invalid_argument("count must be >= 0");

  PrivateView crafted;
  switch (config.kind) {
    case MechanismKind::laplace:
      crafted = disguised_laplace_view(config, w, j1, j2);
      break;
    case MechanismKind::weighted_sampling:
      crafted = disguised_sampling_view(config, w, j1, j2);
      break;
    case MechanismKind::additive:
      crafted = disguised_additive_view(config, w, j1, j2);
      break;
    default:
      throw std::invalid_argument("unknown mechanism kind");
  }
  return std::vector<PrivateView>(static_cast<std::size_t>(count), crafted);
}

std::vector<PrivateView> apply_attack(std::vector<PrivateView> honest,
                                      const std::vector<PrivateView>& attack) {
  const std::size_t d = honest.empty()
                            ? (attack.empty() ? 0 : attack.front().values.size())
                            : honest.front().values.size();
  honest.reserve(honest.size() + attack.size());
  for (const auto& view : attack) {
    if (view.values.size() != d) {
      throw std::invalid_argument("attack view dimension mismatch");
    }
    honest.push_back(view);
  }
  return honest;
}

}  // namespace ldpvote
