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

#include "ldpvote/voting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ldpvote/kernels.hpp"

namespace ldpvote {

const char* rule_kind_name(RuleKind rule) {
  switch (rule) {
    case RuleKind::borda:
      return "borda";
    case RuleKind::nauru:
      return "nauru";
    case RuleKind::plurality:
      return "plurality";
    case RuleKind::antiplurality:
      return "antiplurality";
    case RuleKind::kapproval:
      return "kapproval";
  }
  throw std::invalid_argument("unknown rule kind");
}

RuleKind rule_kind_from_name(const std::string& name) {
  if (name == "borda") return RuleKind::borda;
  if (name == "nauru") return RuleKind::nauru;
  if (name == "plurality") return RuleKind::plurality;
  if (name == "antiplurality") return RuleKind::antiplurality;
  if (name == "kapproval") return RuleKind::kapproval;
  throw std::invalid_argument("unknown voting rule: " + name);
}

ScoreVector make_score_vector(std::vector<double> weights,
                              std::string rule_name) {
  if (weights.size() < 2) {
    throw std::invalid_argument("score vector needs at least 2 candidates");
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!std::isfinite(weights[j])) {
      throw std::invalid_argument("score vector entries must be finite");
    }
    if (j > 0 && weights[j] > weights[j - 1]) {
      throw std::invalid_argument("score vector must be non-increasing");
    }
  }
  return ScoreVector{std::move(weights), std::move(rule_name)};
}

ScoreVector builtin_score_vector(RuleKind rule, int d, int approval_k) {
  if (d < 2) throw std::invalid_argument("need at least 2 candidates");
  std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  switch (rule) {
    case RuleKind::borda:
      for (int j = 0; j < d; ++j) w[j] = static_cast<double>(d - 1 - j);
      return ScoreVector{std::move(w), "borda"};
    case RuleKind::nauru:
      for (int j = 0; j < d; ++j) w[j] = 1.0 / static_cast<double>(j + 1);
      return ScoreVector{std::move(w), "nauru"};
    case RuleKind::plurality:
      w[0] = 1.0;
      return ScoreVector{std::move(w), "plurality"};
    case RuleKind::antiplurality:
      for (int j = 0; j + 1 < d; ++j) w[j] = 1.0;
      return ScoreVector{std::move(w), "antiplurality"};
    case RuleKind::kapproval: {
      if (approval_k < 1 || approval_k >= d) {
        throw std::invalid_argument("kapproval needs 1 <= k < d");
      }
      for (int j = 0; j < approval_k; ++j) w[j] = 1.0;
      return ScoreVector{std::move(w),
                         "kapproval-" + std::to_string(approval_k)};
    }
  }
  throw std::invalid_argument("unknown rule kind");
}

bool is_permutation(const Ranking& ranking) {
  const int d = ranking.dimension();
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (int candidate : ranking.order) {
    if (candidate < 0 || candidate >= d || seen[candidate]) return false;
    seen[candidate] = true;
  }
  return true;
}

ScoredVote to_scored_vote(const Ranking& ranking, const ScoreVector& w) {
  const int d = w.dimension();
  if (ranking.dimension() != d) {
    throw std::invalid_argument("ranking/score vector length mismatch");
  }
  if (!is_permutation(ranking)) {
    throw std::invalid_argument("ranking is not a permutation");
  }
  ScoredVote vote;
  vote.scores.resize(static_cast<std::size_t>(d));
  for (int r = 0; r < d; ++r) vote.scores[ranking.order[r]] = w.weights[r];
  return vote;
}

int argmax_lowest_index(const std::vector<double>& values) {
  int best = 0;
  for (int j = 1; j < static_cast<int>(values.size()); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

AggregateResult make_aggregate_result(std::vector<double> theta) {
  if (theta.empty()) throw std::invalid_argument("empty aggregate");
  AggregateResult result;
  result.winner = argmax_lowest_index(theta);
  result.theta = std::move(theta);
  return result;
}

namespace {

template <typename Item, typename Project>
AggregateResult elementwise_mean(const std::vector<Item>& items,
                                 Project project) {
  if (items.empty()) throw std::invalid_argument("nothing to aggregate");
  const std::size_t d = project(items.front()).size();
  std::vector<double> theta(d, 0.0);
  for (const auto& item : items) {
    const std::vector<double>& entries = project(item);
    if (entries.size() != d) {
      throw std::invalid_argument("aggregate inputs differ in length");
    }
    kernels::add_inplace(theta.data(), entries.data(), d);
  }
  kernels::scale_inplace(theta.data(), 1.0 / static_cast<double>(items.size()),
                         d);
  return make_aggregate_result(std::move(theta));
}

}  // namespace

AggregateResult aggregate(const std::vector<PrivateView>& views) {
  return elementwise_mean(
      views, [](const PrivateView& view) -> const std::vector<double>& {
        return view.values;
      });
}

AggregateResult aggregate_votes(const std::vector<ScoredVote>& votes) {
  return elementwise_mean(
      votes, [](const ScoredVote& vote) -> const std::vector<double>& {
        return vote.scores;
      });
}

MetricsReport usefulness_metrics(const AggregateResult& estimate,
                                 const AggregateResult& truth) {
  const std::size_t d = truth.theta.size();
  if (estimate.theta.size() != d) {
    throw std::invalid_argument("metric inputs differ in dimension");
  }
  MetricsReport report;
  report.mse =
      kernels::squared_l2_distance(estimate.theta.data(), truth.theta.data(), d);
  report.tve = kernels::l1_distance(estimate.theta.data(), truth.theta.data(), d);
  report.mae = kernels::max_abs_diff(estimate.theta.data(), truth.theta.data(), d);
  report.aow = estimate.winner == truth.winner;
  // Loss of winner is measured in the true averages for both indices.
  report.low = truth.theta[truth.winner] - truth.theta[estimate.winner];
  return report;
}

double sensitivity(const ScoreVector& w) {
  const int d = w.dimension();
  // Compensated so the total matches the brute-force maximum bit for bit:
  // the extreme vote pair realizes this exact multiset of terms.
  kernels::CompensatedSum delta;
  for (int j = 0; j < d; ++j) {
    delta.add(std::fabs(w.weights[j] - w.weights[d - 1 - j]));
  }
  return delta.value();
}

}  // namespace ldpvote
