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

#ifndef LDPVOTE_VOTING_HPP_
#define LDPVOTE_VOTING_HPP_

#include <string>
#include <vector>

// Positional voting core: score vectors, vote representations, the average
// score estimator and its usefulness metrics. Candidate indices are 0-based
// in memory; all user-facing output labels candidates 1-based (A_1..A_d).

namespace ldpvote {

enum class RuleKind { borda, nauru, plurality, antiplurality, kapproval };

const char* rule_kind_name(RuleKind rule);
RuleKind rule_kind_from_name(const std::string& name);

// A voting rule's non-increasing score weights, one per rank.
struct ScoreVector {
  std::vector<double> weights;  // w_1 >= w_2 >= ... >= w_d
  std::string rule_name;

  int dimension() const { return static_cast<int>(weights.size()); }
};

// Validates non-increasing weights, d >= 2, all finite.
ScoreVector make_score_vector(std::vector<double> weights,
                              std::string rule_name);

// Canonical weights for the named rule. `approval_k` is only meaningful for
// kapproval (1 <= k < d).
ScoreVector builtin_score_vector(RuleKind rule, int d, int approval_k = 0);

// A voter's preference: order[r] is the candidate index ranked r-th
// (most-preferred first). Must be a permutation of {0..d-1}.
struct Ranking {
  std::vector<int> order;

  int dimension() const { return static_cast<int>(order.size()); }
};

bool is_permutation(const Ranking& ranking);

// A vote in score form: scores[j] is the score of candidate j. Always a
// permutation of the governing rule's weights.
struct ScoredVote {
  std::vector<double> scores;
};

// scores[order[r]] = w_{r+1}; throws on length mismatch or invalid ranking.
ScoredVote to_scored_vote(const Ranking& ranking, const ScoreVector& w);

// The randomized report a voter releases. Entries are real-valued and may
// lie far outside the score range.
struct PrivateView {
  std::vector<double> values;
};

struct AggregateResult {
  std::vector<double> theta;  // per-candidate average score
  int winner = 0;             // lowest index attaining max(theta)
};

// Elementwise mean of the inputs. Ties in theta break toward the lower
// candidate index, which keeps repeated trials reproducible.
AggregateResult aggregate(const std::vector<PrivateView>& views);
AggregateResult aggregate_votes(const std::vector<ScoredVote>& votes);
AggregateResult make_aggregate_result(std::vector<double> theta);

int argmax_lowest_index(const std::vector<double>& values);

// Per-trial usefulness metrics of an estimate against the true averages.
struct MetricsReport {
  double mse = 0.0;  // |estimate - truth|_2^2
  double tve = 0.0;  // |estimate - truth|_1
  double mae = 0.0;  // max_j |estimate_j - truth_j|
  double low = 0.0;  // truth[true winner] - truth[estimated winner]
  bool aow = false;  // estimated winner == true winner
};

MetricsReport usefulness_metrics(const AggregateResult& estimate,
                                 const AggregateResult& truth);

// Maximum L1 distance between any two scored votes of the rule:
// sum_j |w_j - w_{d-j+1}|.
double sensitivity(const ScoreVector& w);

}  // namespace ldpvote

#endif  // LDPVOTE_VOTING_HPP_
