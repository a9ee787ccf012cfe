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

#ifndef LDPVOTE_ENUMERATION_HPP_
#define LDPVOTE_ENUMERATION_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "ldpvote/mechanisms.hpp"
#include "ldpvote/rng.hpp"
#include "ldpvote/voting.hpp"

// Exhaustive-enumeration oracles. Everything here is exponential in d and
// exists to cross-check the closed forms and samplers on small domains; the
// `oracle` CLI subcommand and the test suites are the only intended callers.

namespace ldpvote::enumeration {

// All d! rankings, lexicographic in candidate order.
std::vector<Ranking> all_rankings(int d);

// max_{v,v'} |v - v'|_1 over all scored-vote pairs of the rule.
double brute_force_sensitivity(const ScoreVector& w);

// Minimum L1 distance from a point to any scored vote of the rule; the
// optimal permutation pairs the sorted point with the sorted weights, so
// this is exact without touching all d! votes.
double min_l1_to_vote_domain(const std::vector<double>& point,
                             const ScoreVector& w);

// Full output distribution of the weighted sampling mechanism for one vote:
// probability of each distinct view, keyed by the view's exact coordinates.
std::map<std::vector<double>, double> sampling_output_distribution(
    const Ranking& ranking, double epsilon, const ScoreVector& w,
    const SamplingParams& params);

// Every view the weighted sampling mechanism can emit with positive
// probability (union over votes; vote-independent by construction).
std::vector<std::vector<double>> sampling_output_domain(
    double epsilon, const ScoreVector& w, const SamplingParams& params);

// Largest Pr[t|v] / Pr[t|v'] over all vote pairs and outputs, with outputs
// of probability zero under v' treated as violations (returns +inf).
double max_ldp_ratio_sampling(double epsilon, const ScoreVector& w,
                              const SamplingParams& params);
double max_ldp_ratio_additive(double epsilon, const ScoreVector& w, int k);

// Laplace density ratio sup check: evaluates the analytic ratio
// exp(eps * (|t-v'|_1 - |t-v|_1) / Delta) at `points_per_pair` random
// outputs per vote pair and returns the maximum.
double max_ldp_ratio_laplace(double epsilon, const ScoreVector& w,
                             int points_per_pair, RngHandle& rng);

// Total variation distance between two subset distributions keyed by
// bitmask (missing keys count as zero).
double tv_distance(const std::map<std::uint32_t, double>& p,
                   const std::map<std::uint32_t, double>& q);

// Empirical distribution of additive_select mapped through a ranking,
// keyed by candidate bitmask, from `samples` draws.
std::map<std::uint32_t, double> empirical_additive_distribution(
    const Ranking& ranking, double epsilon, const ScoreVector& w, int k,
    long samples, RngHandle& rng);

}  // namespace ldpvote::enumeration

#endif  // LDPVOTE_ENUMERATION_HPP_
