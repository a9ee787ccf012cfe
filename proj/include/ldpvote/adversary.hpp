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

#ifndef LDPVOTE_ADVERSARY_HPP_
#define LDPVOTE_ADVERSARY_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldpvote/mechanisms.hpp"
#include "ldpvote/rng.hpp"
#include "ldpvote/voting.hpp"

// Generators for the two attacks privacy preservation invites:
//
//   data amplification — fraudulent votes submitted through the randomizer,
//   whose noise inflates their magnitude;
//   view disguise — crafted reports injected directly, indistinguishable
//   from legitimate randomizer output.

namespace ldpvote {

enum class AttackKind { data_amplification, view_disguise };

const char* attack_kind_name(AttackKind kind);
AttackKind attack_kind_from_name(const std::string& name);

struct AttackConfig {
  AttackKind kind = AttackKind::data_amplification;
  int count = 0;
  // Winner / runner-up pair (j1, j2) the disguiser targets; when unset the
  // harness fills it from the trial's honest result.
  std::optional<std::pair<int, int>> target_pair;
};

// `count` independent uniform-random rankings.
std::vector<Ranking> random_fraud_votes(int count, int d, RngHandle& rng);

// `count` copies of the view maximizing view[j2] - view[j1] over the
// mechanism's output domain. For weighted sampling and additive the crafted
// view is a genuinely reachable output, so domain filtering cannot flag it.
// For Laplace the target coordinates sit at the edge of the 95% noise band
// (q = ln 20): view[j2] = q*s + w_1, view[j1] = -q*s + w_d with
// s = Delta/epsilon (or Delta when config.laplace_raw_delta_band is set);
// remaining coordinates take the neutral score w_ceil(d/2).
std::vector<PrivateView> disguised_views(const MechanismConfig& config,
                                         const ScoreVector& w, int j1, int j2,
                                         int count);

// Honest views plus attack views; aggregation then runs over all of them.
std::vector<PrivateView> apply_attack(std::vector<PrivateView> honest,
                                      const std::vector<PrivateView>& attack);

}  // namespace ldpvote

#endif  // LDPVOTE_ADVERSARY_HPP_
