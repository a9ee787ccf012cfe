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

#ifndef LDPVOTE_HARNESS_HPP_
#define LDPVOTE_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ldpvote/adversary.hpp"
#include "ldpvote/mechanisms.hpp"
#include "ldpvote/rng.hpp"
#include "ldpvote/voting.hpp"

// Synthetic-population experiment harness. A run sweeps the epsilon list,
// repeats each cell, and reports metric means. All randomness flows from the
// master seed through derived per-trial and per-voter streams, so results
// are byte-identical across runs and independent of scheduling.

namespace ldpvote {

enum class OutputFormat { csv, jsonl };

// The epsilon sweep used throughout: 0.01 .. 3.0.
std::vector<double> default_epsilon_grid();

struct ExperimentConfig {
  RuleKind rule = RuleKind::borda;
  int approval_k = 2;  // only for kapproval
  int d = 8;
  long n = 10000;
  std::vector<double> epsilons = default_epsilon_grid();
  MechanismKind mechanism = MechanismKind::laplace;
  int additive_k = 1;
  std::optional<AttackConfig> attack;
  bool laplace_raw_delta_band = false;
  int repeats = 400;
  std::uint64_t master_seed = 0;
  std::string output_path;  // empty: caller handles output
  OutputFormat format = OutputFormat::csv;
  int threads = 0;  // 0: hardware concurrency
};

void validate_config(const ExperimentConfig& config);
ScoreVector score_vector_for(const ExperimentConfig& config);

// Averaged metrics for one (epsilon, attack) cell.
struct TrialReport {
  std::string rule;
  int d = 0;
  long n = 0;
  MechanismKind mechanism = MechanismKind::laplace;
  double epsilon = 0.0;
  std::string attack_kind = "none";
  int attack_count = 0;
  int repeats = 0;
  std::uint64_t seed = 0;
  double tve = 0.0;
  double mae = 0.0;
  double mse = 0.0;
  double low = 0.0;
  double aow_rate = 0.0;
};

// One trial's voter preferences. Candidate j gets a per-trial scale
// alpha_j ~ U[0,1); voter i ranks candidates by beta_ij = r_ij * alpha_j
// descending (r_ij ~ U[0,1) from the voter's derived stream), ties toward
// the lower index.
std::vector<Ranking> generate_population(long n, int d, const RngHandle& rng);

// Same, with the candidate scales supplied by the caller.
std::vector<Ranking> generate_population_with_scales(
    long n, const std::vector<double>& scales, const RngHandle& rng);

// Full pipeline for one cell and one repeat: population, true averages,
// per-voter randomization, optional attack, aggregation, metrics against
// the honest truth.
MetricsReport run_trial(const ExperimentConfig& config, int eps_index,
                        int trial_index);

// All cells, `repeats` trials each, trials run in parallel. Row order is
// the epsilon order regardless of scheduling.
std::vector<TrialReport> run_experiment(const ExperimentConfig& config);

// Header: rule,d,n,mechanism,epsilon,attack_kind,attack_count,repeats,seed,
//         tve,mae,mse,low,aow_rate
void write_reports_csv(std::ostream& out,
                       const std::vector<TrialReport>& reports);
// Same fields, one JSON object per line.
void write_reports_jsonl(std::ostream& out,
                         const std::vector<TrialReport>& reports);

// Writes to config.output_path in config.format; throws std::runtime_error
// when the path cannot be opened.
void write_reports(const ExperimentConfig& config,
                   const std::vector<TrialReport>& reports);

// Applies settings from a JSON object whose keys equal the CLI flag names
// (e.g. {"rule": "borda", "d": 8, "epsilons": [0.4, 1.0], "seed": 7}).
ExperimentConfig config_from_json_text(const std::string& text,
                                       ExperimentConfig base = {});

}  // namespace ldpvote

#endif  // LDPVOTE_HARNESS_HPP_
