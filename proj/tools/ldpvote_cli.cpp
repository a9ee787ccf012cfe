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

// Command-line simulator for locally differentially private vote
// aggregation.
//
//   ldpvote simulate  — sweep the epsilon grid and report metric means
//   ldpvote bounds    — emit the closed-form bound tables
//   ldpvote attack    — adversarial sweeps over attack budgets
//   ldpvote oracle    — exhaustive cross-checks on small domains

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldpvote/adversary.hpp"
#include "ldpvote/bounds.hpp"
#include "ldpvote/enumeration.hpp"
#include "ldpvote/harness.hpp"
#include "ldpvote/io.hpp"

namespace {

using namespace ldpvote;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Experiment flags shared by `simulate` and `attack`. Values provided on the
// command line override values from --config.
struct ExperimentFlags {
  std::string rule = "borda";
  int approval_k = 2;
  int d = 8;
  long n = 10000;
  std::vector<double> epsilons;
  std::string mechanism = "laplace";
  int additive_k = 1;
  int repeats = 400;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "csv";
  int threads = 0;
  bool laplace_raw_delta_band = false;
  std::string config_path;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path,
                   "JSON config file; keys match these flag names");
    cmd.add_option("--rule", rule,
                   "borda|nauru|plurality|antiplurality|kapproval");
    cmd.add_option("--approval-k", approval_k, "k for the kapproval rule");
    cmd.add_option("--d", d, "number of candidates");
    cmd.add_option("--n", n, "number of honest voters");
    cmd.add_option("--epsilons", epsilons, "privacy budgets to sweep")
        ->delimiter(',');
    cmd.add_option("--mechanism", mechanism,
                   "laplace|weighted_sampling|additive");
    cmd.add_option("--additive-k", additive_k, "subset size for additive");
    cmd.add_option("--repeats", repeats, "trials per cell");
    cmd.add_option("--seed", seed, "master seed (required)");
    cmd.add_option("--output", output, "output path (default: stdout)");
    cmd.add_option("--format", format, "csv|jsonl");
    cmd.add_option("--threads", threads, "worker threads (0 = auto)");
    cmd.add_flag("--laplace-raw-delta-band", laplace_raw_delta_band,
                 "size the disguise band as Delta instead of Delta/epsilon");
  }

  // Merge: defaults -> config file -> explicitly passed flags.
  ExperimentConfig resolve(const CLI::App& cmd) const {
    ExperimentConfig config;
    bool seed_given = cmd.count("--seed") > 0;
    if (!config_path.empty()) {
      const std::string text = read_file(config_path);
      config = config_from_json_text(text, config);
      // A seed from the file satisfies the explicit-seed requirement.
      seed_given = seed_given || text.find("\"seed\"") != std::string::npos;
    }
    if (cmd.count("--rule")) config.rule = rule_kind_from_name(rule);
    if (cmd.count("--approval-k")) config.approval_k = approval_k;
    if (cmd.count("--d")) config.d = d;
    if (cmd.count("--n")) config.n = n;
    if (cmd.count("--epsilons")) config.epsilons = epsilons;
    if (cmd.count("--mechanism")) {
      config.mechanism = mechanism_kind_from_name(mechanism);
    }
    if (cmd.count("--additive-k")) config.additive_k = additive_k;
    if (cmd.count("--repeats")) config.repeats = repeats;
    if (cmd.count("--seed")) config.master_seed = seed;
    if (cmd.count("--output")) config.output_path = output;
    if (cmd.count("--format")) {
      if (format == "csv") {
        config.format = OutputFormat::csv;
      } else if (format == "jsonl") {
        config.format = OutputFormat::jsonl;
      } else {
        throw CLI::ValidationError("--format must be csv or jsonl");
      }
    }
    if (cmd.count("--threads")) config.threads = threads;
    if (cmd.count("--laplace-raw-delta-band")) {
      config.laplace_raw_delta_band = laplace_raw_delta_band;
    }
    if (!seed_given) {
      throw CLI::ValidationError(
          "--seed is required: runs must be explicitly reproducible");
    }
    return config;
  }
};

void emit_reports(const ExperimentConfig& config,
                  const std::vector<TrialReport>& reports) {
  if (!config.output_path.empty()) {
    write_reports(config, reports);
    return;
  }
  if (config.format == OutputFormat::csv) {
    write_reports_csv(std::cout, reports);
  } else {
    write_reports_jsonl(std::cout, reports);
  }
}

int run_simulate(const CLI::App& cmd, const ExperimentFlags& flags) {
  const ExperimentConfig config = flags.resolve(cmd);
  emit_reports(config, run_experiment(config));
  return 0;
}

int run_attack(const CLI::App& cmd, const ExperimentFlags& flags,
               const std::string& attack_kind,
               const std::vector<int>& attack_counts) {
  ExperimentConfig config = flags.resolve(cmd);
  std::vector<TrialReport> rows;
  for (int count : attack_counts) {
    AttackConfig attack;
    attack.kind = attack_kind_from_name(attack_kind);
    attack.count = count;
    config.attack = attack;
    const auto reports = run_experiment(config);
    rows.insert(rows.end(), reports.begin(), reports.end());
  }
  emit_reports(config, rows);
  return 0;
}

int run_bounds(const std::string& rule, int approval_k, int d, long n,
               std::vector<double> epsilons,
               const std::vector<std::string>& mechanisms, int additive_k,
               const std::string& output) {
  const ScoreVector w =
      builtin_score_vector(rule_kind_from_name(rule), d, approval_k);
  if (epsilons.empty()) epsilons = default_epsilon_grid();
  std::vector<MechanismKind> kinds;
  for (const auto& name : mechanisms) {
    kinds.push_back(mechanism_kind_from_name(name));
  }
  const auto rows = bounds_table(w, n, epsilons, kinds, additive_k);
  if (output.empty()) {
    write_bounds_csv(std::cout, rows);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + output);
    write_bounds_csv(out, rows);
  }
  return 0;
}

class OracleRunner {
 public:
  int failures() const { return failures_; }

  void check(const std::string& name, bool passed, const std::string& detail) {
    std::cout << (passed ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << '\n';
    if (!passed) ++failures_;
  }

 private:
  int failures_ = 0;
};

int run_oracle(int d_max, long samples, const std::vector<double>& epsilons,
               std::uint64_t seed) {
  OracleRunner runner;
  RngHandle rng(seed);

  // Closed-form sensitivity against the exhaustive maximum.
  for (int d = 3; d <= d_max; ++d) {
    for (RuleKind rule : {RuleKind::borda, RuleKind::nauru,
                          RuleKind::plurality, RuleKind::antiplurality}) {
      const ScoreVector w = builtin_score_vector(rule, d);
      const double closed = sensitivity(w);
      const double brute = enumeration::brute_force_sensitivity(w);
      runner.check(
          "sensitivity " + w.rule_name + " d=" + std::to_string(d),
          std::fabs(closed - brute) <= 1e-12 * std::max(1.0, brute),
          format_double(closed) + " vs " + format_double(brute));
    }
  }

  // Privacy ratios by enumeration.
  for (double epsilon : epsilons) {
    const double budget = std::exp(epsilon) + 1e-9;
    for (int d = 3; d <= std::min(d_max, 5); ++d) {
      const ScoreVector w = builtin_score_vector(RuleKind::borda, d);
      const double sampling_ratio = enumeration::max_ldp_ratio_sampling(
          epsilon, w, optimal_sampling_params(w));
      runner.check("ldp-ratio weighted_sampling d=" + std::to_string(d) +
                       " eps=" + format_double(epsilon),
                   sampling_ratio <= budget, format_double(sampling_ratio));
      for (int k = 1; k <= std::min(3, d - 1); ++k) {
        const double additive_ratio =
            enumeration::max_ldp_ratio_additive(epsilon, w, k);
        runner.check("ldp-ratio additive d=" + std::to_string(d) +
                         " k=" + std::to_string(k) +
                         " eps=" + format_double(epsilon),
                     additive_ratio <= budget, format_double(additive_ratio));
      }
    }
  }

  // Subset probabilities normalize.
  for (int d = 4; d <= std::min(d_max + 3, 8); d += 2) {
    const ScoreVector w = builtin_score_vector(RuleKind::nauru, d);
    const auto rankings = enumeration::all_rankings(d);
    for (int k = 1; k <= 3 && k < d; ++k) {
      const Ranking& ranking = rankings[rng.next_below(rankings.size())];
      const auto probabilities =
          additive_probabilities(to_scored_vote(ranking, w), w, 1.0, k);
      double total = 0.0;
      for (const auto& [mask, p] : probabilities) total += p;
      runner.check(
          "additive-normalization d=" + std::to_string(d) +
              " k=" + std::to_string(k),
          std::fabs(total - 1.0) < 1e-12, format_double(total));
    }
  }

  // Recursive sampler against the enumerated distribution.
  {
    const ScoreVector w = builtin_score_vector(RuleKind::borda, 5);
    const Ranking ranking{{3, 0, 4, 1, 2}};
    for (int k = 1; k <= 3; ++k) {
      const auto oracle =
          additive_probabilities(to_scored_vote(ranking, w), w, 1.0, k);
      RngHandle local = rng.derive(static_cast<std::uint64_t>(k));
      const auto empirical = enumeration::empirical_additive_distribution(
          ranking, 1.0, w, k, samples, local);
      const double tv = enumeration::tv_distance(oracle, empirical);
      runner.check("sampler-tv d=5 k=" + std::to_string(k),
                   tv < 3.0 * std::sqrt(static_cast<double>(oracle.size()) /
                                        static_cast<double>(samples)),
                   format_double(tv));
    }
  }

  // Laplace density ratio at random outputs.
  {
    const ScoreVector w = builtin_score_vector(RuleKind::borda, 4);
    for (double epsilon : epsilons) {
      RngHandle local = rng.derive(static_cast<std::uint64_t>(epsilon * 1000));
      const double worst =
          enumeration::max_ldp_ratio_laplace(epsilon, w, 1000, local);
      runner.check("ldp-ratio laplace d=4 eps=" + format_double(epsilon),
                   worst <= std::exp(epsilon) * (1.0 + 1e-9),
                   format_double(worst));
    }
  }

  // The two expected-magnitude routes for descending integer weights.
  for (int d : {3, 5, 8, 16}) {
    if (d > std::max(d_max, 8)) continue;
    const ScoreVector w = builtin_score_vector(RuleKind::borda, d);
    for (double epsilon : epsilons) {
      const double direct = laplace_risks(w, 1, epsilon).risk_em;
      const double geometric = laplace_risk_em_descending(d, 1, epsilon);
      runner.check("risk-em-two-routes d=" + std::to_string(d) +
                       " eps=" + format_double(epsilon),
                   std::fabs(direct - geometric) <= 1e-9 * geometric,
                   format_double(direct) + " vs " + format_double(geometric));
    }
  }

  std::cout << (runner.failures() == 0 ? "all checks passed"
                                       : "checks FAILED")
            << '\n';
  return runner.failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Locally differentially private aggregation of positional votes"};
  app.require_subcommand(1);

  ExperimentFlags simulate_flags;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run the experiment grid");
  simulate_flags.attach(*simulate);

  ExperimentFlags attack_flags;
  std::string attack_kind = "data_amplification";
  std::vector<int> attack_counts;
  CLI::App* attack = app.add_subcommand("attack", "adversarial sweeps");
  attack_flags.attach(*attack);
  attack->add_option("--attack", attack_kind,
                     "data_amplification|view_disguise");
  attack->add_option("--attack-counts", attack_counts,
                     "adversarial report counts to sweep")
      ->delimiter(',')
      ->required();

  std::string bounds_rule = "borda";
  int bounds_approval_k = 2;
  int bounds_d = 8;
  long bounds_n = 10000;
  std::vector<double> bounds_epsilons;
  std::vector<std::string> bounds_mechanisms = {"laplace", "weighted_sampling",
                                                "additive"};
  int bounds_additive_k = 1;
  std::string bounds_output;
  CLI::App* bounds =
      app.add_subcommand("bounds", "emit closed-form bound tables");
  bounds->add_option("--rule", bounds_rule, "voting rule");
  bounds->add_option("--approval-k", bounds_approval_k, "k for kapproval");
  bounds->add_option("--d", bounds_d, "number of candidates");
  bounds->add_option("--n", bounds_n, "number of voters");
  bounds->add_option("--epsilons", bounds_epsilons, "privacy budgets")
      ->delimiter(',');
  bounds->add_option("--mechanisms", bounds_mechanisms, "mechanisms to table")
      ->delimiter(',');
  bounds->add_option("--additive-k", bounds_additive_k, "additive subset size");
  bounds->add_option("--output", bounds_output, "output path (default: stdout)");

  int oracle_d_max = 5;
  long oracle_samples = 200000;
  std::vector<double> oracle_epsilons = {0.1, 1.0, 3.0};
  std::uint64_t oracle_seed = 1;
  CLI::App* oracle =
      app.add_subcommand("oracle", "exhaustive cross-checks; nonzero exit on failure");
  oracle->add_option("--d-max", oracle_d_max, "largest domain to enumerate")
      ->check(CLI::Range(3, 8));
  oracle->add_option("--samples", oracle_samples, "sampler draws");
  oracle->add_option("--epsilons", oracle_epsilons, "privacy budgets")
      ->delimiter(',');
  oracle->add_option("--seed", oracle_seed, "seed for sampled checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(*simulate, simulate_flags);
    if (attack->parsed()) {
      return run_attack(*attack, attack_flags, attack_kind, attack_counts);
    }
    if (bounds->parsed()) {
      return run_bounds(bounds_rule, bounds_approval_k, bounds_d, bounds_n,
                        bounds_epsilons, bounds_mechanisms, bounds_additive_k,
                        bounds_output);
    }
    if (oracle->parsed()) {
      return run_oracle(oracle_d_max, oracle_samples, oracle_epsilons,
                        oracle_seed);
    }
  } catch (const CLI::ValidationError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
