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

#include "ldpvote/harness.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "ldpvote/bounds.hpp"

namespace ldpvote {
namespace {

TEST_CASE("population generation is deterministic per seed") {
  const RngHandle rng(601);
  const auto first = generate_population(200, 6, rng);
  const auto second = generate_population(200, 6, rng);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    REQUIRE(is_permutation(first[i]));
    CHECK(first[i].order == second[i].order);
  }
}

TEST_CASE("equal scales make every ordering equally likely") {
  const RngHandle rng(602);
  const long n = 120000;
  const auto population =
      generate_population_with_scales(n, {0.7, 0.7, 0.7}, rng);
  std::map<std::vector<int>, long> counts;
  for (const auto& ranking : population) ++counts[ranking.order];
  CHECK(counts.size() == 6);
  const double expected = static_cast<double>(n) / 6.0;
  const double band = 3.0 * std::sqrt(expected * (1.0 - 1.0 / 6.0));
  for (const auto& [order, count] : counts) {
    CHECK(std::fabs(static_cast<double>(count) - expected) <= band);
  }
}

TEST_CASE("a dominant scale pushes its candidate to the top") {
  const RngHandle rng(603);
  const long n = 100000;
  const auto population =
      generate_population_with_scales(n, {1.0, 1e-6, 1e-6, 1e-6}, rng);
  long on_top = 0;
  for (const auto& ranking : population) {
    if (ranking.order[0] == 0) ++on_top;
  }
  CHECK(static_cast<double>(on_top) / static_cast<double>(n) > 0.999);
}

TEST_CASE("run_trial with a huge budget recovers the truth") {
  ExperimentConfig config;
  config.rule = RuleKind::borda;
  config.d = 5;
  config.n = 2000;
  config.epsilons = {200.0};
  config.mechanism = MechanismKind::laplace;
  config.repeats = 1;
  config.master_seed = 604;
  const MetricsReport report = run_trial(config, 0, 0);
  CHECK(report.tve < 0.05);
  CHECK(report.aow);
}

TEST_CASE("per-trial laplace error concentrates near the closed-form bound") {
  ExperimentConfig config;
  config.d = 8;
  config.n = 10000;
  config.epsilons = {1.0};
  config.mechanism = MechanismKind::laplace;
  config.repeats = 200;
  config.master_seed = 605;
  config.threads = 2;
  const auto reports = run_experiment(config);
  REQUIRE(reports.size() == 1);
  const double bound =
      laplace_mse_bound(score_vector_for(config), config.n, 1.0);
  CHECK(std::fabs(reports[0].mse - bound) < 0.1 * bound);
}

TEST_CASE("repeats=1 reduces run_experiment to run_trial") {
  ExperimentConfig config;
  config.d = 5;
  config.n = 300;
  config.epsilons = {0.8, 1.5};
  config.mechanism = MechanismKind::additive;
  config.repeats = 1;
  config.master_seed = 606;
  const auto reports = run_experiment(config);
  REQUIRE(reports.size() == 2);
  for (int e = 0; e < 2; ++e) {
    const MetricsReport trial = run_trial(config, e, 0);
    CHECK(reports[e].tve == trial.tve);
    CHECK(reports[e].mse == trial.mse);
    CHECK(reports[e].mae == trial.mae);
    CHECK(reports[e].low == trial.low);
    CHECK(reports[e].aow_rate == (trial.aow ? 1.0 : 0.0));
  }
}

TEST_CASE("experiment outputs are byte-identical for a fixed seed") {
  ExperimentConfig config;
  config.d = 4;
  config.n = 500;
  config.epsilons = {0.4, 1.0};
  config.mechanism = MechanismKind::weighted_sampling;
  config.repeats = 5;
  config.master_seed = 607;
  config.threads = 2;

  std::ostringstream first;
  write_reports_csv(first, run_experiment(config));
  std::ostringstream second;
  write_reports_csv(second, run_experiment(config));
  CHECK(first.str() == second.str());
  CHECK(first.str().find(
            "rule,d,n,mechanism,epsilon,attack_kind,attack_count,repeats,"
            "seed,tve,mae,mse,low,aow_rate") == 0);

  std::ostringstream jsonl;
  write_reports_jsonl(jsonl, run_experiment(config));
  CHECK(jsonl.str().find("\"rule\"") != std::string::npos);
}

TEST_CASE("thread count does not change the results") {
  ExperimentConfig config;
  config.d = 5;
  config.n = 400;
  config.epsilons = {0.8};
  config.mechanism = MechanismKind::additive;
  config.repeats = 8;
  config.master_seed = 608;

  config.threads = 1;
  const auto serial = run_experiment(config);
  config.threads = 4;
  const auto parallel = run_experiment(config);
  REQUIRE(serial.size() == parallel.size());
  CHECK(serial[0].tve == parallel[0].tve);
  CHECK(serial[0].mse == parallel[0].mse);
  CHECK(serial[0].aow_rate == parallel[0].aow_rate);
}

TEST_CASE("averaged error is monotone in epsilon") {
  for (MechanismKind kind : {MechanismKind::laplace, MechanismKind::additive}) {
    ExperimentConfig config;
    config.d = 5;
    config.n = 1000;
    config.epsilons = default_epsilon_grid();
    config.mechanism = kind;
    config.repeats = 300;
    config.master_seed = 609;
    config.threads = 2;

    // Collect per-trial values to get a standard error per cell.
    const int cells = static_cast<int>(config.epsilons.size());
    std::vector<double> means(cells, 0.0);
    std::vector<double> errors(cells, 0.0);
    const auto reports = run_experiment(config);
    for (int e = 0; e < cells; ++e) {
      std::vector<double> tve(config.repeats);
      for (int t = 0; t < config.repeats; ++t) {
        tve[t] = run_trial(config, e, t).tve;
      }
      double mean = 0.0;
      for (double value : tve) mean += value;
      mean /= config.repeats;
      double variance = 0.0;
      for (double value : tve) variance += (value - mean) * (value - mean);
      variance /= config.repeats - 1;
      means[e] = mean;
      errors[e] = std::sqrt(variance / config.repeats);
      CHECK(mean == doctest::Approx(reports[e].tve).epsilon(1e-9));
    }
    for (int e = 1; e < cells; ++e) {
      CAPTURE(config.epsilons[e]);
      CHECK(means[e] <= means[e - 1] + errors[e] + errors[e - 1]);
    }
  }
}

TEST_CASE("error scales inversely with the number of voters") {
  ExperimentConfig config;
  config.d = 8;
  config.epsilons = {1.0};
  config.mechanism = MechanismKind::laplace;
  config.repeats = 200;
  config.master_seed = 610;
  config.threads = 2;

  config.n = 5000;
  const double small_n = run_experiment(config)[0].mse;
  config.n = 50000;
  const double large_n = run_experiment(config)[0].mse;
  CHECK(large_n / small_n == doctest::Approx(0.1).epsilon(0.2));
}

TEST_CASE("attacked trials degrade relative to clean ones") {
  ExperimentConfig config;
  config.d = 5;
  config.n = 2000;
  config.epsilons = {1.0};
  config.mechanism = MechanismKind::laplace;
  config.repeats = 40;
  config.master_seed = 611;
  config.threads = 2;
  const double clean = run_experiment(config)[0].tve;

  config.attack = AttackConfig{AttackKind::view_disguise, 100, std::nullopt};
  const double attacked = run_experiment(config)[0].tve;
  CHECK(attacked > clean);
}

TEST_CASE("a 5 percent fraud budget dominates a 0.1 percent one") {
  // Randomized fraud views are unbiased, so at low epsilon they mostly
  // dilute the noise floor; their pull toward the uniform profile shows up
  // once the honest noise is small. Compare at the top of the budget grid.
  ExperimentConfig config;
  config.d = 8;
  config.n = 10000;
  config.epsilons = {3.0};
  config.mechanism = MechanismKind::laplace;
  config.repeats = 100;
  config.master_seed = 612;
  config.threads = 2;

  config.attack = AttackConfig{AttackKind::data_amplification, 10,  // 0.1%
                               std::nullopt};
  const double light = run_experiment(config)[0].tve;
  config.attack->count = 500;  // 5%
  const double heavy = run_experiment(config)[0].tve;
  CHECK(heavy > light);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.d = 1;
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  config.d = 5;
  config.repeats = 0;
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  config.repeats = 1;
  config.epsilons = {0.0};
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  config.epsilons = {1.0};
  CHECK_NOTHROW(validate_config(config));
}

TEST_CASE("config can be loaded from JSON keyed by flag names") {
  const std::string text = R"({
    "rule": "nauru",
    "d": 6,
    "n": 1234,
    "epsilons": [0.4, 1.0],
    "mechanism": "additive",
    "additive-k": 2,
    "attack": "view_disguise",
    "attack-count": 17,
    "repeats": 9,
    "seed": 99,
    "format": "jsonl",
    "threads": 3
  })";
  const ExperimentConfig config = config_from_json_text(text);
  CHECK(config.rule == RuleKind::nauru);
  CHECK(config.d == 6);
  CHECK(config.n == 1234);
  CHECK(config.epsilons == std::vector<double>{0.4, 1.0});
  CHECK(config.mechanism == MechanismKind::additive);
  CHECK(config.additive_k == 2);
  REQUIRE(config.attack.has_value());
  CHECK(config.attack->kind == AttackKind::view_disguise);
  CHECK(config.attack->count == 17);
  CHECK(config.repeats == 9);
  CHECK(config.master_seed == 99);
  CHECK(config.format == OutputFormat::jsonl);
  CHECK(config.threads == 3);

  CHECK_THROWS_AS(config_from_json_text(R"({"bogus": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(config_from_json_text(R"([1, 2])"), std::invalid_argument);
}

TEST_CASE("unwritable output paths raise an error") {
  ExperimentConfig config;
  config.output_path = "/nonexistent-dir/report.csv";
  CHECK_THROWS_AS(write_reports(config, {}), std::runtime_error);
}

}  // namespace
}  // namespace ldpvote
