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

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ldpvote/io.hpp"
#include "ldpvote/kernels.hpp"

namespace ldpvote {

std::vector<double> default_epsilon_grid() {
  return {0.01, 0.1, 0.2, 0.4, 0.8, 1.0, 1.5, 2.0, 3.0};
}

void validate_config(const ExperimentConfig& config) {
  if (config.d < 2) throw std::invalid_argument("need at least 2 candidates");
  if (config.n < 1) throw std::invalid_argument("need n >= 1 voters");
  if (config.repeats < 1) throw std::invalid_argument("need repeats >= 1");
  if (config.epsilons.empty()) {
    throw std::invalid_argument("need at least one epsilon");
  }
  for (double epsilon : config.epsilons) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  }
  if (config.attack.has_value() && config.attack->count < 0) {
    throw std::invalid_argument("attack count must be >= 0");
  }
}

ScoreVector score_vector_for(const ExperimentConfig& config) {
  return builtin_score_vector(config.rule, config.d, config.approval_k);
}

std::vector<Ranking> generate_population_with_scales(
    long n, const std::vector<double>& scales, const RngHandle& rng) {
  if (n < 1) throw std::invalid_argument("need n >= 1 voters");
  const int d = static_cast<int>(scales.size());
  std::vector<Ranking> population;
  population.reserve(static_cast<std::size_t>(n));
  std::vector<double> beta(static_cast<std::size_t>(d));
  for (long i = 0; i < n; ++i) {
    RngHandle voter = rng.derive(static_cast<std::uint64_t>(i));
    for (int j = 0; j < d; ++j) beta[j] = voter.uniform() * scales[j];
    Ranking ranking;
    ranking.order.resize(static_cast<std::size_t>(d));
    std::iota(ranking.order.begin(), ranking.order.end(), 0);
    std::sort(ranking.order.begin(), ranking.order.end(),
              [&beta](int a, int b) {
                if (beta[a] != beta[b]) return beta[a] > beta[b];
                return a < b;
              });
    population.push_back(std::move(ranking));
  }
  return population;
}

std::vector<Ranking> generate_population(long n, int d, const RngHandle& rng) {
  RngHandle scale_rng = rng;
  std::vector<double> scales(static_cast<std::size_t>(d));
  for (auto& alpha : scales) alpha = scale_rng.uniform();
  return generate_population_with_scales(n, scales, rng);
}

namespace {

// Second-highest entry's index; ties toward the lower index.
int runner_up_index(const std::vector<double>& theta, int winner) {
  int best = -1;
  for (int j = 0; j < static_cast<int>(theta.size()); ++j) {
    if (j == winner) continue;
    if (best < 0 || theta[j] > theta[best]) best = j;
  }
  return best;
}

struct TrialAccumulator {
  std::vector<double> sum;
  long count = 0;

  explicit TrialAccumulator(int d) : sum(static_cast<std::size_t>(d), 0.0) {}

  void add(const PrivateView& view) {
    kernels::add_inplace(sum.data(), view.values.data(), sum.size());
    ++count;
  }

  AggregateResult mean() const {
    std::vector<double> theta = sum;
    kernels::scale_inplace(theta.data(), 1.0 / static_cast<double>(count),
                           theta.size());
    return make_aggregate_result(std::move(theta));
  }
};

}  // namespace

MetricsReport run_trial(const ExperimentConfig& config, int eps_index,
                        int trial_index) {
  validate_config(config);
  if (eps_index < 0 || eps_index >= static_cast<int>(config.epsilons.size())) {
    throw std::invalid_argument("epsilon index out of range");
  }
  const ScoreVector w = score_vector_for(config);
  const double epsilon = config.epsilons[eps_index];
  const int d = config.d;

  MechanismConfig mechanism;
  mechanism.kind = config.mechanism;
  mechanism.epsilon = epsilon;
  mechanism.additive_k = config.additive_k;
  mechanism.laplace_raw_delta_band = config.laplace_raw_delta_band;
  if (mechanism.kind == MechanismKind::weighted_sampling) {
    mechanism.sampling = optimal_sampling_params(w);
  }

  const RngHandle trial_rng = RngHandle(config.master_seed)
                                  .derive(static_cast<std::uint64_t>(eps_index))
                                  .derive(static_cast<std::uint64_t>(trial_index));
  const RngHandle population_rng = trial_rng.derive(0);
  const RngHandle mechanism_rng = trial_rng.derive(1);
  const RngHandle attack_rng = trial_rng.derive(2);

  const std::vector<Ranking> population =
      generate_population(config.n, d, population_rng);

  // Honest truth.
  std::vector<double> truth_sum(static_cast<std::size_t>(d), 0.0);
  std::vector<ScoredVote> votes;
  votes.reserve(population.size());
  for (const auto& ranking : population) {
    votes.push_back(to_scored_vote(ranking, w));
    kernels::add_inplace(truth_sum.data(), votes.back().scores.data(),
                         truth_sum.size());
  }
  kernels::scale_inplace(truth_sum.data(),
                         1.0 / static_cast<double>(population.size()),
                         truth_sum.size());
  const AggregateResult truth = make_aggregate_result(std::move(truth_sum));

  // Additive state is shared by every voter in the trial.
  AdditiveParams additive;
  std::vector<double> presence;
  if (mechanism.kind == MechanismKind::additive) {
    additive = additive_params(w, epsilon, config.additive_k);
    presence = additive_presence_weights(w, epsilon, config.additive_k);
  }

  TrialAccumulator accumulator(d);
  for (long i = 0; i < config.n; ++i) {
    RngHandle voter_rng = mechanism_rng.derive(static_cast<std::uint64_t>(i));
    switch (mechanism.kind) {
      case MechanismKind::laplace:
        accumulator.add(laplace_mechanism(votes[i], epsilon, w, voter_rng));
        break;
      case MechanismKind::weighted_sampling:
        accumulator.add(weighted_sampling_mechanism(
            population[i], epsilon, w, *mechanism.sampling, voter_rng));
        break;
      case MechanismKind::additive:
        accumulator.add(
            additive_mechanism(population[i], additive, presence, voter_rng));
        break;
    }
  }

  if (config.attack.has_value() && config.attack->count > 0) {
    const AttackConfig& attack = *config.attack;
    if (attack.kind == AttackKind::data_amplification) {
      RngHandle fraud_rng = attack_rng.derive(0);
      const std::vector<Ranking> fraud =
          random_fraud_votes(attack.count, d, fraud_rng);
      for (int i = 0; i < attack.count; ++i) {
        RngHandle voter_rng =
            attack_rng.derive(static_cast<std::uint64_t>(i) + 1);
        accumulator.add(randomize(fraud[i], w, mechanism, voter_rng));
      }
    } else {
      int j1 = truth.winner;
      int j2 = runner_up_index(truth.theta, j1);
      if (attack.target_pair.has_value()) {
        j1 = attack.target_pair->first;
        j2 = attack.target_pair->second;
      }
      for (const auto& view :
           disguised_views(mechanism, w, j1, j2, attack.count)) {
        accumulator.add(view);
      }
    }
  }

  return usefulness_metrics(accumulator.mean(), truth);
}

std::vector<TrialReport> run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const ScoreVector w = score_vector_for(config);
  const int cells = static_cast<int>(config.epsilons.size());
  const int repeats = config.repeats;
  std::vector<MetricsReport> metrics(
      static_cast<std::size_t>(cells) * repeats);

  const int total = cells * repeats;
  int thread_count = config.threads > 0
                         ? config.threads
                         : static_cast<int>(std::thread::hardware_concurrency());
  thread_count = std::clamp(thread_count, 1, total);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const int index = next.fetch_add(1);
      if (index >= total) return;
      try {
        metrics[index] = run_trial(config, index / repeats, index % repeats);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialReport> reports;
  reports.reserve(static_cast<std::size_t>(cells));
  for (int e = 0; e < cells; ++e) {
    TrialReport report;
    report.rule = w.rule_name;
    report.d = config.d;
    report.n = config.n;
    report.mechanism = config.mechanism;
    report.epsilon = config.epsilons[e];
    if (config.attack.has_value()) {
      report.attack_kind = attack_kind_name(config.attack->kind);
      report.attack_count = config.attack->count;
    }
    report.repeats = repeats;
    report.seed = config.master_seed;
    for (int t = 0; t < repeats; ++t) {
      const MetricsReport& m = metrics[static_cast<std::size_t>(e) * repeats + t];
      report.tve += m.tve;
      report.mae += m.mae;
      report.mse += m.mse;
      report.low += m.low;
      report.aow_rate += m.aow ? 1.0 : 0.0;
    }
    const double scale = 1.0 / static_cast<double>(repeats);
    report.tve *= scale;
    report.mae *= scale;
    report.mse *= scale;
    report.low *= scale;
    report.aow_rate *= scale;
    reports.push_back(std::move(report));
  }
  return reports;
}

void write_reports_csv(std::ostream& out,
                       const std::vector<TrialReport>& reports) {
  out << "rule,d,n,mechanism,epsilon,attack_kind,attack_count,repeats,seed,"
         "tve,mae,mse,low,aow_rate\n";
  for (const auto& r : reports) {
    out << r.rule << ',' << r.d << ',' << r.n << ','
        << mechanism_kind_name(r.mechanism) << ',' << format_double(r.epsilon)
        << ',' << r.attack_kind << ',' << r.attack_count << ',' << r.repeats
        << ',' << r.seed << ',' << format_double(r.tve) << ','
        << format_double(r.mae) << ',' << format_double(r.mse) << ','
        << format_double(r.low) << ',' << format_double(r.aow_rate) << '\n';
  }
}

void write_reports_jsonl(std::ostream& out,
                         const std::vector<TrialReport>& reports) {
  for (const auto& r : reports) {
    nlohmann::json row;
    row["rule"] = r.rule;
    row["d"] = r.d;
    row["n"] = r.n;
    row["mechanism"] = mechanism_kind_name(r.mechanism);
    row["epsilon"] = r.epsilon;
    row["attack_kind"] = r.attack_kind;
    row["attack_count"] = r.attack_count;
    row["repeats"] = r.repeats;
    row["seed"] = r.seed;
    row["tve"] = r.tve;
    row["mae"] = r.mae;
    row["mse"] = r.mse;
    row["low"] = r.low;
    row["aow_rate"] = r.aow_rate;
    out << row.dump() << '\n';
  }
}

void write_reports(const ExperimentConfig& config,
                   const std::vector<TrialReport>& reports) {
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output path: " + config.output_path);
  }
  if (config.format == OutputFormat::csv) {
    write_reports_csv(out, reports);
  } else {
    write_reports_jsonl(out, reports);
  }
  if (!out) {
    throw std::runtime_error("failed writing output: " + config.output_path);
  }
}

ExperimentConfig config_from_json_text(const std::string& text,
                                       ExperimentConfig base) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_object()) {
    throw std::invalid_argument("config file must hold a JSON object");
  }
  ExperimentConfig config = std::move(base);
  for (const auto& [key, value] : doc.items()) {
    if (key == "rule") {
      config.rule = rule_kind_from_name(value.get<std::string>());
    } else if (key == "approval-k") {
      config.approval_k = value.get<int>();
    } else if (key == "d") {
      config.d = value.get<int>();
    } else if (key == "n") {
      config.n = value.get<long>();
    } else if (key == "epsilons") {
      config.epsilons = value.get<std::vector<double>>();
    } else if (key == "mechanism") {
      config.mechanism = mechanism_kind_from_name(value.get<std::string>());
    } else if (key == "additive-k") {
      config.additive_k = value.get<int>();
    } else if (key == "attack") {
      AttackConfig attack = config.attack.value_or(AttackConfig{});
      attack.kind = attack_kind_from_name(value.get<std::string>());
      config.attack = attack;
    } else if (key == "attack-count") {
      AttackConfig attack = config.attack.value_or(AttackConfig{});
      attack.count = value.get<int>();
      config.attack = attack;
    } else if (key == "laplace-raw-delta-band") {
      config.laplace_raw_delta_band = value.get<bool>();
    } else if (key == "repeats") {
      config.repeats = value.get<int>();
    } else if (key == "seed") {
      config.master_seed = value.get<std::uint64_t>();
    } else if (key == "output") {
      config.output_path = value.get<std::string>();
    } else if (key == "format") {
      const std::string format = value.get<std::string>();
      if (format == "csv") {
        config.format = OutputFormat::csv;
      } else if (format == "jsonl") {
        config.format = OutputFormat::jsonl;
      } else {
        throw std::invalid_argument("unknown output format: " + format);
      }
    } else if (key == "threads") {
      config.threads = value.get<int>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return config;
}

}  // namespace ldpvote
