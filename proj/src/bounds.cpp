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

#include "ldpvote/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ldpvote/enumeration.hpp"
#include "ldpvote/io.hpp"

namespace ldpvote {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
}

void require_voters(long n) {
  if (n < 1) throw std::invalid_argument("need n >= 1 voters");
}

}  // namespace

double laplace_mse_bound(const ScoreVector& w, long n, double epsilon) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  const double delta = sensitivity(w);
  const double d = static_cast<double>(w.dimension());
  return 2.0 * d * delta * delta /
         (static_cast<double>(n) * epsilon * epsilon);
}

BoundReport laplace_risks(const ScoreVector& w, long n, double epsilon) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  const double delta = sensitivity(w);
  BoundReport report;
  report.risk_mm = kInf;
  report.risk_dd = kInf;
  double expected = 0.0;
  for (double weight : w.weights) {
    const double magnitude = std::fabs(weight);
    // E|w + Lap(s)| = |w| + s e^{-|w|/s}, s = Delta/eps.
    if (delta == 0.0) {
      expected += magnitude;
    } else {
      const double scale = delta / epsilon;
      expected += magnitude + scale * std::exp(-magnitude / scale);
    }
  }
  report.risk_em = expected / static_cast<double>(n);
  return report;
}

double laplace_risk_em_descending(int d, long n, double epsilon) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  if (d < 2) throw std::invalid_argument("need at least 2 candidates");
  const ScoreVector borda = builtin_score_vector(RuleKind::borda, d);
  const double delta = sensitivity(borda);
  const double ratio = epsilon / delta;
  const double dd = static_cast<double>(d);
  const double geometric = (std::exp(ratio) - std::exp((1.0 - dd) * ratio)) /
                           (std::exp(ratio) - 1.0);
  return (delta / epsilon * geometric + dd * (dd - 1.0) / 2.0) /
         static_cast<double>(n);
}

double sampling_mse_bound(const ScoreVector& w, long n, double epsilon,
                          const SamplingParams& params) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  const int d = w.dimension();
  validate_sampling_params(params, d);
  double sampling_variance = 0.0;
  for (int j = 0; j < d; ++j) {
    const double deviation = w.weights[j] - params.intercept;
    if (params.masses[j] <= 0.0) {
      if (deviation != 0.0) {
        throw std::invalid_argument(
            "zero sampling mass on a rank with nonzero deviation");
      }
      continue;
    }
    sampling_variance += deviation * deviation / params.masses[j];
  }
  const double root = std::sqrt(std::exp(epsilon));
  const double response_factor =
      1.0 + static_cast<double>(d) * root / ((root - 1.0) * (root - 1.0));
  return response_factor * sampling_variance / static_cast<double>(n);
}

BoundReport sampling_risks(const ScoreVector& w, long n, double epsilon,
                           const SamplingParams& params) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  const int d = w.dimension();
  validate_sampling_params(params, d);
  const double root = std::sqrt(std::exp(epsilon));
  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n);

  BoundReport report;
  double worst_level = 0.0;
  double expected = 0.0;
  double g_max = -kInf;
  double g_min = kInf;
  bool reachable = false;
  for (int j = 0; j < d; ++j) {
    if (params.masses[j] <= 0.0) continue;
    reachable = true;
    const double g = (w.weights[j] - params.intercept) / params.masses[j];
    const BitLevels levels = sampling_bit_levels(g, params.intercept, epsilon);
    const double t = std::fabs(levels.one);
    const double f = std::fabs(levels.zero);
    worst_level = std::max(worst_level, std::max(t, f));
    expected += params.masses[j] *
                ((root + dd - 1.0) * t + (root * (dd - 1.0) + 1.0) * f);
    // Domain diameter tracks the rescaled bit values without the intercept.
    g_max = std::max(g_max, std::max(root * g, -g) / (root - 1.0));
    g_min = std::min(g_min, std::min(root * g, -g) / (root - 1.0));
  }
  if (!reachable) throw std::invalid_argument("sampling masses are all zero");

  report.risk_mm = dd / nn * worst_level;
  report.risk_em = expected / (nn * (root + 1.0));
  report.risk_dd = dd * (g_max - g_min);
  return report;
}

BoundReport sampling_risks_optimal(const ScoreVector& w, long n,
                                   double epsilon) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  const SamplingParams params = optimal_sampling_params(w);
  const double c = params.intercept;
  const double big_omega = omega(w);
  const double root = std::sqrt(std::exp(epsilon));
  const double dd = static_cast<double>(w.dimension());
  const double nn = static_cast<double>(n);
  const double spread = root * big_omega / (root - 1.0);

  BoundReport report;
  report.risk_mm =
      dd / nn * std::max(std::fabs(-spread + c), std::fabs(spread + c));

  const double t_plus = std::fabs(spread + c);
  const double t_minus = std::fabs(-spread + c);
  const double f_plus = std::fabs(-big_omega / (root - 1.0) + c);
  const double f_minus = std::fabs(big_omega / (root - 1.0) + c);
  double expected = 0.0;
  for (int j = 0; j < w.dimension(); ++j) {
    if (w.weights[j] > c) {
      expected += params.masses[j] * ((root + dd - 1.0) * t_plus +
                                      (root * (dd - 1.0) + 1.0) * f_plus);
    } else if (w.weights[j] < c) {
      expected += params.masses[j] * ((root + dd - 1.0) * t_minus +
                                      (root * (dd - 1.0) + 1.0) * f_minus);
    }
  }
  report.risk_em = expected / (nn * (root + 1.0));
  report.risk_dd = 2.0 * root * dd * big_omega / (root - 1.0);
  return report;
}

double additive_mse_bound(const ScoreVector& w, long n, double epsilon) {
  require_positive_epsilon(epsilon);
  require_voters(n);
  const int d = w.dimension();
  const double e_eps = std::exp(epsilon);
  double hat_sum = 0.0;
  double hat_square_sum = 0.0;
  for (double weight : w.weights) {
    const double hat = weight * (e_eps - 1.0) - e_eps * w.weights[d - 1] +
                       w.weights[0];
    hat_sum += hat;
    hat_square_sum += hat * hat;
  }
  return (hat_sum * hat_sum - hat_square_sum) /
         (static_cast<double>(n) * (e_eps - 1.0) * (e_eps - 1.0));
}

BoundReport additive_risks(const AdditiveParams& params, int d, long n) {
  require_voters(n);
  const double kk = static_cast<double>(params.subset_size);
  const double magnitude = kk * std::fabs(params.a_k - params.b_k) +
                           (static_cast<double>(d) - kk) *
                               std::fabs(params.b_k);
  BoundReport report;
  report.risk_mm = magnitude / static_cast<double>(n);
  report.risk_em = report.risk_mm;
  report.risk_dd = 2.0 * kk * std::fabs(params.a_k);
  return report;
}

double laplace_filter_radius(const ScoreVector& w, double epsilon,
                             double beta) {
  require_positive_epsilon(epsilon);
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("beta must be in (0, 1)");
  }
  const double delta = sensitivity(w);
  const double d = static_cast<double>(w.dimension());
  return delta * (std::log(1.0 / beta) + d * std::log(delta / epsilon)) /
         epsilon;
}

std::pair<std::vector<PrivateView>, FilterThreshold> laplace_filter(
    const std::vector<PrivateView>& views, const ScoreVector& w,
    double epsilon, double beta) {
  FilterThreshold threshold;
  threshold.beta = beta;
  threshold.radius = laplace_filter_radius(w, epsilon, beta);
  std::vector<PrivateView> kept;
  for (const auto& view : views) {
    if (enumeration::min_l1_to_vote_domain(view.values, w) <=
        threshold.radius) {
      kept.push_back(view);
    }
  }
  return {std::move(kept), threshold};
}

std::pair<bool, bool> cross_inequalities(const BoundReport& bound,
                                         const ScoreVector& w, long n) {
  require_voters(n);
  const double d = static_cast<double>(w.dimension());
  const double nn = static_cast<double>(n);
  double weight_mass = 0.0;
  for (double weight : w.weights) weight_mass += std::fabs(weight);

  const bool upper =
      bound.risk_em <=
      (std::sqrt(d * nn * bound.mse_bound) + weight_mass) / nn;
  const bool lower = bound.risk_dd >= 2.0 * std::sqrt(bound.mse_bound / nn);
  return {upper, lower};
}

BoundReport mechanism_bounds(MechanismKind kind, const ScoreVector& w, long n,
                             double epsilon, int additive_k) {
  switch (kind) {
    case MechanismKind::laplace: {
      BoundReport report = laplace_risks(w, n, epsilon);
      report.mse_bound = laplace_mse_bound(w, n, epsilon);
      return report;
    }
    case MechanismKind::weighted_sampling: {
      BoundReport report = sampling_risks_optimal(w, n, epsilon);
      report.mse_bound =
          sampling_mse_bound(w, n, epsilon, optimal_sampling_params(w));
      return report;
    }
    case MechanismKind::additive: {
      const AdditiveParams params = additive_params(w, epsilon, additive_k);
      BoundReport report = additive_risks(params, w.dimension(), n);
      report.mse_bound = additive_mse_bound(w, n, epsilon);
      return report;
    }
  }
  throw std::invalid_argument("unknown mechanism kind");
}

std::vector<BoundRow> bounds_table(const ScoreVector& w, long n,
                                   const std::vector<double>& epsilons,
                                   const std::vector<MechanismKind>& kinds,
                                   int additive_k) {
  std::vector<BoundRow> rows;
  rows.reserve(epsilons.size() * kinds.size());
  for (MechanismKind kind : kinds) {
    for (double epsilon : epsilons) {
      BoundRow row;
      row.rule = w.rule_name;
      row.d = w.dimension();
      row.n = n;
      row.epsilon = epsilon;
      row.mechanism = kind;
      row.bound = mechanism_bounds(kind, w, n, epsilon, additive_k);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundRow>& rows) {
  out << "rule,d,n,epsilon,mechanism,mse_bound,risk_mm,risk_em,risk_dd\n";
  for (const auto& row : rows) {
    out << row.rule << ',' << row.d << ',' << row.n << ','
        << format_double(row.epsilon) << ',' << mechanism_kind_name(row.mechanism)
        << ',' << format_double(row.bound.mse_bound) << ','
        << format_double(row.bound.risk_mm) << ','
        << format_double(row.bound.risk_em) << ','
        << format_double(row.bound.risk_dd) << '\n';
  }
}

}  // namespace ldpvote
