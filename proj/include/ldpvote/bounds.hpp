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

#ifndef LDPVOTE_BOUNDS_HPP_
#define LDPVOTE_BOUNDS_HPP_

#include <ostream>
#include <utility>
#include <vector>

#include "ldpvote/mechanisms.hpp"
#include "ldpvote/voting.hpp"

// Closed-form usefulness and soundness bounds for the three mechanisms.
// Risk metrics describe what one adversarial report can do to the average:
//   risk_mm — largest possible |view|_1 / n,
//   risk_em — expected |view|_1 / n,
//   risk_dd — L1 diameter of the view domain.
// Unbounded risks (Laplace) are +infinity; serialized as "inf".

namespace ldpvote {

struct BoundReport {
  double mse_bound = 0.0;
  double risk_mm = 0.0;
  double risk_em = 0.0;
  double risk_dd = 0.0;
};

// 2 d Delta^2 / (n eps^2)
double laplace_mse_bound(const ScoreVector& w, long n, double epsilon);

// risk_mm = risk_dd = +inf; risk_em = sum_j ((Delta/eps) e^{-|w_j| eps/Delta}
// + |w_j|) / n. The 1/n keeps bounds in the same units as the metrics.
BoundReport laplace_risks(const ScoreVector& w, long n, double epsilon);

// Equivalent geometric-series form of the Laplace risk_em for the descending
// integer weights d-1, d-2, ..., 0.
double laplace_risk_em_descending(int d, long n, double epsilon);

// (1/n) (1 + d sqrt(e^eps)/(sqrt(e^eps)-1)^2) sum_j (w_j - c)^2 / m_j.
// Throws when some m_j = 0 with w_j != c.
double sampling_mse_bound(const ScoreVector& w, long n, double epsilon,
                          const SamplingParams& params);

// Risks for arbitrary masses/intercept; maxima range over reachable outputs
// only (ranks with positive mass).
BoundReport sampling_risks(const ScoreVector& w, long n, double epsilon,
                           const SamplingParams& params);

// Closed forms at the optimal parameters: risk_dd = 2 sqrt(e^eps) d
// omega(w) / (sqrt(e^eps)-1), etc.
BoundReport sampling_risks_optimal(const ScoreVector& w, long n,
                                   double epsilon);

// k = 1 closed form: ((sum_j wh_j)^2 - sum_j wh_j^2) / (n (e^eps-1)^2),
// wh_j = w_j (e^eps - 1) - e^eps w_d + w_1.
double additive_mse_bound(const ScoreVector& w, long n, double epsilon);

// risk_mm = risk_em = (k|a_k-b_k| + (d-k)|b_k|)/n; risk_dd = 2k|a_k|.
BoundReport additive_risks(const AdditiveParams& params, int d, long n);

struct FilterThreshold {
  double beta = 0.0;
  double radius = 0.0;
};

// Keeps views whose L1 distance to the nearest scored vote is at most
// Delta (ln(1/beta) + d ln(Delta/eps)) / eps.
std::pair<std::vector<PrivateView>, FilterThreshold> laplace_filter(
    const std::vector<PrivateView>& views, const ScoreVector& w,
    double epsilon, double beta);

double laplace_filter_radius(const ScoreVector& w, double epsilon,
                             double beta);

// Checks the two usefulness/soundness couplings:
//   first:  risk_em <= (sqrt(d n mse) + sum_j |w_j|) / n
//   second: risk_dd >= 2 sqrt(mse / n)
// The report must carry mse_bound and the risks of one mechanism.
std::pair<bool, bool> cross_inequalities(const BoundReport& bound,
                                         const ScoreVector& w, long n);

// One row of the bound table emitted by the CLI.
struct BoundRow {
  std::string rule;
  int d = 0;
  long n = 0;
  double epsilon = 0.0;
  MechanismKind mechanism = MechanismKind::laplace;
  BoundReport bound;
};

// Full report (MSE bound + risks) per mechanism, with weighted sampling at
// its optimal parameters and additive at the given k.
BoundReport mechanism_bounds(MechanismKind kind, const ScoreVector& w, long n,
                             double epsilon, int additive_k = 1);

std::vector<BoundRow> bounds_table(const ScoreVector& w, long n,
                                   const std::vector<double>& epsilons,
                                   const std::vector<MechanismKind>& kinds,
                                   int additive_k = 1);

// Header: rule,d,n,epsilon,mechanism,mse_bound,risk_mm,risk_em,risk_dd
void write_bounds_csv(std::ostream& out, const std::vector<BoundRow>& rows);

}  // namespace ldpvote

#endif  // LDPVOTE_BOUNDS_HPP_
