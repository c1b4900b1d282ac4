//
// Copyright 2026 The dpcp Authors
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

#ifndef DPCP_CONFORMAL_H_
#define DPCP_CONFORMAL_H_

#include <span>
#include <vector>

#include "dpcp/matrix.h"
#include "dpcp/privacy.h"
#include "dpcp/quantile.h"
#include "dpcp/random.h"
#include "dpcp/score_set.h"

namespace dpcp {

// Hinge non-conformity scores 1 - p_i[y_i] on [0, 1]. Rows must sum to 1
// within 1e-9; scores are clamped into [0, 1] when they stray by at most
// 1e-12, larger violations throw.
ScoreSet HingeScores(const Matrix& class_probabilities,
                     std::span<const int> true_labels);

// Labels y with 1 - p[y] <= threshold. May be empty.
struct PredictionSet {
  std::vector<int> labels;
  double threshold_used = 0.0;

  bool Contains(int label) const;
  int size() const { return static_cast<int>(labels.size()); }
};

PredictionSet MakePredictionSet(std::span<const double> prob_row,
                                double threshold);

// Knobs for the quantile mechanisms. Which fields matter depends on the
// mechanism.
struct MechanismParams {
  double score_lower = 0.0;
  double score_upper = 1.0;
  double precision = kDefaultPrecision;
  SearchOptions search;
  ExponqTuneOptions exponq;
};

// Threshold from calibration scores with the chosen mechanism. The binary
// search spends budget.rho, the exponential mechanism budget.epsilon.
QuantileResult RunMechanism(const ScoreSet& scores, double alpha,
                            Mechanism method, const PrivacyBudget& budget,
                            const MechanismParams& params, RandomStream& rng);

// Hinge scores of the calibration set followed by RunMechanism.
QuantileResult Calibrate(const Matrix& cal_probabilities,
                         std::span<const int> cal_labels, double alpha,
                         Mechanism method, const PrivacyBudget& budget,
                         const MechanismParams& params, RandomStream& rng);

struct MetricsReport {
  // Fraction of sets containing the true label.
  double coverage = 0.0;
  // Mean set size.
  double efficiency = 0.0;
  // Fraction of singleton sets.
  double informativeness = 0.0;
  int n_test = 0;
};

MetricsReport Evaluate(std::span<const PredictionSet> sets,
                       std::span<const int> true_labels);

}  // namespace dpcp

#endif  // DPCP_CONFORMAL_H_
