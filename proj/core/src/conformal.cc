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

#include "dpcp/conformal.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpcp/errors.h"

namespace dpcp {
namespace {

constexpr double kRowSumTolerance = 1e-9;
constexpr double kScoreSlack = 1e-12;

void CheckRow(std::span<const double> row, std::size_t index) {
  double sum = 0.0;
  for (double p : row) {
    if (!std::isfinite(p)) {
      throw DomainError("probability row " + std::to_string(index) +
                        " has a non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance) {
    throw DomainError("probability row " + std::to_string(index) +
                      " sums to " + std::to_string(sum));
  }
}

}  // namespace

ScoreSet HingeScores(const Matrix& class_probabilities,
                     std::span<const int> true_labels) {
  if (class_probabilities.rows() != true_labels.size()) {
    throw DomainError("HingeScores: probability rows and labels differ in size");
  }
  const auto k = static_cast<int>(class_probabilities.cols());
  std::vector<double> scores(true_labels.size());
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    const auto row = class_probabilities.row(i);
    CheckRow(row, i);
    const int y = true_labels[i];
    if (y < 0 || y >= k) {
      throw DomainError("HingeScores: label " + std::to_string(y) +
                        " out of range");
    }
    double s = 1.0 - row[y];
    if (s < -kScoreSlack || s > 1.0 + kScoreSlack) {
      throw DomainError("HingeScores: score " + std::to_string(s) +
                        " outside [0, 1]");
    }
    scores[i] = std::clamp(s, 0.0, 1.0);
  }
  return ScoreSet(std::move(scores), 0.0, 1.0);
}

bool PredictionSet::Contains(int label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

PredictionSet MakePredictionSet(std::span<const double> prob_row,
                                double threshold) {
  PredictionSet set;
  set.threshold_used = threshold;
  for (std::size_t y = 0; y < prob_row.size(); ++y) {
    if (1.0 - prob_row[y] <= threshold) set.labels.push_back(static_cast<int>(y));
  }
  return set;
}

QuantileResult RunMechanism(const ScoreSet& scores, double alpha,
                            Mechanism method, const PrivacyBudget& budget,
                            const MechanismParams& params, RandomStream& rng) {
  switch (method) {
    case Mechanism::kNonprivate:
      return NonprivateQuantile(scores, alpha);
    case Mechanism::kPcoqs:
      return PcoqsQuantile(scores, alpha, params.precision, budget.rho, rng,
                           params.search);
    case Mechanism::kExponq:
      return TunedExponqQuantile(scores, alpha, budget.epsilon, params.exponq,
                                 rng);
  }
  throw DomainError("RunMechanism: unknown mechanism");
}

QuantileResult Calibrate(const Matrix& cal_probabilities,
                         std::span<const int> cal_labels, double alpha,
                         Mechanism method, const PrivacyBudget& budget,
                         const MechanismParams& params, RandomStream& rng) {
  ScoreSet hinge = HingeScores(cal_probabilities, cal_labels);
  if (params.score_lower == 0.0 && params.score_upper == 1.0) {
    return RunMechanism(hinge, alpha, method, budget, params, rng);
  }
  const ScoreSet scores(std::vector<double>(hinge.values().begin(),
                                            hinge.values().end()),
                        params.score_lower, params.score_upper);
  return RunMechanism(scores, alpha, method, budget, params, rng);
}

MetricsReport Evaluate(std::span<const PredictionSet> sets,
                       std::span<const int> true_labels) {
  if (sets.size() != true_labels.size()) {
    throw DomainError("Evaluate: " + std::to_string(sets.size()) +
                      " sets for " + std::to_string(true_labels.size()) +
                      " labels");
  }
  if (sets.empty()) throw DomainError("Evaluate: no test points");
  long long covered = 0;
  long long total_size = 0;
  long long singletons = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    covered += sets[i].Contains(true_labels[i]) ? 1 : 0;
    total_size += sets[i].size();
    singletons += sets[i].size() == 1 ? 1 : 0;
  }
  const auto n = static_cast<double>(sets.size());
  MetricsReport report;
  report.coverage = covered / n;
  report.efficiency = total_size / n;
  report.informativeness = singletons / n;
  report.n_test = static_cast<int>(sets.size());
  return report;
}

}  // namespace dpcp
