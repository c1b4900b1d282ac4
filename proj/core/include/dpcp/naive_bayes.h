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

#ifndef DPCP_NAIVE_BAYES_H_
#define DPCP_NAIVE_BAYES_H_

#include <span>
#include <vector>

#include "dpcp/matrix.h"
#include "dpcp/random.h"

namespace dpcp {

// Gaussian naive Bayes with per-class diagonal covariance.
struct GnbModel {
  std::vector<double> priors;  // [class]
  Matrix means;                // [class][feature]
  Matrix variances;            // [class][feature], all > 0
  bool is_private = false;
  double epsilon_f = 0.0;      // set when is_private

  int num_classes() const { return static_cast<int>(priors.size()); }
  int num_features() const { return static_cast<int>(means.cols()); }
};

// Lower limit applied to every variance estimate.
inline constexpr double kVarianceFloor = 1e-6;

// Maximum-likelihood fit. Labels are 0..K-1 with K = max label + 1; every
// class needs at least two rows.
GnbModel FitGnb(const Matrix& features, std::span<const int> labels);

struct FeatureBound {
  double lo = 0.0;
  double hi = 0.0;
};

// epsilon_f-DP fit by noising sufficient statistics, with neighbouring
// datasets differing in one replaced row.
//
// Features are clipped into `feature_bounds`. The budget is split in equal
// thirds over the per-class counts (L1 sensitivity 2), feature sums
// (sum_j 2 max|bound_j|) and sums of squares (sum_j 2 max bound_j^2); each
// gets Laplace noise of scale sensitivity / (epsilon_f / 3). Noisy counts are
// floored at 1, means clamped into the bounds and variances floored at
// kVarianceFloor.
GnbModel FitDpGnb(const Matrix& features, std::span<const int> labels,
                  double epsilon_f, std::span<const FeatureBound> feature_bounds,
                  RandomStream& rng);

// Posterior class probabilities, one row per input row. Computed in log
// space; each row sums to 1.
Matrix PredictProba(const GnbModel& model, const Matrix& features);

// Fraction of rows whose argmax posterior (lowest index on ties) equals the
// label.
double Accuracy(const GnbModel& model, const Matrix& features,
                std::span<const int> labels);

// Index of the largest entry, lowest index on ties.
int ArgMax(std::span<const double> row);

}  // namespace dpcp

#endif  // DPCP_NAIVE_BAYES_H_
