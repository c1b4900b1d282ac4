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

#include "dpcp/naive_bayes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dpcp/errors.h"

namespace dpcp {
namespace {

struct SufficientStats {
  std::vector<double> counts;  // [class]
  Matrix sums;                 // [class][feature]
  Matrix sums_sq;              // [class][feature]
};

int NumClasses(std::span<const int> labels) {
  int max_label = -1;
  for (int y : labels) {
    if (y < 0) throw DomainError("naive bayes: negative label");
    max_label = std::max(max_label, y);
  }
  return max_label + 1;
}

void CheckShapes(const Matrix& features, std::span<const int> labels) {
  if (features.rows() != labels.size()) {
    throw DomainError("naive bayes: feature rows and labels differ in size");
  }
  if (features.cols() < 1) throw DomainError("naive bayes: no features");
  if (labels.empty()) throw DomainError("naive bayes: no rows");
}

SufficientStats Accumulate(const Matrix& features, std::span<const int> labels,
                           int k, std::span<const FeatureBound> clip) {
  const std::size_t d = features.cols();
  SufficientStats stats{std::vector<double>(k, 0.0), Matrix(k, d),
                        Matrix(k, d)};
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const int y = labels[i];
    stats.counts[y] += 1.0;
    const auto row = features.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      double x = row[j];
      if (!clip.empty()) x = std::clamp(x, clip[j].lo, clip[j].hi);
      stats.sums(y, j) += x;
      stats.sums_sq(y, j) += x * x;
    }
  }
  return stats;
}

}  // namespace

GnbModel FitGnb(const Matrix& features, std::span<const int> labels) {
  CheckShapes(features, labels);
  const int k = NumClasses(labels);
  const std::size_t d = features.cols();
  std::vector<int> counts(k, 0);
  for (int y : labels) ++counts[y];
  for (int c = 0; c < k; ++c) {
    if (counts[c] < 2) {
      throw DomainError("FitGnb: class " + std::to_string(c) + " has " +
                        std::to_string(counts[c]) + " rows, need >= 2");
    }
  }

  GnbModel model;
  model.priors.resize(k);
  model.means = Matrix(k, d);
  model.variances = Matrix(k, d);
  // Two-pass mean/variance for accuracy.
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto row = features.row(i);
    for (std::size_t j = 0; j < d; ++j) model.means(labels[i], j) += row[j];
  }
  for (int c = 0; c < k; ++c) {
    model.priors[c] = static_cast<double>(counts[c]) / labels.size();
    for (std::size_t j = 0; j < d; ++j) model.means(c, j) /= counts[c];
  }
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto row = features.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = row[j] - model.means(labels[i], j);
      model.variances(labels[i], j) += dev * dev;
    }
  }
  for (int c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < d; ++j) {
      model.variances(c, j) =
          std::max(model.variances(c, j) / counts[c], kVarianceFloor);
    }
  }
  return model;
}

GnbModel FitDpGnb(const Matrix& features, std::span<const int> labels,
                  double epsilon_f, std::span<const FeatureBound> feature_bounds,
                  RandomStream& rng) {
  CheckShapes(features, labels);
  if (!(epsilon_f > 0.0) || !std::isfinite(epsilon_f)) {
    throw DomainError("FitDpGnb: epsilon_f must be positive");
  }
  const std::size_t d = features.cols();
  if (feature_bounds.size() != d) {
    throw DomainError("FitDpGnb: need one bound per feature");
  }
  // Replacing one row can move it between classes, so each statistic family
  // changes in two places: counts by 1 + 1, sums by |x| + |x'| and sums of
  // squares by x^2 + x'^2.
  const double count_sensitivity = 2.0;
  double sum_sensitivity = 0.0;
  double sq_sensitivity = 0.0;
  for (const FeatureBound& b : feature_bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
      throw DomainError("FitDpGnb: feature bounds must be finite with lo < hi");
    }
    const double extent = std::max(std::abs(b.lo), std::abs(b.hi));
    sum_sensitivity += 2.0 * extent;
    sq_sensitivity += 2.0 * extent * extent;
  }

  const int k = NumClasses(labels);
  SufficientStats stats = Accumulate(features, labels, k, feature_bounds);
  const double share = epsilon_f / 3.0;
  for (int c = 0; c < k; ++c) {
    stats.counts[c] += rng.Laplace(count_sensitivity / share);
    for (std::size_t j = 0; j < d; ++j) {
      stats.sums(c, j) += rng.Laplace(sum_sensitivity / share);
    }
    for (std::size_t j = 0; j < d; ++j) {
      stats.sums_sq(c, j) += rng.Laplace(sq_sensitivity / share);
    }
  }

  GnbModel model;
  model.is_private = true;
  model.epsilon_f = epsilon_f;
  model.priors.resize(k);
  model.means = Matrix(k, d);
  model.variances = Matrix(k, d);
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    stats.counts[c] = std::max(stats.counts[c], 1.0);
    total += stats.counts[c];
  }
  for (int c = 0; c < k; ++c) {
    const double n = stats.counts[c];
    model.priors[c] = n / total;
    for (std::size_t j = 0; j < d; ++j) {
      const double mean = std::clamp(stats.sums(c, j) / n, feature_bounds[j].lo,
                                     feature_bounds[j].hi);
      model.means(c, j) = mean;
      model.variances(c, j) =
          std::max(stats.sums_sq(c, j) / n - mean * mean, kVarianceFloor);
    }
  }
  return model;
}

Matrix PredictProba(const GnbModel& model, const Matrix& features) {
  const int k = model.num_classes();
  const std::size_t d = features.cols();
  if (static_cast<int>(d) != model.num_features()) {
    throw DomainError("PredictProba: model has " +
                      std::to_string(model.num_features()) +
                      " features, input has " + std::to_string(d));
  }
  // Per-class constant: log prior - 0.5 * sum_j log(2 pi var_cj).
  std::vector<double> log_norm(k);
  Matrix inv_var(k, d);
  for (int c = 0; c < k; ++c) {
    double acc = std::log(model.priors[c]);
    for (std::size_t j = 0; j < d; ++j) {
      const double var = model.variances(c, j);
      acc -= 0.5 * std::log(2.0 * std::numbers::pi * var);
      inv_var(c, j) = 1.0 / var;
    }
    log_norm[c] = acc;
  }

  Matrix proba(features.rows(), k);
  std::vector<double> joint(k);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto x = features.row(i);
    double best = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      double quad = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double dev = x[j] - model.means(c, j);
        quad += dev * dev * inv_var(c, j);
      }
      joint[c] = log_norm[c] - 0.5 * quad;
      best = std::max(best, joint[c]);
    }
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
      joint[c] = std::exp(joint[c] - best);
      total += joint[c];
    }
    for (int c = 0; c < k; ++c) proba(i, c) = joint[c] / total;
  }
  return proba;
}

int ArgMax(std::span<const double> row) {
  int best = 0;
  for (std::size_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = static_cast<int>(c);
  }
  return best;
}

double Accuracy(const GnbModel& model, const Matrix& features,
                std::span<const int> labels) {
  if (features.rows() != labels.size() || labels.empty()) {
    throw DomainError("Accuracy: need matching, nonempty features and labels");
  }
  const Matrix proba = PredictProba(model, features);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    correct += ArgMax(proba.row(i)) == labels[i] ? 1 : 0;
  }
  return static_cast<double>(correct) / labels.size();
}

}  // namespace dpcp
