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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dpcp/errors.h"
#include "dpcp/internal/rank.h"
#include "dpcp/quantile.h"

namespace dpcp {
namespace {

int InflatedRank(int n, double alpha, double inflation) {
  const long long rank =
      internal::CeilGuarded((1.0 - alpha + inflation) * (n + 1.0));
  return static_cast<int>(std::clamp<long long>(rank, 1, n));
}

// Sampling distribution of the exponential mechanism for one
// (n_bins, inflation) setting.
class EdgeDistribution {
 public:
  EdgeDistribution(const std::vector<double>& sorted, double lower,
                   double upper, int n_bins, int rank, double epsilon)
      : edges_(n_bins), counts_(n_bins), cumulative_(n_bins) {
    const auto n = sorted.size();
    std::size_t below = 0;
    int best_utility = std::numeric_limits<int>::min();
    for (int j = 0; j < n_bins; ++j) {
      edges_[j] = j + 1 == n_bins
                      ? upper
                      : lower + (upper - lower) * (j + 1) / n_bins;
      while (below < n && sorted[below] <= edges_[j]) ++below;
      counts_[j] = static_cast<int>(below);
      best_utility = std::max(best_utility, -std::abs(counts_[j] - rank));
    }
    double total = 0.0;
    for (int j = 0; j < n_bins; ++j) {
      const int utility = -std::abs(counts_[j] - rank);
      total += std::exp(epsilon * (utility - best_utility) / 2.0);
      cumulative_[j] = total;
    }
  }

  int Sample(RandomStream& rng) const {
    const double x = rng.Uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    const auto index = static_cast<int>(it - cumulative_.begin());
    return std::min(index, static_cast<int>(cumulative_.size()) - 1);
  }

  double edge(int j) const { return edges_[j]; }
  int count(int j) const { return counts_[j]; }

 private:
  std::vector<double> edges_;
  std::vector<int> counts_;
  std::vector<double> cumulative_;
};

void CheckExponqArgs(double alpha, double epsilon) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("exponq: alpha must lie in (0, 1)");
  }
  if (!(epsilon > 0.0) || std::isnan(epsilon)) {
    throw DomainError("exponq: epsilon must be positive");
  }
}

std::vector<double> Sorted(const ScoreSet& scores) {
  std::vector<double> sorted(scores.values().begin(), scores.values().end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

QuantileResult SampleEdge(const std::vector<double>& sorted,
                          const ScoreSet& scores, double alpha, double epsilon,
                          int n_bins, double inflation, RandomStream& rng) {
  if (n_bins < 2) throw DomainError("exponq: n_bins must be >= 2");
  if (!(inflation >= 0.0)) throw DomainError("exponq: inflation must be >= 0");
  const int rank = InflatedRank(scores.size(), alpha, inflation);
  const EdgeDistribution dist(sorted, scores.lower(), scores.upper(), n_bins,
                              rank, epsilon);
  QuantileResult result;
  result.threshold = dist.edge(dist.Sample(rng));
  result.mechanism = Mechanism::kExponq;
  result.target_rank = rank;
  result.n_bins = n_bins;
  result.inflation = inflation;
  return result;
}

}  // namespace

QuantileResult ExponqQuantile(const ScoreSet& scores, double alpha,
                              double epsilon, int n_bins, double inflation,
                              RandomStream& rng) {
  CheckExponqArgs(alpha, epsilon);
  return SampleEdge(Sorted(scores), scores, alpha, epsilon, n_bins, inflation,
                    rng);
}

namespace {

ExponqTuning TuneSorted(const std::vector<double>& sorted,
                        const ScoreSet& scores, double alpha, double epsilon,
                        const ExponqTuneOptions& options, RandomStream& rng) {
  CheckExponqArgs(alpha, epsilon);
  if (options.bin_grid.empty() || options.inflation_grid.empty()) {
    throw DomainError("ExponqTune: grids must be nonempty");
  }
  if (options.draws < 1) throw DomainError("ExponqTune: draws must be >= 1");
  if (!(options.tail >= 0.0 && options.tail < 1.0)) {
    throw DomainError("ExponqTune: tail must lie in [0, 1)");
  }
  for (int bins : options.bin_grid) {
    if (bins < 2) throw DomainError("ExponqTune: bin counts must be >= 2");
  }
  for (double inflation : options.inflation_grid) {
    if (!(inflation >= 0.0)) {
      throw DomainError("ExponqTune: inflations must be >= 0");
    }
  }

  const int n = scores.size();
  // Draws whose calibration coverage count/n falls below 1 - alpha.
  const long long covered_count = internal::CeilGuarded((1.0 - alpha) * n);
  const auto allowed_shortfalls =
      static_cast<int>(std::floor(options.tail * options.draws));
  const double max_inflation = *std::max_element(
      options.inflation_grid.begin(), options.inflation_grid.end());

  ExponqTuning best;
  ExponqTuning fallback;
  double fallback_shortfall = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (double inflation : options.inflation_grid) {
    const int rank = InflatedRank(n, alpha, inflation);
    for (int bins : options.bin_grid) {
      const EdgeDistribution dist(sorted, scores.lower(), scores.upper(), bins,
                                  rank, epsilon);
      double threshold_sum = 0.0;
      int shortfalls = 0;
      for (int d = 0; d < options.draws; ++d) {
        const int j = dist.Sample(rng);
        threshold_sum += dist.edge(j);
        shortfalls += dist.count(j) < covered_count ? 1 : 0;
      }
      ExponqTuning point;
      point.n_bins = bins;
      point.inflation = inflation;
      point.mean_threshold = threshold_sum / options.draws;
      point.tail_coverage =
          1.0 - static_cast<double>(shortfalls) / options.draws;
      point.feasible = shortfalls <= allowed_shortfalls;

      if (point.feasible &&
          (!have_best || point.mean_threshold < best.mean_threshold)) {
        best = point;
        have_best = true;
      }
      if (inflation == max_inflation && shortfalls < fallback_shortfall) {
        fallback = point;
        fallback_shortfall = shortfalls;
      }
    }
  }
  return have_best ? best : fallback;
}

}  // namespace

ExponqTuning ExponqTune(const ScoreSet& scores, double alpha, double epsilon,
                        const ExponqTuneOptions& options, RandomStream& rng) {
  return TuneSorted(Sorted(scores), scores, alpha, epsilon, options, rng);
}

QuantileResult TunedExponqQuantile(const ScoreSet& scores, double alpha,
                                   double epsilon,
                                   const ExponqTuneOptions& options,
                                   RandomStream& rng) {
  const std::vector<double> sorted = Sorted(scores);
  const ExponqTuning tuning =
      TuneSorted(sorted, scores, alpha, epsilon, options, rng);
  return SampleEdge(sorted, scores, alpha, epsilon, tuning.n_bins,
                    tuning.inflation, rng);
}

}  // namespace dpcp
