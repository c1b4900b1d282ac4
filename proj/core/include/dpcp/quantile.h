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

#ifndef DPCP_QUANTILE_H_
#define DPCP_QUANTILE_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "dpcp/random.h"
#include "dpcp/score_set.h"

namespace dpcp {

enum class Mechanism { kNonprivate, kPcoqs, kExponq };

std::string_view MechanismName(Mechanism mechanism);
// Accepts "nonprivate", "pcoqs" and "exponq". Throws DomainError otherwise.
Mechanism ParseMechanism(std::string_view name);

// One iteration of the private binary search.
struct SearchStep {
  double mid = 0.0;
  double noisy_count = 0.0;
  // True when the noisy count fell below the target rank and the search moved
  // right (left <- mid + precision).
  bool moved_left_bound = false;
};

struct QuantileResult {
  double threshold = 0.0;
  Mechanism mechanism = Mechanism::kNonprivate;
  int target_rank = 0;
  // ceil(log2((upper - lower) / precision)) for the binary search, else 0.
  int iterations_used = 0;
  // Range-count queries actually issued.
  int noisy_calls = 0;
  double noise_sd = 0.0;
  // Exponential mechanism only.
  int n_bins = 0;
  double inflation = 0.0;
  // Filled when SearchOptions::record_trace is set.
  std::vector<SearchStep> trace;
};

// ceil((1 - alpha)(n_cal + 1)), clamped to n_cal. For small calibration sets
// the unclamped rank can be n_cal + 1; clamping selects the largest score.
int TargetRank(int n_cal, double alpha);

// Smallest N >= 0 with (upper - lower) / 2^N <= precision.
int MaxIterations(double lower, double upper, double precision);

// r-th smallest score, r = TargetRank(n, alpha).
QuantileResult NonprivateQuantile(const ScoreSet& scores, double alpha);

enum class LoopBound {
  // Exactly N range counts, each at per-call budget rho / N.
  kBudgetedCalls,
  // "while i <= N": N + 1 range counts, each at rho / (N + 1).
  kInclusive,
};

struct SearchOptions {
  LoopBound loop_bound = LoopBound::kBudgetedCalls;
  // Exact counts (sd = 0). Testing only; the result is not private.
  bool noiseless = false;
  bool record_trace = false;
};

inline constexpr double kDefaultPrecision = 1e-10;

// Private quantile by noisy binary search over [scores.lower(), scores.upper()].
//
// Each iteration sets mid = (left + right) / 2, draws a noisy count of the
// scores in [lower, mid], and moves left to mid + precision when the count is
// below the target rank r, otherwise right to mid. The released threshold is
// (left + right) / 2, clamped into the score bounds. Total cost is rho-zCDP.
//
// With noiseless counts the result lies within 1.5 * precision of the r-th
// score: the r-th score stays in (left - precision, right] and the final
// width is at most precision.
QuantileResult PcoqsQuantile(const ScoreSet& scores, double alpha,
                             double precision, double rho, RandomStream& rng,
                             const SearchOptions& options = {});

// Exponential mechanism over the upper edges of `n_bins` uniform bins.
// Utility of edge e is -|card{s <= e} - r_inflated| with
// r_inflated = min(n, ceil((1 - alpha + inflation)(n + 1))); the edge is drawn
// with probability proportional to exp(epsilon * utility / 2).
QuantileResult ExponqQuantile(const ScoreSet& scores, double alpha,
                              double epsilon, int n_bins, double inflation,
                              RandomStream& rng);

struct ExponqTuneOptions {
  std::vector<int> bin_grid = {100, 500, 1000, 5000};
  std::vector<double> inflation_grid = {0.0, 0.01, 0.02, 0.05};
  // Mechanism draws per grid point.
  int draws = 1000;
  // A grid point is feasible when at most this fraction of its draws has
  // calibration coverage card{s <= t} / n below 1 - alpha.
  double tail = 0.01;
};

struct ExponqTuning {
  int n_bins = 0;
  double inflation = 0.0;
  // False when no grid point met the coverage target; the returned point is
  // then the most conservative one (largest inflation, best tail coverage).
  bool feasible = false;
  double mean_threshold = 0.0;
  // Fraction of tuning draws whose calibration coverage met 1 - alpha.
  double tail_coverage = 0.0;
};

// Grid search for the (n_bins, inflation) pair with the smallest mean
// threshold among the feasible ones. Ties go to the earlier grid point,
// scanning inflation-major in grid order.
ExponqTuning ExponqTune(const ScoreSet& scores, double alpha, double epsilon,
                        const ExponqTuneOptions& options, RandomStream& rng);

// ExponqTune followed by one fresh ExponqQuantile draw at the tuned point.
QuantileResult TunedExponqQuantile(const ScoreSet& scores, double alpha,
                                   double epsilon,
                                   const ExponqTuneOptions& options,
                                   RandomStream& rng);

}  // namespace dpcp

#endif  // DPCP_QUANTILE_H_
