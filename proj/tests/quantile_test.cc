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

#include "dpcp/quantile.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpcp/bounds.h"
#include "dpcp/errors.h"

namespace dpcp {
namespace {

constexpr double kPrec = kDefaultPrecision;

std::vector<double> UniformScores(int n, RandomStream& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform();
  return v;
}

// Draws n scores on [0, 1] whose pairwise gaps all exceed min_gap.
std::vector<double> SeparatedScores(int n, double min_gap, RandomStream& rng) {
  while (true) {
    auto v = UniformScores(n, rng);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) ok = sorted[i] - sorted[i - 1] > min_gap;
    if (ok) return v;
  }
}

int CountAtMost(const std::vector<double>& v, double t) {
  return static_cast<int>(std::count_if(v.begin(), v.end(),
                                        [t](double x) { return x <= t; }));
}

TEST(TargetRankTest, Examples) {
  EXPECT_EQ(TargetRank(2400, 0.1), 2161);
  EXPECT_EQ(TargetRank(1, 0.5), 1);
  EXPECT_EQ(TargetRank(9, 0.1), 9);
  EXPECT_EQ(TargetRank(3, 0.5), 2);
  EXPECT_EQ(TargetRank(10000, 0.1), 9001);
}

TEST(TargetRankTest, ClampsToSampleSize) {
  // ceil(0.99 * 11) = 11 > 10.
  EXPECT_EQ(TargetRank(10, 0.01), 10);
  EXPECT_EQ(TargetRank(1, 0.1), 1);
}

TEST(TargetRankTest, DomainErrors) {
  EXPECT_THROW(TargetRank(10, 0.0), DomainError);
  EXPECT_THROW(TargetRank(10, 1.0), DomainError);
  EXPECT_THROW(TargetRank(0, 0.1), DomainError);
}

TEST(TargetRankTest, MonotoneNonincreasingInAlpha) {
  for (int n : {1, 9, 99, 2400, 3000}) {
    int prev = TargetRank(n, 0.001);
    for (int k = 2; k < 1000; ++k) {
      const int r = TargetRank(n, k / 1000.0);
      ASSERT_LE(r, prev) << n << " " << k;
      prev = r;
    }
  }
}

TEST(MaxIterationsTest, Examples) {
  EXPECT_EQ(MaxIterations(0.0, 1.0, 1e-10), 34);
  EXPECT_EQ(MaxIterations(0.0, 1.0, 1.0), 0);
  EXPECT_EQ(MaxIterations(0.0, 256.0, 1.0), 8);
  EXPECT_EQ(MaxIterations(0.0, 257.0, 1.0), 9);
  EXPECT_EQ(MaxIterations(-1.0, 1.0, 0.5), 2);
  EXPECT_THROW(MaxIterations(1.0, 1.0, 0.1), DomainError);
  EXPECT_THROW(MaxIterations(0.0, 1.0, 0.0), DomainError);
}

TEST(NonprivateQuantileTest, Examples) {
  EXPECT_EQ(NonprivateQuantile(ScoreSet({0.1, 0.2, 0.3}, 0, 1), 0.5).threshold,
            0.2);
  EXPECT_EQ(NonprivateQuantile(ScoreSet({0.7}, 0, 1), 0.1).threshold, 0.7);
  EXPECT_EQ(NonprivateQuantile(ScoreSet({0.3, 0.1, 0.2}, 0, 1), 0.5).threshold,
            0.2);
  const auto r = NonprivateQuantile(ScoreSet({0.3, 0.1, 0.2}, 0, 1), 0.5);
  EXPECT_EQ(r.target_rank, 2);
  EXPECT_EQ(r.mechanism, Mechanism::kNonprivate);
  EXPECT_EQ(r.iterations_used, 0);
}

TEST(ScoreSetTest, RejectsInvalid) {
  EXPECT_THROW(ScoreSet({}, 0, 1), DomainError);
  EXPECT_THROW(ScoreSet({0.5}, 1, 1), DomainError);
  EXPECT_THROW(ScoreSet({1.5}, 0, 1), DomainError);
  EXPECT_THROW(ScoreSet({NAN}, 0, 1), DomainError);
}

TEST(MechanismNameTest, RoundTrip) {
  for (auto m : {Mechanism::kNonprivate, Mechanism::kPcoqs, Mechanism::kExponq}) {
    EXPECT_EQ(ParseMechanism(MechanismName(m)), m);
  }
  EXPECT_THROW(ParseMechanism("laplace"), DomainError);
}

SearchOptions Noiseless() {
  SearchOptions o;
  o.noiseless = true;
  return o;
}

TEST(PcoqsTest, NoiselessThreeScores) {
  RandomStream rng(1);
  const auto r = PcoqsQuantile(ScoreSet({0.1, 0.2, 0.3}, 0, 1), 0.5, kPrec,
                               1.0, rng, Noiseless());
  EXPECT_NEAR(r.threshold, 0.2, kPrec);
  EXPECT_EQ(r.iterations_used, 34);
  EXPECT_EQ(r.noise_sd, 0.0);
}

// The search moves left to mid + precision, so the last bracket can sit up
// to one precision step away from the target score. Half a step more comes
// from returning the midpoint. 1.5 precision is the provable bound.
TEST(PcoqsTest, NoiselessWithinProvableBoundOfOracle) {
  RandomStream data(2);
  int within_precision = 0, total = 0;
  for (int n : {10, 100, 1000}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto v = SeparatedScores(n, 2 * kPrec, data);
      const ScoreSet s(v, 0.0, 1.0);
      RandomStream rng(trial);
      const double t = PcoqsQuantile(s, 0.1, kPrec, 1.0, rng, Noiseless()).threshold;
      const double q = NonprivateQuantile(s, 0.1).threshold;
      ASSERT_LE(std::abs(t - q), 1.5 * kPrec) << n << " " << trial;
      within_precision += std::abs(t - q) <= kPrec;
      ++total;
    }
  }
  // Most instances also land within one precision step.
  EXPECT_GT(within_precision, total * 8 / 10);
}

TEST(PcoqsTest, NoiselessHundredScoresNearRank91) {
  RandomStream data(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = SeparatedScores(100, 4 * kPrec, data);
    const ScoreSet s(v, 0.0, 1.0);
    RandomStream rng(trial);
    const double t = PcoqsQuantile(s, 0.1, kPrec, 1.0, rng, Noiseless()).threshold;
    std::sort(v.begin(), v.end());
    EXPECT_LE(std::abs(t - v[90]), 1.5 * kPrec);
    // Rank of the result is exact whenever it is no closer to a neighbour.
    EXPECT_EQ(CountAtMost(v, t + 2 * kPrec), 91);
  }
}

TEST(PcoqsTest, NoiselessCoarseGridIsExact) {
  // With a power-of-two precision every midpoint is exact.
  const ScoreSet s({0.125, 0.375, 0.625, 0.875}, 0.0, 1.0);
  RandomStream rng(0);
  const auto r = PcoqsQuantile(s, 0.5, 0x1.0p-20, 1.0, rng, Noiseless());
  EXPECT_EQ(r.target_rank, 3);
  EXPECT_NEAR(r.threshold, 0.625, 1.5 * 0x1.0p-20);
}

// Count the Gaussian draws consumed by replaying a fresh stream.
TEST(PcoqsTest, IssuesExactlyTheBudgetedCalls) {
  const ScoreSet s({0.2, 0.4, 0.6, 0.8}, 0.0, 1.0);
  for (auto bound : {LoopBound::kBudgetedCalls, LoopBound::kInclusive}) {
    SearchOptions o;
    o.loop_bound = bound;
    o.record_trace = true;
    RandomStream rng(9);
    const auto r = PcoqsQuantile(s, 0.1, kPrec, 0.1, rng, o);
    const int expected = bound == LoopBound::kInclusive ? 35 : 34;
    EXPECT_EQ(r.noisy_calls, expected);
    EXPECT_EQ(static_cast<int>(r.trace.size()), expected);
    EXPECT_NEAR(r.noise_sd * r.noise_sd * 2 * 0.1, expected, 1e-9);

    RandomStream replay(9);
    for (int i = 0; i < expected; ++i) replay.Gaussian();
    EXPECT_EQ(rng.Gaussian(), replay.Gaussian());
  }
}

TEST(PcoqsTest, ZeroIterationsReturnsMidpoint) {
  const ScoreSet s({0.25}, 0.0, 1.0);
  RandomStream rng(1);
  const auto r = PcoqsQuantile(s, 0.1, 1.0, 1.0, rng);
  EXPECT_EQ(r.noisy_calls, 0);
  EXPECT_EQ(r.threshold, 0.5);
}

TEST(PcoqsTest, TraceFollowsBranchRule) {
  RandomStream data(4);
  const ScoreSet s(UniformScores(500, data), 0.0, 1.0);
  SearchOptions o;
  o.record_trace = true;
  RandomStream rng(5);
  const auto r = PcoqsQuantile(s, 0.1, kPrec, 0.1, rng, o);
  double left = 0.0, right = 1.0;
  for (const auto& step : r.trace) {
    ASSERT_EQ(step.mid, (left + right) / 2);
    ASSERT_EQ(step.moved_left_bound, step.noisy_count < r.target_rank);
    if (step.moved_left_bound) left = step.mid + kPrec; else right = step.mid;
  }
  EXPECT_EQ(r.threshold, std::clamp((left + right) / 2, 0.0, 1.0));
}

TEST(PcoqsTest, DeterministicUnderSeed) {
  RandomStream data(6);
  const ScoreSet s(UniformScores(300, data), 0.0, 1.0);
  RandomStream a(42), b(42), c(43);
  const double ta = PcoqsQuantile(s, 0.1, kPrec, 0.1, a).threshold;
  EXPECT_EQ(ta, PcoqsQuantile(s, 0.1, kPrec, 0.1, b).threshold);
  EXPECT_NE(ta, PcoqsQuantile(s, 0.1, kPrec, 0.1, c).threshold);
}

TEST(PcoqsTest, OutputStaysInBounds) {
  RandomStream data(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(5);
    // Scores piled at either end push the search against the bounds.
    for (double& x : v) x = trial % 3 == 0 ? 1.0 : trial % 3 == 1 ? 0.0 : data.Uniform();
    const ScoreSet s(v, 0.0, 1.0);
    RandomStream rng(trial);
    const double t = PcoqsQuantile(s, 0.05, kPrec, 0.01, rng).threshold;
    ASSERT_GE(t, 0.0);
    ASSERT_LE(t, 1.0);
    RandomStream rng2(trial);
    const double t2 = PcoqsQuantile(s, 0.05, kPrec, 1.0, rng2, Noiseless()).threshold;
    ASSERT_GE(t2, 0.0);
    ASSERT_LE(t2, 1.0);
  }
  const ScoreSet wide({-3.0, 2.0, 4.5}, -5.0, 5.0);
  RandomStream rng(0);
  const double t = PcoqsQuantile(wide, 0.5, 1e-6, 0.5, rng).threshold;
  EXPECT_GE(t, -5.0);
  EXPECT_LE(t, 5.0);
}

TEST(PcoqsTest, SharedNoiseRankMonotoneInAlpha) {
  RandomStream data(8);
  const ScoreSet s(UniformScores(400, data), 0.0, 1.0);
  int prev_rank = 1 << 30;
  double prev_t = 2.0;
  for (double alpha : {0.01, 0.05, 0.1, 0.2, 0.5, 0.9}) {
    RandomStream rng(10);
    const auto r = PcoqsQuantile(s, alpha, kPrec, 1.0, rng, Noiseless());
    EXPECT_LE(r.target_rank, prev_rank);
    EXPECT_LE(r.threshold, prev_t);
    prev_rank = r.target_rank;
    prev_t = r.threshold;
  }
}

TEST(PcoqsTest, SingleScoreRankErrorWithinTau) {
  const ScoreSet s({0.5}, 0.0, 1.0);
  const double tau = RankErrorBound(1e10, 0.1, 0.01);
  int ok = 0;
  for (int seed = 0; seed < 1000; ++seed) {
    RandomStream rng(seed);
    const auto r = PcoqsQuantile(s, 0.1, kPrec, 0.1, rng);
    const int card = r.threshold >= 0.5 ? 1 : 0;
    ok += std::abs(card - r.target_rank) <= tau;
  }
  EXPECT_GE(ok, 990);
}

TEST(PcoqsTest, RankErrorBoundMonteCarlo) {
  constexpr int kRuns = 2000;
  constexpr int kN = 3000;
  RandomStream data(11);
  auto v = UniformScores(kN, data);
  const ScoreSet s(v, 0.0, 1.0);
  std::sort(v.begin(), v.end());
  const int r = TargetRank(kN, 0.1);
  std::vector<int> errors;
  errors.reserve(kRuns);
  for (int run = 0; run < kRuns; ++run) {
    RandomStream rng(1000 + run, 5);
    const double t = PcoqsQuantile(s, 0.1, kPrec, 0.1, rng).threshold;
    const int card = static_cast<int>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
    errors.push_back(std::abs(card - r));
  }
  for (double beta : {0.05, 0.01}) {
    const double tau = RankErrorBound(1e10, 0.1, beta);
    const auto bad = std::count_if(errors.begin(), errors.end(),
                                   [tau](int e) { return e > tau; });
    EXPECT_LE(static_cast<double>(bad) / kRuns,
              beta + 3 * std::sqrt(beta * (1 - beta) / kRuns));
  }
}

TEST(PcoqsTest, DomainErrors) {
  const ScoreSet s({0.5}, 0.0, 1.0);
  RandomStream rng(1);
  EXPECT_THROW(PcoqsQuantile(s, 0.1, kPrec, 0.0, rng), DomainError);
  EXPECT_THROW(PcoqsQuantile(s, 0.0, kPrec, 1.0, rng), DomainError);
  EXPECT_THROW(PcoqsQuantile(s, 0.1, 0.0, 1.0, rng), DomainError);
}

}  // namespace
}  // namespace dpcp
