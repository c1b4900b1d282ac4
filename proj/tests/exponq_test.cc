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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpcp/conformal.h"
#include "dpcp/errors.h"
#include "dpcp/naive_bayes.h"
#include "dpcp/quantile.h"
#include "dpcp/synthetic.h"

namespace dpcp {
namespace {

std::vector<double> UniformScores(int n, RandomStream& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform();
  return v;
}

TEST(ExponqTest, LargeEpsilonPicksExactEdge) {
  const ScoreSet s({0.1, 0.2, 0.3}, 0.0, 1.0);
  for (int seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const auto r = ExponqQuantile(s, 0.5, 1e6, 10, 0.0, rng);
    EXPECT_EQ(r.threshold, 0.2);
    EXPECT_EQ(r.target_rank, 2);
    EXPECT_EQ(r.n_bins, 10);
    EXPECT_EQ(r.mechanism, Mechanism::kExponq);
  }
}

TEST(ExponqTest, LargeEpsilonWithinOneBinOfNonprivate) {
  // Evenly spread scores on [0, 1], one per bin.
  std::vector<double> v(1000);
  for (int i = 0; i < 1000; ++i) v[i] = (i + 0.5) / 1000;
  const ScoreSet s(v, 0.0, 1.0);
  const double q = NonprivateQuantile(s, 0.1).threshold;
  for (int seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const double t = ExponqQuantile(s, 0.1, 1e6, 1000, 0.0, rng).threshold;
    EXPECT_LE(std::abs(t - q), 1.0 / 1000 + 1e-15);
  }
}

// On an i.i.d. sample every edge between two order statistics has the same
// count, so the sharp limit is the set of edges with the best count rather
// than a fixed distance from the empirical quantile.
TEST(ExponqTest, LargeEpsilonPicksMaximumUtilityEdge) {
  RandomStream data(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto v = UniformScores(1000, data);
    const ScoreSet s(v, 0.0, 1.0);
    RandomStream rng(trial);
    const auto r = ExponqQuantile(s, 0.1, 1e6, 1000, 0.0, rng);
    int best = 1 << 30;
    for (int j = 1; j <= 1000; ++j) {
      best = std::min(best, std::abs(s.CountInRange(0.0, j / 1000.0) - r.target_rank));
    }
    EXPECT_EQ(std::abs(s.CountInRange(0.0, r.threshold) - r.target_rank), best);
  }
}

TEST(ExponqTest, OutputIsAnEdgeInsideBounds) {
  RandomStream data(2);
  const ScoreSet s(UniformScores(50, data), -2.0, 3.0);
  for (int seed = 0; seed < 200; ++seed) {
    RandomStream rng(seed);
    const double t = ExponqQuantile(s, 0.2, 0.05, 7, 0.02, rng).threshold;
    EXPECT_GT(t, -2.0);
    EXPECT_LE(t, 3.0);
    const double k = (t + 2.0) / 5.0 * 7.0;
    EXPECT_NEAR(k, std::round(k), 1e-9);
  }
}

TEST(ExponqTest, LastEdgeIsUpperBound) {
  // At tiny epsilon the edge distribution is near uniform, so the last edge
  // gets sampled; it must equal the upper bound exactly.
  const ScoreSet s({0.3}, 0.0, 0.7);
  bool saw_upper = false;
  for (int seed = 0; seed < 200 && !saw_upper; ++seed) {
    RandomStream rng(seed);
    saw_upper = ExponqQuantile(s, 0.5, 1e-9, 3, 0.0, rng).threshold == 0.7;
  }
  EXPECT_TRUE(saw_upper);
}

TEST(ExponqTest, DeterministicUnderSeed) {
  RandomStream data(3);
  const ScoreSet s(UniformScores(500, data), 0.0, 1.0);
  RandomStream a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    ASSERT_EQ(ExponqQuantile(s, 0.1, 1.0, 100, 0.01, a).threshold,
              ExponqQuantile(s, 0.1, 1.0, 100, 0.01, b).threshold);
  }
}

TEST(ExponqTest, InflationRaisesTargetRank) {
  const ScoreSet s(std::vector<double>(100, 0.5), 0.0, 1.0);
  RandomStream rng(1);
  EXPECT_EQ(ExponqQuantile(s, 0.1, 1.0, 10, 0.0, rng).target_rank, 91);
  EXPECT_EQ(ExponqQuantile(s, 0.1, 1.0, 10, 0.05, rng).target_rank, 96);
  EXPECT_EQ(ExponqQuantile(s, 0.1, 1.0, 10, 0.5, rng).target_rank, 100);
}

TEST(ExponqTest, DomainErrors) {
  const ScoreSet s({0.5}, 0.0, 1.0);
  RandomStream rng(1);
  EXPECT_THROW(ExponqQuantile(s, 0.1, 0.0, 10, 0.0, rng), DomainError);
  EXPECT_THROW(ExponqQuantile(s, 1.0, 1.0, 10, 0.0, rng), DomainError);
  EXPECT_THROW(ExponqQuantile(s, 0.1, 1.0, 1, 0.0, rng), DomainError);
  EXPECT_THROW(ExponqQuantile(s, 0.1, 1.0, 10, -0.1, rng), DomainError);
  ExponqTuneOptions empty;
  empty.bin_grid.clear();
  EXPECT_THROW(ExponqTune(s, 0.1, 1.0, empty, rng), DomainError);
}

TEST(ExponqTuneTest, SingletonGridReturnsThatPair) {
  RandomStream data(4);
  const ScoreSet s(UniformScores(300, data), 0.0, 1.0);
  ExponqTuneOptions o;
  o.bin_grid = {250};
  o.inflation_grid = {0.03};
  o.draws = 50;
  RandomStream rng(1);
  const auto t = ExponqTune(s, 0.1, 1.0, o, rng);
  EXPECT_EQ(t.n_bins, 250);
  EXPECT_EQ(t.inflation, 0.03);
}

TEST(ExponqTuneTest, NoNoiseNeedsNoInflation) {
  // Evenly spaced scores: every bin edge of the default grid has a count
  // level close to the target rank.
  std::vector<double> v(2400);
  for (int i = 0; i < 2400; ++i) v[i] = (i + 0.5) / 2400;
  const ScoreSet s(v, 0.0, 1.0);
  ExponqTuneOptions o;
  o.inflation_grid = {0.0, 0.05};
  o.draws = 200;
  RandomStream rng(2);
  const auto t = ExponqTune(s, 0.1, 1e6, o, rng);
  EXPECT_TRUE(t.feasible);
  EXPECT_EQ(t.inflation, 0.0);
  EXPECT_EQ(t.tail_coverage, 1.0);
}

TEST(ExponqTuneTest, InfeasibleFallsBackToLargestInflation) {
  RandomStream data(5);
  const ScoreSet s(UniformScores(20, data), 0.0, 1.0);
  ExponqTuneOptions o;
  o.bin_grid = {100, 500};
  o.inflation_grid = {0.0, 0.01};
  o.draws = 500;
  o.tail = 0.0;
  RandomStream rng(3);
  const auto t = ExponqTune(s, 0.1, 1e-3, o, rng);
  EXPECT_FALSE(t.feasible);
  EXPECT_EQ(t.inflation, 0.01);
  EXPECT_LT(t.tail_coverage, 1.0);
}

TEST(ExponqTuneTest, DefaultGridsCoverSyntheticScores) {
  SyntheticSpec spec;
  RandomStream data_rng(21), split_rng(22);
  const DataSplit parts = Split(Generate(spec, data_rng), spec.split_fractions,
                                split_rng);
  ASSERT_EQ(parts.calibration.size(), 2400u);
  const GnbModel model = FitGnb(parts.train.features, parts.train.labels);
  const ScoreSet cal = HingeScores(PredictProba(model, parts.calibration.features),
                                   parts.calibration.labels);
  const ScoreSet test = HingeScores(PredictProba(model, parts.test.features),
                                    parts.test.labels);
  std::vector<double> test_sorted(test.values().begin(), test.values().end());
  std::sort(test_sorted.begin(), test_sorted.end());

  RandomStream rng(23);
  constexpr int kDraws = 1000;
  double coverage = 0.0;
  for (int d = 0; d < kDraws; ++d) {
    const double t = TunedExponqQuantile(cal, 0.1, 1.0, {}, rng).threshold;
    coverage += static_cast<double>(std::upper_bound(test_sorted.begin(),
                                                     test_sorted.end(), t) -
                                    test_sorted.begin()) /
                test_sorted.size();
  }
  EXPECT_GE(coverage / kDraws, 0.90);
}

}  // namespace
}  // namespace dpcp
