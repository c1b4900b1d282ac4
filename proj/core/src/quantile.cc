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

#include <algorithm>
#include <cmath>
#include <string>

#include "dpcp/errors.h"
#include "dpcp/internal/rank.h"
#include "dpcp/privacy.h"

namespace dpcp {

std::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kNonprivate:
      return "nonprivate";
    case Mechanism::kPcoqs:
      return "pcoqs";
    case Mechanism::kExponq:
      return "exponq";
  }
  return "unknown";
}

Mechanism ParseMechanism(std::string_view name) {
  if (name == "nonprivate") return Mechanism::kNonprivate;
  if (name == "pcoqs") return Mechanism::kPcoqs;
  if (name == "exponq") return Mechanism::kExponq;
  throw DomainError("unknown mechanism '" + std::string(name) +
                    "' (expected nonprivate, pcoqs or exponq)");
}

int TargetRank(int n_cal, double alpha) {
  if (n_cal < 1) throw DomainError("TargetRank: n_cal must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("TargetRank: alpha must lie in (0, 1)");
  }
  const long long rank = internal::CeilGuarded((1.0 - alpha) * (n_cal + 1.0));
  return static_cast<int>(std::clamp<long long>(rank, 1, n_cal));
}

int MaxIterations(double lower, double upper, double precision) {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw DomainError("MaxIterations: need finite lower < upper");
  }
  if (!(precision > 0.0) || !std::isfinite(precision)) {
    throw DomainError("MaxIterations: precision must be positive");
  }
  const double width = upper - lower;
  if (width <= precision) return 0;
  int n = static_cast<int>(std::ceil(std::log2(width / precision)));
  n = std::max(n, 0);
  // log2 may be off by one near powers of two; settle on the exact minimum.
  while (std::ldexp(width, -n) > precision) ++n;
  while (n > 0 && std::ldexp(width, -(n - 1)) <= precision) --n;
  return n;
}

QuantileResult NonprivateQuantile(const ScoreSet& scores, double alpha) {
  const int rank = TargetRank(scores.size(), alpha);
  std::vector<double> values(scores.values().begin(), scores.values().end());
  auto nth = values.begin() + (rank - 1);
  std::nth_element(values.begin(), nth, values.end());

  QuantileResult result;
  result.threshold = *nth;
  result.mechanism = Mechanism::kNonprivate;
  result.target_rank = rank;
  return result;
}

QuantileResult PcoqsQuantile(const ScoreSet& scores, double alpha,
                             double precision, double rho, RandomStream& rng,
                             const SearchOptions& options) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("PcoqsQuantile: rho must be positive");
  }
  const double lower = scores.lower();
  const double upper = scores.upper();
  const int rank = TargetRank(scores.size(), alpha);
  const int iterations = MaxIterations(lower, upper, precision);
  const int calls =
      options.loop_bound == LoopBound::kInclusive ? iterations + 1 : iterations;

  NoiseSpec noise;
  if (calls > 0) {
    noise = options.noiseless ? NoiseSpec::Noiseless(calls)
                              : NoiseSpec::FromBudget(rho, calls);
  }

  QuantileResult result;
  result.mechanism = Mechanism::kPcoqs;
  result.target_rank = rank;
  result.iterations_used = iterations;
  result.noise_sd = noise.sd;
  if (options.record_trace) result.trace.reserve(calls);

  double left = lower;
  double right = upper;
  for (int i = 0; i < calls; ++i) {
    const double mid = (left + right) / 2.0;
    const double count = NoisyRangeCount(scores, lower, mid, noise, rng);
    ++result.noisy_calls;
    const bool below = count < rank;
    if (below) {
      left = mid + precision;
    } else {
      right = mid;
    }
    if (options.record_trace) result.trace.push_back({mid, count, below});
  }
  result.threshold = std::clamp((left + right) / 2.0, lower, upper);
  return result;
}

}  // namespace dpcp
