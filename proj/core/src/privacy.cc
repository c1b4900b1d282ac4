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

#include "dpcp/privacy.h"

#include <cmath>

#include "dpcp/errors.h"

namespace dpcp {

NoiseSpec NoiseSpec::FromBudget(double rho, int calls) {
  return {PerCallNoiseSd(rho, calls), calls};
}

NoiseSpec NoiseSpec::Noiseless(int calls) {
  if (calls < 1) throw DomainError("NoiseSpec: calls must be >= 1");
  return {0.0, calls};
}

double RhoToEpsilon(double rho, double dp_delta) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("RhoToEpsilon: rho must be positive");
  }
  if (!(dp_delta > 0.0 && dp_delta < 1.0)) {
    throw DomainError("RhoToEpsilon: dp_delta must lie in (0, 1)");
  }
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / dp_delta));
}

double EpsilonToRho(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("EpsilonToRho: epsilon must be positive");
  }
  return epsilon;
}

double PerCallNoiseSd(double rho, int n_calls) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("PerCallNoiseSd: rho must be positive");
  }
  if (n_calls < 1) throw DomainError("PerCallNoiseSd: n_calls must be >= 1");
  return std::sqrt(static_cast<double>(n_calls) / (2.0 * rho));
}

double NoisyRangeCount(const ScoreSet& scores, double lower, double upper,
                       const NoiseSpec& noise, RandomStream& rng) {
  if (lower > upper) throw DomainError("NoisyRangeCount: lower > upper");
  if (!(noise.sd >= 0.0)) throw DomainError("NoisyRangeCount: negative sd");
  const double count = scores.CountInRange(lower, upper);
  if (noise.sd == 0.0) return count;
  return count + noise.sd * rng.Gaussian();
}

}  // namespace dpcp
