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

#include "dpcp/bounds.h"

#include <cmath>

#include "dpcp/errors.h"

namespace dpcp {

double RankErrorBound(double u, double rho, double beta) {
  if (!(u > 1.0) || !std::isfinite(u)) {
    throw DomainError("RankErrorBound: u must exceed 1");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("RankErrorBound: rho must be positive");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("RankErrorBound: beta must lie in (0, 1)");
  }
  const double calls = std::ceil(std::log2(u));
  return std::sqrt(calls / rho * std::log(2.0 * calls / beta));
}

CoverageBand CoverageBounds(double tau, int n_cal, double alpha) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw DomainError("CoverageBounds: tau must be nonnegative");
  }
  if (n_cal < 1) throw DomainError("CoverageBounds: n_cal must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("CoverageBounds: alpha must lie in (0, 1)");
  }
  const double denom = n_cal + 1.0;
  return {1.0 - alpha - tau / denom, 1.0 - alpha + (tau + 1.0) / denom};
}

}  // namespace dpcp
