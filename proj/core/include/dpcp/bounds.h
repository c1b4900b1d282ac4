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

#ifndef DPCP_BOUNDS_H_
#define DPCP_BOUNDS_H_

namespace dpcp {

// Rank error tau of the noisy binary search, holding with probability at
// least 1 - beta:
//
//   tau = sqrt((ceil(log2 u) / rho) * ln(2 ceil(log2 u) / beta)),
//
// where u = (upper - lower) / precision. Requires u > 1, rho > 0 and
// beta in (0, 1).
double RankErrorBound(double u, double rho, double beta);

struct CoverageBand {
  double lower = 0.0;
  double upper = 0.0;
};

// Marginal coverage band of a threshold with rank error tau:
// [1 - alpha - tau / (n + 1), 1 - alpha + (tau + 1) / (n + 1)].
CoverageBand CoverageBounds(double tau, int n_cal, double alpha);

}  // namespace dpcp

#endif  // DPCP_BOUNDS_H_
