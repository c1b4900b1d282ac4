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

#ifndef DPCP_INTERNAL_RANK_H_
#define DPCP_INTERNAL_RANK_H_

#include <cmath>

namespace dpcp::internal {

// ceil(x) that treats values within a few ulps above an integer as that
// integer, so (1 - 0.05) * 20 yields 19 rather than 20.
inline long long CeilGuarded(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 8.0 * std::abs(x) * 1e-16) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::ceil(x));
}

}  // namespace dpcp::internal

#endif  // DPCP_INTERNAL_RANK_H_
