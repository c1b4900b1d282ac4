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

#include "dpcp/score_set.h"

#include <cmath>
#include <string>

#include "dpcp/errors.h"

namespace dpcp {

ScoreSet::ScoreSet(std::vector<double> values, double lower, double upper)
    : values_(std::move(values)), lower_(lower), upper_(upper) {
  if (!std::isfinite(lower_) || !std::isfinite(upper_) || !(lower_ < upper_)) {
    throw DomainError("ScoreSet: bounds must be finite with lower < upper");
  }
  if (values_.empty()) throw DomainError("ScoreSet: no scores");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= lower_ && v <= upper_)) {
      throw DomainError("ScoreSet: score " + std::to_string(i) + " = " +
                        std::to_string(v) + " outside [" +
                        std::to_string(lower_) + ", " + std::to_string(upper_) +
                        "]");
    }
  }
}

int ScoreSet::CountInRange(double lo, double hi) const {
  int count = 0;
  for (double v : values_) count += (v >= lo && v <= hi) ? 1 : 0;
  return count;
}

}  // namespace dpcp
