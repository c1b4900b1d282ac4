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

#ifndef DPCP_SCORE_SET_H_
#define DPCP_SCORE_SET_H_

#include <span>
#include <vector>

namespace dpcp {

// Non-conformity scores of a calibration set together with the public bounds
// [lower, upper] that every score is known to lie in.
//
// Construction rejects empty inputs, lower >= upper, non-finite values and
// any score outside the bounds (no silent clipping).
class ScoreSet {
 public:
  ScoreSet(std::vector<double> values, double lower, double upper);

  std::span<const double> values() const { return values_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  int size() const { return static_cast<int>(values_.size()); }

  // Number of scores in the closed interval [lo, hi].
  int CountInRange(double lo, double hi) const;

 private:
  std::vector<double> values_;
  double lower_;
  double upper_;
};

}  // namespace dpcp

#endif  // DPCP_SCORE_SET_H_
