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

#ifndef DPCP_SYNTHETIC_H_
#define DPCP_SYNTHETIC_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dpcp/matrix.h"
#include "dpcp/random.h"

namespace dpcp {

// Two-class isotropic Gaussian problem. Class 1 (label 0) is
// N(mu1 * 1, var1 * I), class 2 (label 1) is N(mu2 * 1, var2 * I).
struct SyntheticSpec {
  int n = 10000;
  int dim = 8;
  double mu1 = 0.8;
  double var1 = 7.0;
  double mu2 = -1.0;
  double var2 = 8.0;
  // (train, calibration, test)
  std::array<double, 3> split_fractions = {0.60, 0.24, 0.16};

  // Throws DomainError on invalid fields.
  void Validate() const;
};

struct Dataset {
  Matrix features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
};

// ceil(n/2) rows of class 1 and floor(n/2) of class 2, rows shuffled.
Dataset Generate(const SyntheticSpec& spec, RandomStream& rng);

struct DataSplit {
  Dataset train;
  Dataset calibration;
  Dataset test;
};

// Partition sizes for n rows: floor(f * n) for calibration and test, the
// remainder to train. Throws DomainError if any part would be empty.
std::array<std::size_t, 3> SplitSizes(std::size_t n,
                                      const std::array<double, 3>& fractions);

// Random disjoint, exhaustive partition with SplitSizes.
DataSplit Split(const Dataset& data, const std::array<double, 3>& fractions,
                RandomStream& rng);

Dataset SelectRows(const Dataset& data, std::span<const std::size_t> rows);

// CSV with header f0,...,f{d-1},label; 17 significant digits.
void WriteDatasetCsv(const Dataset& data, const std::string& path);

}  // namespace dpcp

#endif  // DPCP_SYNTHETIC_H_
