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

#include "dpcp/synthetic.h"

#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>

#include "dpcp/errors.h"

namespace dpcp {

void SyntheticSpec::Validate() const {
  if (n < 2) throw DomainError("SyntheticSpec: n must be >= 2");
  if (dim < 1) throw DomainError("SyntheticSpec: dim must be >= 1");
  if (!(var1 > 0.0) || !(var2 > 0.0)) {
    throw DomainError("SyntheticSpec: variances must be positive");
  }
  double total = 0.0;
  for (double f : split_fractions) {
    if (!(f > 0.0)) throw DomainError("SyntheticSpec: split fractions must be > 0");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("SyntheticSpec: split fractions must sum to 1");
  }
}

Dataset Generate(const SyntheticSpec& spec, RandomStream& rng) {
  spec.Validate();
  const auto n = static_cast<std::size_t>(spec.n);
  const auto d = static_cast<std::size_t>(spec.dim);
  const std::size_t n_first = n - n / 2;

  Dataset data{Matrix(n, d), std::vector<int>(n)};
  const double sd1 = std::sqrt(spec.var1);
  const double sd2 = std::sqrt(spec.var2);
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i < n_first;
    data.labels[i] = first ? 0 : 1;
    for (std::size_t j = 0; j < d; ++j) {
      data.features(i, j) =
          first ? rng.Gaussian(spec.mu1, sd1) : rng.Gaussian(spec.mu2, sd2);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<std::size_t>(order));
  return SelectRows(data, order);
}

std::array<std::size_t, 3> SplitSizes(std::size_t n,
                                      const std::array<double, 3>& fractions) {
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw DomainError("Split: fractions must be > 0");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("Split: fractions must sum to 1");
  }
  // The 1e-9 slack keeps products like 0.29 * 100 = 28.999999999999996 at 29.
  const auto part = [n](double f) {
    return static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 1e-9));
  };
  const std::size_t cal = part(fractions[1]);
  const std::size_t test = part(fractions[2]);
  if (cal + test >= n || cal == 0 || test == 0) {
    throw DomainError("Split: " + std::to_string(n) +
                      " rows leave an empty partition");
  }
  return {n - cal - test, cal, test};
}

Dataset SelectRows(const Dataset& data, std::span<const std::size_t> rows) {
  const std::size_t d = data.features.cols();
  Dataset out{Matrix(rows.size(), d), std::vector<int>(rows.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = data.features.row(rows[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels[i] = data.labels[rows[i]];
  }
  return out;
}

DataSplit Split(const Dataset& data, const std::array<double, 3>& fractions,
                RandomStream& rng) {
  if (data.size() == 0) throw DomainError("Split: empty dataset");
  const auto sizes = SplitSizes(data.size(), fractions);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<std::size_t>(order));

  const std::span<const std::size_t> all(order);
  DataSplit split;
  split.train = SelectRows(data, all.subspan(0, sizes[0]));
  split.calibration = SelectRows(data, all.subspan(sizes[0], sizes[1]));
  split.test = SelectRows(data, all.subspan(sizes[0] + sizes[1], sizes[2]));
  return split;
}

void WriteDatasetCsv(const Dataset& data, const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(
      std::fopen(path.c_str(), "w"), &std::fclose);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  const std::size_t d = data.features.cols();
  for (std::size_t j = 0; j < d; ++j) std::fprintf(file.get(), "f%zu,", j);
  std::fprintf(file.get(), "label\n");
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::fprintf(file.get(), "%.17g,", data.features(i, j));
    }
    std::fprintf(file.get(), "%d\n", data.labels[i]);
  }
  if (std::ferror(file.get())) throw IoError("write to '" + path + "' failed");
}

}  // namespace dpcp
