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

#ifndef DPCP_EXPERIMENT_H_
#define DPCP_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpcp/conformal.h"
#include "dpcp/quantile.h"

namespace dpcp {

enum class ModelKind { kGnb, kDpGnb };

enum class SweepAxis { kNone, kEpsilonCp, kN, kAlpha, kEpsilonF };

std::string_view ModelKindName(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);
std::string_view SweepAxisName(SweepAxis axis);
SweepAxis ParseSweepAxis(std::string_view name);

// One simulation setting. Defaults follow the published synthetic study:
// epsilon_cp = 1, n = 10000, alpha = 0.1, epsilon_f = 2, 1000 replications.
struct ExperimentConfig {
  Mechanism method = Mechanism::kPcoqs;
  ModelKind model = ModelKind::kGnb;
  double alpha = 0.1;
  // Conformal budget; the search runs at rho = EpsilonToRho(epsilon_cp).
  double epsilon_cp = 1.0;
  double epsilon_f = 2.0;
  double dp_delta = 1e-5;
  int n = 10000;
  int replications = 1000;
  double precision = kDefaultPrecision;
  double score_lower = 0.0;
  double score_upper = 1.0;
  std::uint64_t base_seed = 1;
  LoopBound loop_bound = LoopBound::kBudgetedCalls;
  // Symmetric clipping bound for the private model, per feature.
  double feature_bound = 12.0;
  ExponqTuneOptions exponq;
  SweepAxis sweep_axis = SweepAxis::kNone;
  std::vector<double> sweep_values;

  // Throws DomainError for settings that cannot run.
  void Validate() const;
  PrivacyBudget Budget() const;
  MechanismParams Params() const;
};

// Mean and sample variance (n - 1 denominator; 0 for one replication).
struct Summary {
  double mean = 0.0;
  double variance = 0.0;

  double sd() const;
};

struct ResultRow {
  SweepAxis sweep_axis = SweepAxis::kNone;
  std::optional<double> sweep_value;
  Mechanism method = Mechanism::kPcoqs;
  Summary coverage;
  Summary efficiency;
  Summary informativeness;
  Summary accuracy;
  // Wall time of the quantile mechanism alone, seconds.
  Summary time_s;
  int replications = 0;
  std::uint64_t base_seed = 0;
};

// Everything measured in one replication.
struct ReplicationOutcome {
  MetricsReport metrics;
  double model_accuracy = 0.0;
  double mechanism_seconds = 0.0;
  QuantileResult quantile;
};

// Replication `index`: generate, split, fit, calibrate, evaluate. Each stage
// draws from its own substream of (base_seed, index), so the mechanism noise
// is fresh in every replication. With `warm` the mechanism runs once on a
// separate stream before the timed call.
ReplicationOutcome RunReplication(const ExperimentConfig& config,
                                  std::uint64_t index, bool warm = false);

// All replications of `config`, aggregated into one row.
std::vector<ResultRow> RunExperiment(const ExperimentConfig& config);

// One RunExperiment per value, in input order. Every value reuses the
// config's base_seed, so a value's row does not depend on its position.
std::vector<ResultRow> Sweep(const ExperimentConfig& config, SweepAxis axis,
                             std::span<const double> values);

// RunExperiment with a warm-up mechanism call before each timed call.
ResultRow BenchTiming(const ExperimentConfig& config);

// Sets the field named by `axis`.
void SetAxisValue(ExperimentConfig& config, SweepAxis axis, double value);

// Flat JSON object with ExperimentConfig field names. Unknown keys are
// rejected. Each override (key, value) replaces the key before conversion;
// the value is parsed as JSON when possible and as a string otherwise.
ExperimentConfig ConfigFromJson(
    std::string_view text,
    std::span<const std::pair<std::string, std::string>> overrides = {});

std::string ReadTextFile(const std::string& path);

enum class OutputFormat { kCsv, kJson };

OutputFormat ParseOutputFormat(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "sweep_axis,sweep_value,method,coverage_mean,coverage_disp,"
    "efficiency_mean,efficiency_disp,informativeness_mean,informativeness_disp,"
    "accuracy_mean,accuracy_disp,time_mean_s,time_disp_s,replications,"
    "base_seed";

// Numbers use 6 significant digits. CSV dispersion columns hold variances;
// JSON carries the same keys plus *_sd standard deviations.
std::string FormatCsv(std::span<const ResultRow> rows);
std::string FormatJson(std::span<const ResultRow> rows);

// Writes to `path`, or to stdout when path is "-". Throws IoError naming the
// path when it cannot be written.
void Emit(std::span<const ResultRow> rows, OutputFormat format,
          const std::string& path);

// Inverse of FormatCsv.
std::vector<ResultRow> ParseCsv(std::string_view text);

}  // namespace dpcp

#endif  // DPCP_EXPERIMENT_H_
