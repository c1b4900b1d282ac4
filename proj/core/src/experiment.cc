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

#include "dpcp/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dpcp/errors.h"
#include "dpcp/naive_bayes.h"
#include "dpcp/privacy.h"
#include "dpcp/synthetic.h"
#include "json.hpp"

namespace dpcp {
namespace {

using json = nlohmann::json;

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

double RoundSignificant(double value) {
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

class Accumulator {
 public:
  void Add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / n_;
    m2_ += delta * (x - mean_);
  }
  Summary Get() const {
    return {mean_, n_ > 1 ? m2_ / (n_ - 1) : 0.0};
  }

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

ResultRow Aggregate(const ExperimentConfig& config, bool warm) {
  config.Validate();
  Accumulator coverage, efficiency, informativeness, accuracy, seconds;
  for (int h = 0; h < config.replications; ++h) {
    const ReplicationOutcome out =
        RunReplication(config, static_cast<std::uint64_t>(h), warm);
    coverage.Add(out.metrics.coverage);
    efficiency.Add(out.metrics.efficiency);
    informativeness.Add(out.metrics.informativeness);
    accuracy.Add(out.model_accuracy);
    seconds.Add(out.mechanism_seconds);
  }
  ResultRow row;
  row.method = config.method;
  row.coverage = coverage.Get();
  row.efficiency = efficiency.Get();
  row.informativeness = informativeness.Get();
  row.accuracy = accuracy.Get();
  row.time_s = seconds.Get();
  row.replications = config.replications;
  row.base_seed = config.base_seed;
  return row;
}

std::vector<std::string> SplitFields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double ParseDouble(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw DomainError("not a number: '" + text + "'");
  }
  return value;
}

template <typename T>
T Get(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  return kind == ModelKind::kGnb ? "gnb" : "dp_gnb";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "gnb") return ModelKind::kGnb;
  if (name == "dp_gnb") return ModelKind::kDpGnb;
  throw DomainError("unknown model '" + std::string(name) +
                    "' (expected gnb or dp_gnb)");
}

std::string_view SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNone:
      return "none";
    case SweepAxis::kEpsilonCp:
      return "epsilon_cp";
    case SweepAxis::kN:
      return "n";
    case SweepAxis::kAlpha:
      return "alpha";
    case SweepAxis::kEpsilonF:
      return "epsilon_f";
  }
  return "none";
}

SweepAxis ParseSweepAxis(std::string_view name) {
  if (name == "none") return SweepAxis::kNone;
  if (name == "epsilon_cp") return SweepAxis::kEpsilonCp;
  if (name == "n") return SweepAxis::kN;
  if (name == "alpha") return SweepAxis::kAlpha;
  if (name == "epsilon_f") return SweepAxis::kEpsilonF;
  throw DomainError("unknown sweep axis '" + std::string(name) +
                    "' (expected epsilon_cp, n, alpha or epsilon_f)");
}

void ExperimentConfig::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(epsilon_cp > 0.0)) throw DomainError("epsilon_cp must be positive");
  if (model == ModelKind::kDpGnb && !(epsilon_f > 0.0)) {
    throw DomainError("epsilon_f must be positive");
  }
  if (!(dp_delta > 0.0 && dp_delta < 1.0)) {
    throw DomainError("dp_delta must lie in (0, 1)");
  }
  if (replications < 1) throw DomainError("replications must be >= 1");
  if (!(precision > 0.0)) throw DomainError("precision must be positive");
  if (!(score_lower <= 0.0 && score_upper >= 1.0 && score_lower < score_upper)) {
    throw DomainError("score_bounds must contain [0, 1] (hinge scores)");
  }
  if (!(feature_bound > 0.0)) throw DomainError("feature_bound must be positive");
  if (n < 2) throw DomainError("n must be >= 2");
  const auto sizes = SplitSizes(static_cast<std::size_t>(n), {0.60, 0.24, 0.16});
  if (sizes[0] < 4) {
    throw DomainError("n = " + std::to_string(n) +
                      " leaves too few training rows");
  }
  if (method == Mechanism::kExponq) {
    if (exponq.bin_grid.empty() || exponq.inflation_grid.empty()) {
      throw DomainError("exponq grids must be nonempty");
    }
    if (exponq.draws < 1) throw DomainError("exponq_draws must be >= 1");
  }
}

PrivacyBudget ExperimentConfig::Budget() const {
  return {EpsilonToRho(epsilon_cp), epsilon_cp, dp_delta};
}

MechanismParams ExperimentConfig::Params() const {
  MechanismParams params;
  params.score_lower = score_lower;
  params.score_upper = score_upper;
  params.precision = precision;
  params.search.loop_bound = loop_bound;
  params.exponq = exponq;
  return params;
}

double Summary::sd() const { return std::sqrt(variance); }

ReplicationOutcome RunReplication(const ExperimentConfig& config,
                                  std::uint64_t index, bool warm) {
  const std::uint64_t seed = config.base_seed;
  SyntheticSpec spec;
  spec.n = config.n;

  RandomStream data_rng(seed, ReplicationStreamId(index, StreamPurpose::kData));
  const Dataset data = Generate(spec, data_rng);
  RandomStream split_rng(seed,
                         ReplicationStreamId(index, StreamPurpose::kSplit));
  const DataSplit split = Split(data, spec.split_fractions, split_rng);

  GnbModel model;
  if (config.model == ModelKind::kGnb) {
    model = FitGnb(split.train.features, split.train.labels);
  } else {
    RandomStream model_rng(seed,
                           ReplicationStreamId(index, StreamPurpose::kModel));
    const std::vector<FeatureBound> bounds(
        split.train.features.cols(),
        FeatureBound{-config.feature_bound, config.feature_bound});
    model = FitDpGnb(split.train.features, split.train.labels,
                     config.epsilon_f, bounds, model_rng);
  }

  ReplicationOutcome out;
  out.model_accuracy =
      Accuracy(model, split.test.features, split.test.labels);

  const ScoreSet hinge = HingeScores(
      PredictProba(model, split.calibration.features), split.calibration.labels);
  const ScoreSet scores(
      std::vector<double>(hinge.values().begin(), hinge.values().end()),
      config.score_lower, config.score_upper);
  const PrivacyBudget budget = config.Budget();
  const MechanismParams params = config.Params();

  if (warm) {
    RandomStream warm_rng(seed,
                          ReplicationStreamId(index, StreamPurpose::kWarmup));
    RunMechanism(scores, config.alpha, config.method, budget, params, warm_rng);
  }
  RandomStream mech_rng(seed,
                        ReplicationStreamId(index, StreamPurpose::kMechanism));
  const auto start = std::chrono::steady_clock::now();
  out.quantile =
      RunMechanism(scores, config.alpha, config.method, budget, params, mech_rng);
  const auto stop = std::chrono::steady_clock::now();
  out.mechanism_seconds = std::chrono::duration<double>(stop - start).count();

  const Matrix test_proba = PredictProba(model, split.test.features);
  std::vector<PredictionSet> sets;
  sets.reserve(test_proba.rows());
  for (std::size_t i = 0; i < test_proba.rows(); ++i) {
    sets.push_back(MakePredictionSet(test_proba.row(i), out.quantile.threshold));
  }
  out.metrics = Evaluate(sets, split.test.labels);
  return out;
}

std::vector<ResultRow> RunExperiment(const ExperimentConfig& config) {
  return {Aggregate(config, /*warm=*/false)};
}

void SetAxisValue(ExperimentConfig& config, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kNone:
      throw DomainError("sweep needs an axis");
    case SweepAxis::kEpsilonCp:
      config.epsilon_cp = value;
      break;
    case SweepAxis::kN:
      if (value != std::floor(value) || value < 2 || value > 1e9) {
        throw DomainError("n sweep values must be integers >= 2");
      }
      config.n = static_cast<int>(value);
      break;
    case SweepAxis::kAlpha:
      config.alpha = value;
      break;
    case SweepAxis::kEpsilonF:
      config.epsilon_f = value;
      break;
  }
}

std::vector<ResultRow> Sweep(const ExperimentConfig& config, SweepAxis axis,
                             std::span<const double> values) {
  if (values.empty()) throw DomainError("sweep needs at least one value");
  // Validate every point before running any of them.
  std::vector<ExperimentConfig> points;
  for (double v : values) {
    ExperimentConfig point = config;
    SetAxisValue(point, axis, v);
    point.Validate();
    points.push_back(std::move(point));
  }
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ResultRow row = Aggregate(points[i], /*warm=*/false);
    row.sweep_axis = axis;
    row.sweep_value = values[i];
    rows.push_back(row);
  }
  return rows;
}

ResultRow BenchTiming(const ExperimentConfig& config) {
  return Aggregate(config, /*warm=*/true);
}

ExperimentConfig ConfigFromJson(
    std::string_view text,
    std::span<const std::pair<std::string, std::string>> overrides) {
  json doc;
  try {
    doc = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& [key, value] : overrides) {
    json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
    doc[key] = parsed.is_discarded() ? json(value) : parsed;
  }

  ExperimentConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "method") {
      c.method = ParseMechanism(Get<std::string>(doc, "method"));
    } else if (key == "model") {
      c.model = ParseModelKind(Get<std::string>(doc, "model"));
    } else if (key == "alpha") {
      c.alpha = Get<double>(doc, "alpha");
    } else if (key == "epsilon_cp") {
      c.epsilon_cp = Get<double>(doc, "epsilon_cp");
    } else if (key == "epsilon_f") {
      c.epsilon_f = Get<double>(doc, "epsilon_f");
    } else if (key == "dp_delta") {
      c.dp_delta = Get<double>(doc, "dp_delta");
    } else if (key == "n") {
      c.n = Get<int>(doc, "n");
    } else if (key == "replications") {
      c.replications = Get<int>(doc, "replications");
    } else if (key == "precision") {
      c.precision = Get<double>(doc, "precision");
    } else if (key == "score_bounds") {
      const auto bounds = Get<std::vector<double>>(doc, "score_bounds");
      if (bounds.size() != 2) throw DomainError("score_bounds needs [lower, upper]");
      c.score_lower = bounds[0];
      c.score_upper = bounds[1];
    } else if (key == "base_seed") {
      c.base_seed = Get<std::uint64_t>(doc, "base_seed");
    } else if (key == "loop_bound") {
      const auto name = Get<std::string>(doc, "loop_bound");
      if (name == "budgeted") {
        c.loop_bound = LoopBound::kBudgetedCalls;
      } else if (name == "inclusive") {
        c.loop_bound = LoopBound::kInclusive;
      } else {
        throw DomainError("loop_bound must be 'budgeted' or 'inclusive'");
      }
    } else if (key == "feature_bound") {
      c.feature_bound = Get<double>(doc, "feature_bound");
    } else if (key == "exponq_bin_grid") {
      c.exponq.bin_grid = Get<std::vector<int>>(doc, "exponq_bin_grid");
    } else if (key == "exponq_inflation_grid") {
      c.exponq.inflation_grid =
          Get<std::vector<double>>(doc, "exponq_inflation_grid");
    } else if (key == "exponq_draws") {
      c.exponq.draws = Get<int>(doc, "exponq_draws");
    } else if (key == "exponq_tail") {
      c.exponq.tail = Get<double>(doc, "exponq_tail");
    } else if (key == "sweep_axis") {
      c.sweep_axis = ParseSweepAxis(Get<std::string>(doc, "sweep_axis"));
    } else if (key == "sweep_values") {
      c.sweep_values = Get<std::vector<double>>(doc, "sweep_values");
    } else {
      throw DomainError("unknown config field '" + key + "'");
    }
  }
  return c;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read from '" + path + "' failed");
  return buffer.str();
}

OutputFormat ParseOutputFormat(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw DomainError("unknown format '" + std::string(name) +
                    "' (expected csv or json)");
}

std::string FormatCsv(std::span<const ResultRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRow& r : rows) {
    out += SweepAxisName(r.sweep_axis);
    out += ',';
    if (r.sweep_value) out += FormatNumber(*r.sweep_value);
    out += ',';
    out += MechanismName(r.method);
    for (const Summary* s : {&r.coverage, &r.efficiency, &r.informativeness,
                             &r.accuracy, &r.time_s}) {
      out += ',' + FormatNumber(s->mean) + ',' + FormatNumber(s->variance);
    }
    out += ',' + std::to_string(r.replications) + ',' +
           std::to_string(r.base_seed) + '\n';
  }
  return out;
}

std::string FormatJson(std::span<const ResultRow> rows) {
  json array = json::array();
  for (const ResultRow& r : rows) {
    json obj;
    obj["sweep_axis"] = SweepAxisName(r.sweep_axis);
    obj["sweep_value"] =
        r.sweep_value ? json(RoundSignificant(*r.sweep_value)) : json(nullptr);
    obj["method"] = MechanismName(r.method);
    const std::pair<const char*, const Summary*> metrics[] = {
        {"coverage", &r.coverage},
        {"efficiency", &r.efficiency},
        {"informativeness", &r.informativeness},
        {"accuracy", &r.accuracy},
    };
    for (const auto& [name, s] : metrics) {
      const std::string key(name);
      obj[key + "_mean"] = RoundSignificant(s->mean);
      obj[key + "_disp"] = RoundSignificant(s->variance);
      obj[key + "_sd"] = RoundSignificant(s->sd());
    }
    obj["time_mean_s"] = RoundSignificant(r.time_s.mean);
    obj["time_disp_s"] = RoundSignificant(r.time_s.variance);
    obj["time_sd_s"] = RoundSignificant(r.time_s.sd());
    obj["replications"] = r.replications;
    obj["base_seed"] = r.base_seed;
    array.push_back(std::move(obj));
  }
  return array.dump(2) + "\n";
}

void Emit(std::span<const ResultRow> rows, OutputFormat format,
          const std::string& path) {
  if (rows.empty()) throw DomainError("Emit: no rows");
  const std::string text =
      format == OutputFormat::kCsv ? FormatCsv(rows) : FormatJson(rows);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<ResultRow> ParseCsv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw DomainError("ParseCsv: missing or unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = SplitFields(line);
    if (f.size() != 15) {
      throw DomainError("ParseCsv: expected 15 fields, got " +
                        std::to_string(f.size()));
    }
    ResultRow r;
    r.sweep_axis = ParseSweepAxis(f[0]);
    if (!f[1].empty()) r.sweep_value = ParseDouble(f[1]);
    r.method = ParseMechanism(f[2]);
    Summary* summaries[] = {&r.coverage, &r.efficiency, &r.informativeness,
                           &r.accuracy, &r.time_s};
    for (int i = 0; i < 5; ++i) {
      summaries[i]->mean = ParseDouble(f[3 + 2 * i]);
      summaries[i]->variance = ParseDouble(f[4 + 2 * i]);
    }
    r.replications = static_cast<int>(ParseDouble(f[13]));
    r.base_seed = std::stoull(f[14]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace dpcp
