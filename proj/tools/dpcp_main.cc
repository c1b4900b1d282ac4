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

// dpcp: command-line front end for private conformal calibration experiments.
//
// Exit codes: 0 success, 2 config or domain error, 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dpcp/bounds.h"
#include "dpcp/errors.h"
#include "dpcp/experiment.h"
#include "dpcp/quantile.h"
#include "dpcp/random.h"
#include "dpcp/synthetic.h"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

std::vector<double> ReadScores(const std::string& path) {
  const std::string text = dpcp::ReadTextFile(path);
  std::vector<double> scores;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string field = line.substr(0, line.find(','));
    char* stop = nullptr;
    const double value = std::strtod(field.c_str(), &stop);
    if (stop == field.c_str() || *stop != '\0') {
      if (line_no == 1 && scores.empty()) continue;  // header
      throw dpcp::DomainError(path + ":" + std::to_string(line_no) +
                              ": not a number: '" + field + "'");
    }
    scores.push_back(value);
  }
  return scores;
}

std::vector<std::pair<std::string, std::string>> Overrides(
    const std::vector<std::string>& sets) {
  std::vector<std::pair<std::string, std::string>> out;
  if (const char* env = std::getenv("PCOQS_SEED"); env != nullptr && *env) {
    out.emplace_back("base_seed", env);
  }
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw dpcp::DomainError("--set expects key=value, got '" + kv + "'");
    }
    out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return out;
}

dpcp::ExperimentConfig LoadConfig(const std::string& path,
                                  const std::vector<std::string>& sets) {
  const std::string text = path.empty() ? "" : dpcp::ReadTextFile(path);
  return dpcp::ConfigFromJson(text, Overrides(sets));
}

struct OutputOptions {
  std::string path = "-";
  std::string format = "csv";
};

void AddOutputOptions(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out", out.path, "Output file ('-' for stdout)");
  cmd->add_option("--format", out.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private split conformal prediction toolkit"};
  app.require_subcommand(1);

  // quantile
  auto* quantile = app.add_subcommand("quantile", "Private threshold from a score file");
  std::string scores_path;
  double alpha = 0.1;
  std::string method = "pcoqs";
  double rho = 1.0;
  double epsilon = 0.0;
  double precision = dpcp::kDefaultPrecision;
  double lower = 0.0;
  double upper = 1.0;
  std::uint64_t seed = 1;
  bool noiseless = false;
  bool inclusive = false;
  int n_bins = 0;
  double inflation = 0.0;
  quantile->add_option("--scores", scores_path, "CSV with one score per line")->required();
  quantile->add_option("--alpha", alpha, "Miscoverage level")->required();
  quantile->add_option("--method", method, "nonprivate, pcoqs or exponq")->required();
  quantile->add_option("--rho", rho, "zCDP budget for pcoqs")->required();
  quantile->add_option("--epsilon", epsilon, "Pure-DP budget for exponq (default: --rho)");
  quantile->add_option("--precision", precision, "Binary search precision");
  quantile->add_option("--lower", lower, "Lower score bound");
  quantile->add_option("--upper", upper, "Upper score bound");
  quantile->add_option("--seed", seed, "Random stream seed");
  quantile->add_option("--bins", n_bins, "exponq: fixed bin count (skips tuning)");
  quantile->add_option("--inflation", inflation, "exponq: inflation with --bins");
  quantile->add_flag("--noiseless", noiseless, "pcoqs: exact counts (not private)");
  quantile->add_flag("--inclusive-loop", inclusive, "pcoqs: N + 1 iterations");

  // simulate / sweep / bench
  std::string config_path;
  std::vector<std::string> sets;
  OutputOptions out;

  auto* simulate = app.add_subcommand("simulate", "Run one experiment configuration");
  simulate->add_option("--config", config_path, "JSON config")->required();
  simulate->add_option("--set", sets, "Override a config field, key=value");
  AddOutputOptions(simulate, out);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  std::string axis_name;
  std::vector<double> values;
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--axis", axis_name, "epsilon_cp, n, alpha or epsilon_f");
  sweep->add_option("--values", values, "Comma-separated values")->delimiter(',');
  sweep->add_option("--set", sets, "Override a config field, key=value");
  AddOutputOptions(sweep, out);

  auto* bench = app.add_subcommand("bench", "Time the quantile mechanism");
  bench->add_option("--config", config_path, "JSON config")->required();
  bench->add_option("--set", sets, "Override a config field, key=value");
  AddOutputOptions(bench, out);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Rank-error bound and coverage band");
  double u = 0.0;
  double beta = 0.01;
  int ncal = 0;
  bounds->add_option("--u", u, "(upper - lower) / precision")->required();
  bounds->add_option("--rho", rho, "zCDP budget")->required();
  bounds->add_option("--beta", beta, "Failure probability")->required();
  bounds->add_option("--ncal", ncal, "Calibration size")->required();
  bounds->add_option("--alpha", alpha, "Miscoverage level")->required();

  // generate
  auto* generate = app.add_subcommand("generate", "Export a synthetic dataset as CSV");
  int n_rows = 10000;
  generate->add_option("--n", n_rows, "Rows");
  generate->add_option("--seed", seed, "Random stream seed");
  generate->add_option("--out", out.path, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }

  try {
    if (*quantile) {
      const dpcp::ScoreSet scores(ReadScores(scores_path), lower, upper);
      dpcp::RandomStream rng(seed);
      dpcp::QuantileResult result;
      switch (dpcp::ParseMechanism(method)) {
        case dpcp::Mechanism::kNonprivate:
          result = dpcp::NonprivateQuantile(scores, alpha);
          break;
        case dpcp::Mechanism::kPcoqs: {
          dpcp::SearchOptions options;
          options.noiseless = noiseless;
          options.record_trace = true;
          options.loop_bound = inclusive ? dpcp::LoopBound::kInclusive
                                         : dpcp::LoopBound::kBudgetedCalls;
          result = dpcp::PcoqsQuantile(scores, alpha, precision, rho, rng, options);
          break;
        }
        case dpcp::Mechanism::kExponq: {
          const double eps = epsilon > 0.0 ? epsilon : rho;
          result = n_bins > 0
                       ? dpcp::ExponqQuantile(scores, alpha, eps, n_bins, inflation, rng)
                       : dpcp::TunedExponqQuantile(scores, alpha, eps, {}, rng);
          break;
        }
      }
      std::printf("mechanism: %s\n", std::string(dpcp::MechanismName(result.mechanism)).c_str());
      std::printf("threshold: %.17g\n", result.threshold);
      std::printf("target_rank: %d\n", result.target_rank);
      std::printf("n_cal: %d\n", scores.size());
      if (result.mechanism == dpcp::Mechanism::kPcoqs) {
        std::printf("iterations: %d\n", result.iterations_used);
        std::printf("noisy_calls: %d\n", result.noisy_calls);
        std::printf("noise_sd: %.17g\n", result.noise_sd);
        std::printf("trace: step mid noisy_count move\n");
        for (std::size_t i = 0; i < result.trace.size(); ++i) {
          const auto& s = result.trace[i];
          std::printf("  %zu %.17g %.6f %s\n", i, s.mid, s.noisy_count,
                      s.moved_left_bound ? "left" : "right");
        }
      } else if (result.mechanism == dpcp::Mechanism::kExponq) {
        std::printf("n_bins: %d\n", result.n_bins);
        std::printf("inflation: %g\n", result.inflation);
      }
    } else if (*simulate) {
      const auto config = LoadConfig(config_path, sets);
      const auto rows = dpcp::RunExperiment(config);
      dpcp::Emit(rows, dpcp::ParseOutputFormat(out.format), out.path);
    } else if (*sweep) {
      auto config = LoadConfig(config_path, sets);
      const dpcp::SweepAxis axis =
          axis_name.empty() ? config.sweep_axis : dpcp::ParseSweepAxis(axis_name);
      if (!values.empty()) config.sweep_values = values;
      const auto rows = dpcp::Sweep(config, axis, config.sweep_values);
      dpcp::Emit(rows, dpcp::ParseOutputFormat(out.format), out.path);
    } else if (*bench) {
      const auto config = LoadConfig(config_path, sets);
      config.Validate();
      const std::vector<dpcp::ResultRow> rows = {dpcp::BenchTiming(config)};
      dpcp::Emit(rows, dpcp::ParseOutputFormat(out.format), out.path);
    } else if (*bounds) {
      const double tau = dpcp::RankErrorBound(u, rho, beta);
      const dpcp::CoverageBand band = dpcp::CoverageBounds(tau, ncal, alpha);
      std::printf("tau: %.10g\n", tau);
      std::printf("coverage_lower: %.10g\n", band.lower);
      std::printf("coverage_upper: %.10g\n", band.upper);
    } else if (*generate) {
      dpcp::SyntheticSpec spec;
      spec.n = n_rows;
      dpcp::RandomStream rng(seed);
      dpcp::WriteDatasetCsv(dpcp::Generate(spec, rng), out.path);
    }
  } catch (const dpcp::IoError& e) {
    std::cerr << "dpcp: " << e.what() << "\n";
    return kExitIo;
  } catch (const dpcp::DomainError& e) {
    std::cerr << "dpcp: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
