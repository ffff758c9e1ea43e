// Copyright 2026 The nfl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NFLLAB_EXPERIMENTS_HPP
#define NFLLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfllab/core.hpp"
#include "nfllab/verify.hpp"

namespace nfllab {

struct RunOptions {
  int threads = 0;  // 0: NFL_LAB_THREADS or hardware concurrency
  ArithmeticMode arithmetic = ArithmeticMode::kRational;
  std::string out_dir = ".";
};

// A finished experiment: the JSON report body (config echo, per-check
// pass/fail, numeric tables, environment fingerprint) plus long-format CSV
// plot data. Identical configs byte-reproduce the body.
struct ExperimentReport {
  std::string kind;
  nlohmann::json body;
  std::string csv;
  bool pass = false;
};

// Experiment kinds accepted in config files.
std::vector<std::string> list_experiments();

// Validates the config against its schema (unknown keys rejected), runs the
// experiment, and returns the report. Throws on schema violations.
ExperimentReport run_experiment(const nlohmann::json& config,
                                const RunOptions& options);
ExperimentReport run_experiment_file(const std::string& config_path,
                                     const RunOptions& options);

// The desk-scale instantiation of the two-professors construction: outer
// inputs are inner objective-function ranks, outer bits record whether
// Smith's algorithm beat Jones's, and majority/anti-majority predictors are
// averaged over every outer universe.
ExperimentReport run_meta_induction_experiment(const nlohmann::json& config,
                                               const RunOptions& options);

// Writes <out_dir>/<kind>_report.json and, when plot data exists,
// <out_dir>/<kind>_plot.csv. Returns the report path.
std::string write_report(const ExperimentReport& report,
                         const std::string& out_dir);

// Writes the report's long-format plot table to csv_path.
void emit_plot_data(const ExperimentReport& report,
                    const std::string& csv_path);

// Smooth benchmark objective: a seeded low-frequency cosine mixture on the
// ring, quantized onto the space's Y levels.
ObjectiveTable make_smooth_objective(const FiniteSpace& space,
                                     std::uint64_t seed);

}  // namespace nfllab

#endif  // NFLLAB_EXPERIMENTS_HPP
