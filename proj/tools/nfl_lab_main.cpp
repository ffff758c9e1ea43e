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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfllab/experiments.hpp"

namespace {

using nfllab::ExperimentReport;
using nfllab::RunOptions;
using json = nlohmann::json;

// Canned verify-all suite. "small" finishes in seconds; "medium" matches the
// scales the checks are normally quoted at.
std::vector<json> suite_configs(const std::string& size) {
  const bool small = size == "small";
  if (!small && size != "medium") {
    throw nfllab::Error("unknown suite size: " + size);
  }
  const json space4 = {{"x_size", 4}, {"y_values", {0.0, 1.0}}};
  const json space5 = {{"x_size", 5}, {"y_values", {0.0, 1.0}}};
  const std::vector<std::string> algorithms = {
      "enumerate", "random(seed=7)", "hill_descend(start=0)",
      "hill_ascend(start=0)", "mco(candidates=[0.5,4],folds=2,refit_every=2,seed=1)"};

  std::vector<json> configs;
  configs.push_back({{"schema_version", 1},
                     {"experiment", "nfl_sum_sweep"},
                     {"space", space4},
                     {"m", {1, 2, 3, 4}},
                     {"measures", {"min", "mean"}},
                     {"algorithms", algorithms}});
  configs.push_back({{"schema_version", 1},
                     {"experiment", "inner_product"},
                     {"space", space4},
                     {"m", 2},
                     {"measure", "min"},
                     {"algorithms", algorithms},
                     {"dirichlet_priors", small ? 5 : 20},
                     {"seed", 1}});
  configs.push_back({{"schema_version", 1},
                     {"experiment", "prior_mc"},
                     {"space", space4},
                     {"m", 2},
                     {"measure", "min"},
                     {"algorithms", algorithms},
                     {"n_samples", small ? 2000 : 10000},
                     {"seed", 2}});
  configs.push_back(
      {{"schema_version", 1},
       {"experiment", "supervised_nfl"},
       {"space", small ? space4 : space5},
       {"m", small ? 2 : 3},
       {"learners",
        {"constant(0)", "constant(1)", "majority", "anti_majority",
         "nearest_neighbor", "memorize_plus_default(0)"}}});
  configs.push_back({{"schema_version", 1},
                     {"experiment", "cv_vs_anticv"},
                     {"space", small ? space4 : space5},
                     {"m", small ? 2 : 3},
                     {"candidates", {"constant(0)", "constant(1)", "majority"}},
                     {"folds", "loo"}});
  configs.push_back({{"schema_version", 1},
                     {"experiment", "conditioning_contrast"},
                     {"space", space4},
                     {"m", 3},
                     {"learner_a", "memorize_plus_default(0)"},
                     {"learner_b", "uniform_guess"}});
  configs.push_back({{"schema_version", 1},
                     {"experiment", "meta_induction"},
                     {"inner_space", {{"x_size", 2}, {"y_values", {0.0, 1.0}}}},
                     {"smith", "hill_descend(start=0)"},
                     {"jones", "random(seed=5)"},
                     {"m_inner", 1},
                     {"train_count", 2},
                     {"seed", 3}});
  configs.push_back({{"schema_version", 1},
                     {"experiment", "mco_benchmark"},
                     {"x_size", 64},
                     {"y_levels", 8},
                     {"num_seeds", small ? 100 : 200},
                     {"m_total", 16},
                     {"candidates", {0.05, 0.25, 1.0, 64.0}},
                     {"folds", 2},
                     {"refit_every", 4},
                     {"seed", 9}});
  return configs;
}

int run_and_report(const json& config, const RunOptions& options) {
  const ExperimentReport report = nfllab::run_experiment(config, options);
  const std::string path = nfllab::write_report(report, options.out_dir);
  std::printf("%-22s %s  (%s)\n", report.kind.c_str(),
              report.pass ? "pass" : "FAIL", path.c_str());
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nfl-lab: exhaustive verification of no-free-lunch identities"};
  app.require_subcommand(1);

  RunOptions options;
  std::string arithmetic = "rational";
  app.add_option("--threads", options.threads,
                 "worker threads (0: NFL_LAB_THREADS or hardware)");
  app.add_option("--arithmetic", arithmetic, "rational|float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--out-dir", options.out_dir, "report output directory");

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config_path, "JSON config file")->required();

  std::string size = "small";
  CLI::App* verify =
      app.add_subcommand("verify-all", "run the canned theorem-check suite");
  verify->add_option("--size", size, "small|medium");

  CLI::App* list =
      app.add_subcommand("list-experiments", "print known experiment kinds");

  CLI11_PARSE(app, argc, argv);
  options.arithmetic = arithmetic == "float" ? nfllab::ArithmeticMode::kFloat
                                             : nfllab::ArithmeticMode::kRational;

  try {
    if (list->parsed()) {
      for (const auto& kind : nfllab::list_experiments()) {
        std::cout << kind << '\n';
      }
      return 0;
    }
    if (run->parsed()) {
      const ExperimentReport report =
          nfllab::run_experiment_file(config_path, options);
      const std::string path = nfllab::write_report(report, options.out_dir);
      std::printf("%-22s %s  (%s)\n", report.kind.c_str(),
                  report.pass ? "pass" : "FAIL", path.c_str());
      return report.pass ? 0 : 1;
    }
    int failures = 0;
    for (const json& config : suite_configs(size)) {
      failures += run_and_report(config, options);
    }
    return failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
