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

#include "nfllab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nfllab/algorithms.hpp"
#include "nfllab/mco.hpp"
#include "nfllab/parallel.hpp"
#include "nfllab/rng.hpp"
#include "nfllab/supervised.hpp"

namespace nfllab {
namespace {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

const std::vector<std::string> kExperiments = {
    "nfl_sum_sweep",     "inner_product",  "prior_mc",
    "supervised_nfl",    "cv_vs_anticv",   "conditioning_contrast",
    "meta_induction",    "mco_benchmark",
};

// Unknown keys are rejected (not ignored) so typos cannot silently fall back
// to defaults; missing required keys name the field.
void validate_keys(const json& config, const std::vector<std::string>& required,
                   const std::vector<std::string>& optional) {
  for (const auto& [key, value] : config.items()) {
    bool known = key == "schema_version" || key == "experiment";
    for (const auto& k : required) known = known || k == key;
    for (const auto& k : optional) known = known || k == key;
    if (!known) throw Error("config schema error: unknown key \"" + key + "\"");
  }
  for (const auto& k : required) {
    if (!config.contains(k)) {
      throw Error("config schema error: missing required key \"" + k + "\"");
    }
  }
}

FiniteSpace parse_space(const json& j,
                        std::uint64_t cap = FiniteSpace::kDefaultEnumerationCap) {
  if (!j.is_object() || !j.contains("x_size") || !j.contains("y_values")) {
    throw Error("config schema error: space needs \"x_size\" and \"y_values\"");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "x_size" && key != "y_values") {
      throw Error("config schema error: unknown space key \"" + key + "\"");
    }
  }
  return FiniteSpace(j.at("x_size").get<int>(),
                     j.at("y_values").get<std::vector<double>>(), cap);
}

std::vector<int> parse_m_list(const json& j) {
  if (j.is_number_integer()) return {j.get<int>()};
  return j.get<std::vector<int>>();
}

std::vector<std::shared_ptr<const SearchAlgorithm>> parse_algorithms(
    const json& j) {
  std::vector<std::shared_ptr<const SearchAlgorithm>> algorithms;
  for (const auto& s : j.get<std::vector<std::string>>()) {
    algorithms.push_back(make_algorithm(s));
  }
  if (algorithms.empty()) throw Error("config schema error: no algorithms");
  return algorithms;
}

LossFunction parse_loss(const json& config, const FiniteSpace& space) {
  const std::string name =
      config.contains("loss") ? config.at("loss").get<std::string>()
                              : std::string("zero_one");
  if (name == "zero_one") return LossFunction::ZeroOne(space);
  if (name == "absolute") return LossFunction::Absolute(space);
  if (name == "squared") return LossFunction::Squared(space);
  throw Error("config schema error: unknown loss \"" + name + "\"");
}

std::string arithmetic_name(ArithmeticMode mode) {
  return mode == ArithmeticMode::kRational ? "rational" : "float";
}

PriorVector strip_exact(PriorVector prior, ArithmeticMode mode) {
  if (mode == ArithmeticMode::kFloat) prior.exact.reset();
  return prior;
}

// ---------------------------------------------------------------------------

struct RunOutcome {
  json results;
  std::string csv;
  bool pass = false;
};

RunOutcome run_nfl_sum_sweep(const json& config, const RunOptions& options) {
  validate_keys(config, {"space", "m", "measures", "algorithms"}, {});
  const FiniteSpace space = parse_space(config.at("space"));
  const auto algorithms = parse_algorithms(config.at("algorithms"));
  const int threads = resolve_thread_count(options.threads);

  RunOutcome out;
  out.pass = true;
  std::ostringstream csv;
  csv << "algorithm,m,phi_measure,sum\n";
  json checks = json::array();
  for (const auto& measure_name :
       config.at("measures").get<std::vector<std::string>>()) {
    const PerformanceMeasure measure = PerformanceMeasure::Parse(measure_name);
    for (int m : parse_m_list(config.at("m"))) {
      json sums = json::object();
      bool equal = true;
      Rational reference = 0;
      for (std::size_t i = 0; i < algorithms.size(); ++i) {
        const Rational sum =
            nfl_sum(*algorithms[i], space, m, measure, threads);
        if (i == 0) {
          reference = sum;
        } else {
          equal = equal && sum == reference;
        }
        sums[algorithms[i]->name()] = to_string(sum);
        csv << algorithms[i]->name() << ',' << m << ',' << measure.name()
            << ',' << to_double(sum) << '\n';
      }
      checks.push_back(json{{"measure", measure.name()},
                            {"m", m},
                            {"sums", sums},
                            {"pass", equal}});
      out.pass = out.pass && equal;
    }
  }
  out.results = json{{"checks", checks}};
  out.csv = csv.str();
  return out;
}

RunOutcome run_inner_product(const json& config, const RunOptions& options) {
  validate_keys(config, {"space", "m", "measure", "algorithms"},
                {"dirichlet_priors", "seed"});
  const FiniteSpace space = parse_space(config.at("space"));
  const auto algorithms = parse_algorithms(config.at("algorithms"));
  const PerformanceMeasure measure =
      PerformanceMeasure::Parse(config.at("measure").get<std::string>());
  const int m = config.at("m").get<int>();
  const int n_dirichlet = config.value("dirichlet_priors", 0);
  const std::uint64_t seed = config.value("seed", 0);

  RunOutcome out;
  out.pass = true;
  json checks = json::array();
  double max_dev = 0;
  for (const auto& algorithm : algorithms) {
    std::vector<std::pair<std::string, PriorVector>> priors;
    priors.emplace_back("uniform",
                        strip_exact(PriorVector::Uniform(space.num_functions()),
                                    options.arithmetic));
    for (int i = 0; i < n_dirichlet; ++i) {
      priors.emplace_back("dirichlet[" + std::to_string(i) + "]",
                          PriorVector::Dirichlet(space.num_functions(),
                                                 derive_stream(seed, i)));
    }
    for (const auto& [prior_name, prior] : priors) {
      const InnerProductReport report =
          inner_product_check(*algorithm, space, m, measure, prior);
      json entry = report.to_json();
      entry["prior"] = prior_name;
      checks.push_back(entry);
      max_dev = std::max(max_dev, report.max_deviation);
      out.pass = out.pass && report.pass;
    }
  }
  out.results = json{{"checks", checks}, {"max_deviation", max_dev}};
  return out;
}

RunOutcome run_prior_mc(const json& config, const RunOptions& options) {
  validate_keys(config, {"space", "m", "measure", "algorithms", "n_samples",
                         "seed"},
                {});
  const FiniteSpace space = parse_space(config.at("space"));
  const PriorAveragedReport report = prior_averaged_nfl_check(
      parse_algorithms(config.at("algorithms")), space,
      config.at("m").get<int>(),
      PerformanceMeasure::Parse(config.at("measure").get<std::string>()),
      config.at("n_samples").get<int>(), config.at("seed").get<std::uint64_t>(),
      resolve_thread_count(options.threads));

  RunOutcome out;
  out.results = report.to_json();
  out.pass = report.pass;
  std::ostringstream csv;
  csv << "algorithm,sample_index,e_pi_phi\n";
  for (std::size_t a = 0; a < report.samples.size(); ++a) {
    for (std::size_t s = 0; s < report.samples[a].size(); ++s) {
      csv << report.per_algorithm[a].name << ',' << s << ','
          << report.samples[a][s] << '\n';
    }
  }
  out.csv = csv.str();
  return out;
}

RunOutcome run_supervised_nfl(const json& config, const RunOptions&) {
  validate_keys(config, {"space", "m", "learners"}, {"loss"});
  const FiniteSpace space = parse_space(config.at("space"));
  std::vector<LearnerPtr> learners;
  for (const auto& s : config.at("learners").get<std::vector<std::string>>()) {
    learners.push_back(make_learner(s));
  }
  const SupervisedNflReport report = nfl_supervised_check(
      learners, space, config.at("m").get<int>(), parse_loss(config, space));
  RunOutcome out;
  out.results = report.to_json();
  out.pass = report.pass;
  return out;
}

RunOutcome run_cv_vs_anticv(const json& config, const RunOptions&) {
  validate_keys(config, {"space", "m", "candidates"}, {"folds"});
  const FiniteSpace space = parse_space(config.at("space"));
  std::ostringstream theta;
  const auto candidates = config.at("candidates").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i) theta << ',';
    theta << candidates[i];
  }
  std::string folds = "loo";
  if (config.contains("folds") && !config.at("folds").is_string()) {
    folds = std::to_string(config.at("folds").get<int>());
  }
  const std::string args =
      "(candidates=[" + theta.str() + "],folds=" + folds + ")";
  const std::vector<LearnerPtr> learners = {
      make_learner("cv_select" + args), make_learner("anti_cv_select" + args)};
  const SupervisedNflReport report =
      nfl_supervised_check(learners, space, config.at("m").get<int>(),
                           LossFunction::ZeroOne(space));
  RunOutcome out;
  out.results = report.to_json();
  out.pass = report.pass;
  return out;
}

RunOutcome run_conditioning_contrast(const json& config, const RunOptions&) {
  validate_keys(config, {"space", "m", "learner_a", "learner_b"}, {});
  const FiniteSpace space = parse_space(config.at("space"));
  const ConditioningContrastReport report = conditioning_contrast_experiment(
      *make_learner(config.at("learner_a").get<std::string>()),
      *make_learner(config.at("learner_b").get<std::string>()), space,
      config.at("m").get<int>());
  RunOutcome out;
  out.results = report.to_json();
  out.pass = report.pass;
  return out;
}

RunOutcome run_meta_induction(const json& config, const RunOptions&) {
  validate_keys(config, {"inner_space", "smith", "jones", "m_inner",
                         "train_count", "seed"},
                {});
  const FiniteSpace inner = parse_space(config.at("inner_space"));
  const int outer_x = static_cast<int>(inner.num_functions());
  if (outer_x > 20) throw Error("inner space too large for outer enumeration");
  const FiniteSpace outer(outer_x, {0.0, 1.0});
  const auto smith = make_algorithm(config.at("smith").get<std::string>());
  const auto jones = make_algorithm(config.at("jones").get<std::string>());
  const int m_inner = config.at("m_inner").get<int>();
  const int train_count = config.at("train_count").get<int>();
  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
  if (train_count < 1 || train_count >= outer_x) {
    throw Error("train_count must leave at least one off-training x");
  }
  const PerformanceMeasure measure = PerformanceMeasure::Min();

  // The actual universe: bit r records whether Smith's search beat Jones's
  // on inner objective rank r.
  std::vector<int> actual(static_cast<std::size_t>(outer_x));
  for (int r = 0; r < outer_x; ++r) {
    const ObjectiveTable f = rank_to_function(inner, r);
    const Rational phi_smith =
        expected_performance_exact(*smith, f, m_inner, measure);
    const Rational phi_jones =
        expected_performance_exact(*jones, f, m_inner, measure);
    actual[static_cast<std::size_t>(r)] = phi_smith < phi_jones ? 1 : 0;
  }

  // Seeded sample of distinct training inputs.
  std::vector<int> train_xs(static_cast<std::size_t>(outer_x));
  for (int i = 0; i < outer_x; ++i) train_xs[static_cast<std::size_t>(i)] = i;
  SplitMix64 rng(seed);
  for (int i = outer_x - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(i + 1));
    std::swap(train_xs[static_cast<std::size_t>(i)],
              train_xs[static_cast<std::size_t>(j)]);
  }
  train_xs.resize(static_cast<std::size_t>(train_count));

  const LearnerPtr majority = make_learner("majority");
  const LearnerPtr anti = make_learner("anti_majority");

  auto accuracy = [&](const LearningAlgorithm& learner,
                      const std::vector<int>& universe) {
    TrainingSet d;
    for (int x : train_xs) {
      d.append(x, universe[static_cast<std::size_t>(x)]);
    }
    const HypothesisDistribution h = learner.learn(d, outer);
    Rational correct = 0;
    int off = 0;
    for (int x = 0; x < outer_x; ++x) {
      if (d.contains_x(x)) continue;
      ++off;
      correct +=
          h.row(x)[static_cast<std::size_t>(universe[static_cast<std::size_t>(x)])];
    }
    return correct / off;
  };

  const std::uint64_t n_universes = std::uint64_t{1} << outer_x;
  Rational avg_majority = 0;
  Rational avg_anti = 0;
  Rational consistent_majority = 0;
  Rational consistent_anti = 0;
  std::uint64_t consistent_count = 0;
  for (std::uint64_t u = 0; u < n_universes; ++u) {
    std::vector<int> universe(static_cast<std::size_t>(outer_x));
    for (int x = 0; x < outer_x; ++x) {
      universe[static_cast<std::size_t>(x)] = (u >> x) & 1;
    }
    const Rational acc_majority = accuracy(*majority, universe);
    const Rational acc_anti = accuracy(*anti, universe);
    avg_majority += acc_majority;
    avg_anti += acc_anti;
    bool consistent = true;
    for (int x : train_xs) {
      consistent = consistent && universe[static_cast<std::size_t>(x)] ==
                                     actual[static_cast<std::size_t>(x)];
    }
    if (consistent) {
      consistent_majority += acc_majority;
      consistent_anti += acc_anti;
      ++consistent_count;
    }
  }
  avg_majority /= BigInt(n_universes);
  avg_anti /= BigInt(n_universes);
  consistent_majority /= BigInt(consistent_count);
  consistent_anti /= BigInt(consistent_count);

  const bool tie = avg_majority == Rational(1, 2) &&
                   avg_anti == Rational(1, 2) &&
                   consistent_majority == Rational(1, 2) &&
                   consistent_anti == Rational(1, 2);

  RunOutcome out;
  out.results = json{
      {"check", "meta_induction"},
      {"outer_universes", n_universes},
      {"actual_bits", actual},
      {"train_xs", train_xs},
      {"actual_accuracy_majority",
       to_double(accuracy(*majority, actual))},
      {"actual_accuracy_anti_majority", to_double(accuracy(*anti, actual))},
      {"universe_average_majority", to_double(avg_majority)},
      {"universe_average_anti_majority", to_double(avg_anti)},
      {"consistent_average_majority", to_double(consistent_majority)},
      {"consistent_average_anti_majority", to_double(consistent_anti)},
      {"pass", tie}};
  out.pass = tie;
  return out;
}

RunOutcome run_mco_benchmark(const json& config, const RunOptions&) {
  validate_keys(config, {"x_size", "y_levels", "num_seeds", "m_total",
                         "candidates", "folds"},
                {"refit_every", "seed"});
  const int y_levels = config.at("y_levels").get<int>();
  std::vector<double> y_values(static_cast<std::size_t>(y_levels));
  for (int i = 0; i < y_levels; ++i) {
    y_values[static_cast<std::size_t>(i)] = i;
  }
  // Benchmark spaces are sampled, never enumerated, so the cap is lifted.
  const FiniteSpace space(config.at("x_size").get<int>(), y_values,
                          UINT64_MAX);
  const int num_seeds = config.at("num_seeds").get<int>();
  const int m_total = config.at("m_total").get<int>();
  const auto candidates = config.at("candidates").get<std::vector<double>>();
  const int folds = config.at("folds").get<int>();
  const int refit_every = config.value("refit_every", 1);
  const std::uint64_t seed = config.value("seed", 0);

  struct Scheme {
    std::string name;
    std::vector<double> candidates;
    int refit_every;
  };
  std::vector<Scheme> schemes;
  schemes.push_back({"cv", candidates, refit_every});
  for (double t : candidates) {
    std::ostringstream name;
    name << "fixed_T=" << t;
    schemes.push_back({name.str(), {t}, 0});
  }

  std::ostringstream csv;
  csv << "scheme,seed,step,best_so_far\n";
  std::vector<std::vector<double>> best(
      schemes.size(), std::vector<double>(static_cast<std::size_t>(num_seeds)));
  for (int s = 0; s < num_seeds; ++s) {
    const ObjectiveTable f =
        make_smooth_objective(space, derive_stream(seed, s));
    const std::uint64_t run_seed = derive_stream(seed + 1, s);
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      const McoResult result =
          run_mco(space, f, m_total, schemes[i].candidates, folds,
                  schemes[i].refit_every, run_seed);
      best[i][static_cast<std::size_t>(s)] =
          result.schedule.back().best_so_far;
      for (const auto& record : result.schedule) {
        csv << schemes[i].name << ',' << s << ',' << record.step << ','
            << record.best_so_far << '\n';
      }
    }
  }

  json per_scheme = json::array();
  std::vector<double> means(schemes.size());
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    double sum = 0;
    for (double b : best[i]) sum += b;
    means[i] = sum / num_seeds;
    per_scheme.push_back(
        json{{"scheme", schemes[i].name}, {"mean_best_found", means[i]}});
  }
  std::size_t worst_fixed = 1;
  for (std::size_t i = 2; i < schemes.size(); ++i) {
    if (means[i] > means[worst_fixed]) worst_fixed = i;
  }
  // Paired one-sided comparison at 95%: upper confidence bound of
  // mean(best_cv - best_worst_fixed) must not exceed zero.
  double mean_diff = 0;
  for (int s = 0; s < num_seeds; ++s) {
    mean_diff += best[0][static_cast<std::size_t>(s)] -
                 best[worst_fixed][static_cast<std::size_t>(s)];
  }
  mean_diff /= num_seeds;
  double var = 0;
  for (int s = 0; s < num_seeds; ++s) {
    const double d = best[0][static_cast<std::size_t>(s)] -
                     best[worst_fixed][static_cast<std::size_t>(s)] - mean_diff;
    var += d * d;
  }
  const double se =
      num_seeds > 1 ? std::sqrt(var / (num_seeds - 1)) / std::sqrt(num_seeds)
                    : 0;
  const double upper95 = mean_diff + 1.645 * se;
  const bool pass = upper95 <= 0;

  RunOutcome out;
  out.results = json{{"check", "mco_benchmark"},
                     {"per_scheme", per_scheme},
                     {"worst_fixed_scheme", schemes[worst_fixed].name},
                     {"paired_mean_diff", mean_diff},
                     {"paired_se", se},
                     {"paired_upper95", upper95},
                     {"pass", pass}};
  out.csv = csv.str();
  out.pass = pass;
  return out;
}

}  // namespace

std::vector<std::string> list_experiments() { return kExperiments; }

ObjectiveTable make_smooth_objective(const FiniteSpace& space,
                                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = space.x_size();
  const int levels = space.y_size();
  std::vector<double> amplitude(3), phase(3);
  for (int k = 0; k < 3; ++k) {
    amplitude[static_cast<std::size_t>(k)] = 0.5 + rng.next_double();
    phase[static_cast<std::size_t>(k)] =
        2.0 * std::numbers::pi * rng.next_double();
  }
  std::vector<double> g(static_cast<std::size_t>(n));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int x = 0; x < n; ++x) {
    double v = 0;
    for (int k = 0; k < 3; ++k) {
      v += amplitude[static_cast<std::size_t>(k)] *
           std::cos(2.0 * std::numbers::pi * (k + 1) * x / n +
                    phase[static_cast<std::size_t>(k)]);
    }
    g[static_cast<std::size_t>(x)] = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<int> y_index(static_cast<std::size_t>(n), 0);
  if (hi > lo) {
    for (int x = 0; x < n; ++x) {
      const int idx = static_cast<int>((g[static_cast<std::size_t>(x)] - lo) /
                                       (hi - lo) * levels);
      y_index[static_cast<std::size_t>(x)] = std::clamp(idx, 0, levels - 1);
    }
  }
  return ObjectiveTable(space, std::move(y_index));
}

ExperimentReport run_experiment(const json& config,
                                const RunOptions& options) {
  if (!config.is_object()) throw Error("config must be a JSON object");
  if (!config.contains("schema_version") ||
      config.at("schema_version").get<int>() != kSchemaVersion) {
    throw Error("config schema error: schema_version must be " +
                std::to_string(kSchemaVersion));
  }
  if (!config.contains("experiment")) {
    throw Error("config schema error: missing required key \"experiment\"");
  }
  const std::string kind = config.at("experiment").get<std::string>();

  RunOutcome outcome;
  if (kind == "nfl_sum_sweep") {
    outcome = run_nfl_sum_sweep(config, options);
  } else if (kind == "inner_product") {
    outcome = run_inner_product(config, options);
  } else if (kind == "prior_mc") {
    outcome = run_prior_mc(config, options);
  } else if (kind == "supervised_nfl") {
    outcome = run_supervised_nfl(config, options);
  } else if (kind == "cv_vs_anticv") {
    outcome = run_cv_vs_anticv(config, options);
  } else if (kind == "conditioning_contrast") {
    outcome = run_conditioning_contrast(config, options);
  } else if (kind == "meta_induction") {
    outcome = run_meta_induction(config, options);
  } else if (kind == "mco_benchmark") {
    outcome = run_mco_benchmark(config, options);
  } else {
    throw Error("config schema error: unknown experiment \"" + kind + "\"");
  }

  ExperimentReport report;
  report.kind = kind;
  report.body = json{{"config", config},
                     {"results", outcome.results},
                     {"pass", outcome.pass},
                     {"fingerprint",
                      json{{"generator", kGeneratorName},
                           {"arithmetic", arithmetic_name(options.arithmetic)},
                           {"schema_version", kSchemaVersion}}}};
  report.csv = outcome.csv;
  report.pass = outcome.pass;
  return report;
}

ExperimentReport run_experiment_file(const std::string& config_path,
                                     const RunOptions& options) {
  std::ifstream in(config_path);
  if (!in) throw Error("cannot open config file: " + config_path);
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw Error("config parse error in " + config_path + ": " + e.what());
  }
  return run_experiment(config, options);
}

ExperimentReport run_meta_induction_experiment(const json& config,
                                               const RunOptions& options) {
  json full = config;
  full["experiment"] = "meta_induction";
  if (!full.contains("schema_version")) full["schema_version"] = kSchemaVersion;
  return run_experiment(full, options);
}

std::string write_report(const ExperimentReport& report,
                         const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  const std::string report_path = (dir / (report.kind + "_report.json")).string();
  std::ofstream out(report_path);
  if (!out) throw Error("cannot write report: " + report_path);
  out << report.body.dump(2) << '\n';
  if (!report.csv.empty()) {
    emit_plot_data(report, (dir / (report.kind + "_plot.csv")).string());
  }
  return report_path;
}

void emit_plot_data(const ExperimentReport& report,
                    const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw Error("cannot write plot data: " + csv_path);
  out << report.csv;
}

}  // namespace nfllab
