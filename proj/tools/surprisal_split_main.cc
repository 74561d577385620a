// Copyright 2026 The Surprisal Split Authors.
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

// Command-line front end: decompose, effects, sweep, compare, fit and
// simulate-amplitudes.
//
// Exit codes: 0 success, 1 data error (missing Control rows, empty joins,
// degenerate fits, failed items), 2 configuration error, 3 I/O or input
// schema error, 4 scoring backend unavailable.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surprisal_split/analysis.h"
#include "surprisal_split/errors.h"
#include "surprisal_split/experiment.h"
#include "surprisal_split/ngram_scorer.h"
#include "surprisal_split/noisy_channel.h"
#include "surprisal_split/remote_scorer.h"
#include "surprisal_split/report.h"

namespace ss = surprisal_split;

namespace {

enum ExitCode {
  kOk = 0,
  kDataError = 1,
  kConfigError = 2,
  kIoError = 3,
  kScorerError = 4,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Large enough that every non-veridical candidate is suppressed.
constexpr double kEndpointLambda = 1e6;

struct RunConfig {
  std::string scorer = "ngram";
  std::string corpus;
  int order = 3;
  double alpha = 0.1;
  std::string lm_url;
  size_t max_in_flight = 4;

  double lambda = -1.0;
  bool lambda_set = false;
  std::string lambdas_text;
  bool with_endpoints = false;
  bool check_trend = false;
  size_t top_k = 100;
  std::string distance_mode = "normalized";
  bool no_force_veridical = false;
  size_t jobs = 1;

  std::string stimuli;
  std::string decompositions;
  std::string amplitudes;
  std::string per_item;
  bool no_standardize = false;
  bool item_means = false;

  size_t subjects = 20;
  double n400_slope = -1.0;
  double p600_slope = 1.0;
  double noise_sd = 1.0;
  uint64_t seed = 1;

  std::string output;
  std::string format = "csv";
};

void AddScorerOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--scorer", cfg.scorer, "Language-model backend")
      ->check(CLI::IsMember({"ngram", "remote"}))
      ->capture_default_str();
  cmd->add_option("--corpus", cfg.corpus,
                  "Training corpus for the n-gram scorer (one sentence per line)");
  cmd->add_option("--order", cfg.order, "n-gram order")->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha, "Add-alpha smoothing constant")
      ->capture_default_str();
  cmd->add_option("--lm-url", cfg.lm_url, "Base URL of the scoring service")
      ->envname(ss::kLmUrlEnv);
  cmd->add_option("--max-in-flight", cfg.max_in_flight,
                  "Concurrent requests to the scoring service")
      ->capture_default_str();
}

void AddNoiseOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--top-k", cfg.top_k, "Masked-fill candidates per target")
      ->capture_default_str();
  cmd->add_option("--distance-mode", cfg.distance_mode,
                  "Edit distance fed to the noise model")
      ->check(CLI::IsMember({"raw", "normalized"}))
      ->capture_default_str();
  cmd->add_flag("--no-force-veridical", cfg.no_force_veridical,
                "Do not add the veridical word when the scorer misses it");
  cmd->add_option("--jobs", cfg.jobs, "Worker threads for item evaluation")
      ->capture_default_str();
}

void AddOutputOptions(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-o,--output", cfg.output, "Report path (default: stdout)");
  cmd->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::unique_ptr<ss::Scorer> MakeScorer(const RunConfig& cfg) {
  if (cfg.scorer == "ngram") {
    if (cfg.corpus.empty()) {
      throw ConfigError("--scorer ngram requires --corpus");
    }
    if (!cfg.lm_url.empty() && std::getenv(ss::kLmUrlEnv) == nullptr) {
      throw ConfigError("--lm-url is only valid with --scorer remote");
    }
    if (cfg.order < 1) throw ConfigError("--order must be at least 1");
    if (!(cfg.alpha > 0.0)) throw ConfigError("--alpha must be positive");
    ss::Corpus corpus = ss::LoadCorpus(cfg.corpus);
    if (corpus.empty()) {
      throw ConfigError("corpus " + cfg.corpus + " contains no sentences");
    }
    return std::make_unique<ss::NgramScorer>(
        ss::NgramScorer::Train(corpus, cfg.order, cfg.alpha));
  }
  if (!cfg.corpus.empty()) {
    throw ConfigError("--corpus is only valid with --scorer ngram");
  }
  if (cfg.lm_url.empty()) {
    throw ConfigError(std::string("--scorer remote requires --lm-url or ") +
                      ss::kLmUrlEnv);
  }
  if (cfg.max_in_flight == 0) {
    throw ConfigError("--max-in-flight must be at least 1");
  }
  ss::RemoteScorerOptions options;
  options.url = cfg.lm_url;
  options.max_in_flight = cfg.max_in_flight;
  return ss::RemoteScorer::Connect(options);
}

ss::NoiseParams MakeNoiseParams(const RunConfig& cfg, double lambda) {
  ss::NoiseParams params;
  params.lambda = lambda;
  params.top_k = cfg.top_k;
  params.distance_mode = ss::ParseDistanceMode(cfg.distance_mode);
  params.force_include_veridical = !cfg.no_force_veridical;
  try {
    params.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.jobs == 0) throw ConfigError("--jobs must be at least 1");
  return params;
}

double RequireLambda(const RunConfig& cfg) {
  if (!cfg.lambda_set) throw ConfigError("--lambda is required");
  if (!std::isfinite(cfg.lambda) || cfg.lambda < 0.0) {
    throw ConfigError("--lambda must be a finite value >= 0");
  }
  return cfg.lambda;
}

std::vector<double> ParseLambdas(const RunConfig& cfg) {
  std::vector<double> lambdas;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw ConfigError("--lambdas has an empty entry");
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (*end != '\0' || !std::isfinite(v) || v < 0.0) {
      throw ConfigError("--lambdas entry '" + token +
                        "' is not a finite value >= 0");
    }
    lambdas.push_back(v);
    token.clear();
  };
  for (char c : cfg.lambdas_text) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      token.push_back(c);
    }
  }
  flush();
  if (cfg.with_endpoints) {
    lambdas.push_back(0.0);
    lambdas.push_back(kEndpointLambda);
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  return lambdas;
}

ss::ConfigEcho EchoScoring(const RunConfig& cfg, const std::string& command) {
  ss::ConfigEcho echo = {{"command", command}, {"scorer", cfg.scorer}};
  if (cfg.scorer == "ngram") {
    echo.emplace_back("corpus", cfg.corpus);
    echo.emplace_back("order", std::to_string(cfg.order));
    echo.emplace_back("alpha", ss::FormatNumber(cfg.alpha));
  } else {
    echo.emplace_back("lm_url", cfg.lm_url);
  }
  echo.emplace_back("top_k", std::to_string(cfg.top_k));
  echo.emplace_back("distance_mode", cfg.distance_mode);
  echo.emplace_back("force_include_veridical",
                    cfg.no_force_veridical ? "false" : "true");
  echo.emplace_back("stimuli", cfg.stimuli);
  return echo;
}

void Emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  ss::WriteFile(cfg.output, content);
}

std::vector<ss::Stimulus> LoadStimuliChecked(const RunConfig& cfg) {
  if (cfg.stimuli.empty()) throw ConfigError("--stimuli is required");
  auto stimuli = ss::LoadStimuli(cfg.stimuli);
  for (const auto& warning : ss::ValidateQuadruplets(stimuli)) {
    std::cerr << "warning: " << warning << "\n";
  }
  return stimuli;
}

int RunDecompose(const RunConfig& cfg) {
  const double lambda = RequireLambda(cfg);
  const ss::NoiseParams params = MakeNoiseParams(cfg, lambda);
  const auto stimuli = LoadStimuliChecked(cfg);
  const auto scorer = MakeScorer(cfg);
  const auto rows = ss::DecomposeStimuli(stimuli, *scorer, params, cfg.jobs);
  ss::ConfigEcho echo = EchoScoring(cfg, "decompose");
  echo.emplace_back("lambda", ss::FormatNumber(lambda));
  Emit(cfg, ss::RenderDecompositions(rows, ss::ParseReportFormat(cfg.format),
                                     {scorer->Descriptor(), echo}));
  return kOk;
}

int RunEffects(const RunConfig& cfg) {
  const double lambda = RequireLambda(cfg);
  const ss::NoiseParams params = MakeNoiseParams(cfg, lambda);
  const auto stimuli = LoadStimuliChecked(cfg);
  const auto scorer = MakeScorer(cfg);
  const auto effects =
      ss::RunConditionExperiment(stimuli, *scorer, params, cfg.jobs);
  ss::ConfigEcho echo = EchoScoring(cfg, "effects");
  echo.emplace_back("lambda", ss::FormatNumber(lambda));
  Emit(cfg, ss::RenderEffectSizes(effects, ss::ParseReportFormat(cfg.format),
                                  {scorer->Descriptor(), echo}));
  return kOk;
}

int RunSweep(const RunConfig& cfg) {
  if (cfg.lambda_set) {
    throw ConfigError("sweep takes --lambdas, not --lambda");
  }
  if (cfg.lambdas_text.empty()) throw ConfigError("--lambdas is required");
  const std::vector<double> lambdas = ParseLambdas(cfg);
  const ss::NoiseParams params = MakeNoiseParams(cfg, 0.0);
  const auto stimuli = LoadStimuliChecked(cfg);
  const auto scorer = MakeScorer(cfg);
  std::vector<ss::Decomposition> per_item;
  const auto report = ss::RunLambdaSweep(stimuli, *scorer, lambdas, params,
                                         cfg.jobs, &per_item);
  ss::ConfigEcho echo = EchoScoring(cfg, "sweep");
  std::string grid;
  for (double l : lambdas) grid += (grid.empty() ? "" : ",") + ss::FormatNumber(l);
  echo.emplace_back("lambdas", grid);
  const auto format = ss::ParseReportFormat(cfg.format);
  Emit(cfg, ss::RenderSweepReport(report, format, echo));
  if (!cfg.per_item.empty()) {
    ss::WriteFile(cfg.per_item,
                  ss::RenderDecompositions(per_item, format,
                                           {report.scorer, echo}));
  }
  if (cfg.check_trend) {
    bool all = true;
    for (const auto& check : ss::CheckSweepTrend(report)) {
      all = all && check.pass;
      std::cerr << (check.pass ? "PASS" : "FAIL") << " trend " << check.quantity
                << (check.quantity == "A" ? " non-decreasing" : " non-increasing")
                << " [" << check.condition << "] reversals=" << check.reversals
                << " worst=" << ss::FormatNumber(check.worst_reversal) << "\n";
    }
    std::cerr << (all ? "PASS" : "FAIL") << " sweep trend overall\n";
  }
  return kOk;
}

int RunCompare(const RunConfig& cfg) {
  const auto stimuli = LoadStimuliChecked(cfg);
  if (cfg.jobs == 0) throw ConfigError("--jobs must be at least 1");
  const auto scorer = MakeScorer(cfg);
  const auto table = ss::SurprisalComparison(stimuli, *scorer, cfg.jobs);
  ss::ConfigEcho echo = {{"command", "compare"}, {"scorer", cfg.scorer}};
  if (cfg.scorer == "ngram") echo.emplace_back("corpus", cfg.corpus);
  echo.emplace_back("stimuli", cfg.stimuli);
  Emit(cfg, ss::RenderComparison(table, ss::ParseReportFormat(cfg.format), echo));
  return kOk;
}

int RunFit(const RunConfig& cfg) {
  if (cfg.decompositions.empty()) throw ConfigError("--decompositions is required");
  if (cfg.amplitudes.empty()) throw ConfigError("--amplitudes is required");
  const auto decomps = ss::LoadDecompositions(cfg.decompositions);
  const auto amps = ss::LoadAmplitudes(cfg.amplitudes);
  const auto fits = ss::FitComponentTable(decomps, amps, !cfg.no_standardize,
                                          cfg.item_means);
  ss::ConfigEcho echo = {{"command", "fit"},
                         {"decompositions", cfg.decompositions},
                         {"amplitudes", cfg.amplitudes},
                         {"standardize", cfg.no_standardize ? "false" : "true"},
                         {"item_means", cfg.item_means ? "true" : "false"}};
  Emit(cfg, ss::RenderFits(fits, ss::ParseReportFormat(cfg.format), echo));
  return kOk;
}

int RunSimulate(const RunConfig& cfg) {
  if (cfg.decompositions.empty()) throw ConfigError("--decompositions is required");
  if (cfg.subjects == 0) throw ConfigError("--subjects must be at least 1");
  if (!(cfg.noise_sd >= 0.0)) throw ConfigError("--noise-sd must be >= 0");
  const auto decomps = ss::LoadDecompositions(cfg.decompositions);
  Emit(cfg, ss::RenderAmplitudes(ss::SimulateAmplitudes(
                decomps, cfg.subjects, cfg.n400_slope, cfg.p600_slope,
                cfg.noise_sd, cfg.seed)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Split word surprisal into heuristic surprise (N400) and "
               "discrepancy signal (P600)",
               "surprisal_split"};
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  app.require_subcommand(1);

  auto* decompose = app.add_subcommand(
      "decompose", "Per-item S, A and B at one lambda");
  decompose->add_option("--stimuli", cfg.stimuli, "Stimuli CSV")->required();
  decompose->add_option("--lambda", cfg.lambda, "Noise penalty rate (>= 0)")
      ->required();
  AddScorerOptions(decompose, cfg);
  AddNoiseOptions(decompose, cfg);
  AddOutputOptions(decompose, cfg);

  auto* effects = app.add_subcommand(
      "effects", "Per-condition effect sizes relative to Control at one lambda");
  effects->add_option("--stimuli", cfg.stimuli, "Stimuli CSV")->required();
  effects->add_option("--lambda", cfg.lambda, "Noise penalty rate (>= 0)")
      ->required();
  AddScorerOptions(effects, cfg);
  AddNoiseOptions(effects, cfg);
  AddOutputOptions(effects, cfg);

  auto* sweep = app.add_subcommand(
      "sweep", "Condition-averaged A and B over a lambda grid");
  sweep->add_option("--stimuli", cfg.stimuli, "Stimuli CSV")->required();
  sweep->add_option("--lambdas", cfg.lambdas_text,
                    "Comma-separated lambda grid")
      ->required();
  sweep->add_option("--lambda", cfg.lambda, "Not accepted; use --lambdas");
  sweep->add_flag("--with-endpoints", cfg.with_endpoints,
                  "Add lambda = 0 and lambda = 1e6 to the grid");
  sweep->add_flag("--check-trend", cfg.check_trend,
                  "Print pass/fail lines for the lambda trend to stderr");
  sweep->add_option("--per-item", cfg.per_item,
                    "Also write per-item decompositions for every lambda");
  AddScorerOptions(sweep, cfg);
  AddNoiseOptions(sweep, cfg);
  AddOutputOptions(sweep, cfg);

  auto* compare = app.add_subcommand(
      "compare", "Mean human cloze next to mean model surprisal per condition");
  compare->add_option("--stimuli", cfg.stimuli, "Stimuli CSV")->required();
  AddScorerOptions(compare, cfg);
  compare->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  AddOutputOptions(compare, cfg);

  auto* fit = app.add_subcommand(
      "fit", "OLS fits of A, B and S against N400/P600 amplitudes");
  fit->add_option("--decompositions", cfg.decompositions,
                  "Decomposition report from `decompose` (CSV or JSON)")
      ->required();
  fit->add_option("--amplitudes", cfg.amplitudes, "Amplitudes CSV")->required();
  fit->add_flag("--no-standardize", cfg.no_standardize,
                "Report raw-scale slopes instead of standardized ones");
  fit->add_flag("--item-means", cfg.item_means,
                "Average amplitudes over subjects before fitting");
  AddOutputOptions(fit, cfg);

  auto* simulate = app.add_subcommand(
      "simulate-amplitudes",
      "Seeded synthetic amplitudes linear in A (N400) and B (P600)");
  simulate->add_option("--decompositions", cfg.decompositions,
                       "Decomposition report from `decompose`")
      ->required();
  simulate->add_option("--subjects", cfg.subjects, "Simulated subjects")
      ->capture_default_str();
  simulate->add_option("--n400-slope", cfg.n400_slope, "N400 amplitude per nat of A")
      ->capture_default_str();
  simulate->add_option("--p600-slope", cfg.p600_slope, "P600 amplitude per nat of B")
      ->capture_default_str();
  simulate->add_option("--noise-sd", cfg.noise_sd, "Gaussian noise SD")
      ->capture_default_str();
  simulate->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  simulate->add_option("-o,--output", cfg.output, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  for (auto* cmd : {decompose, effects, sweep}) {
    if (cmd->parsed() && cmd->count("--lambda") > 0) cfg.lambda_set = true;
  }

  try {
    if (decompose->parsed()) return RunDecompose(cfg);
    if (effects->parsed()) return RunEffects(cfg);
    if (sweep->parsed()) return RunSweep(cfg);
    if (compare->parsed()) return RunCompare(cfg);
    if (fit->parsed()) return RunFit(cfg);
    if (simulate->parsed()) return RunSimulate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ss::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const ss::SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kIoError;
  } catch (const ss::ScorerUnavailable& e) {
    std::cerr << "scorer error: " << e.what() << "\n";
    return kScorerError;
  } catch (const ss::ItemErrors& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.AnyScorerUnavailable() ? kScorerError : kDataError;
  } catch (const ss::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
