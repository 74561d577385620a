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

#ifndef SURPRISAL_SPLIT_EXPERIMENT_H_
#define SURPRISAL_SPLIT_EXPERIMENT_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surprisal_split/decomposition.h"
#include "surprisal_split/noisy_channel.h"
#include "surprisal_split/scorer.h"

namespace surprisal_split {

inline constexpr std::string_view kControlCondition = "Control";

// One sentence of a stimulus set.
//
// `words` is the whitespace tokenization of `sentence`, except that trailing
// punctuation on the target word is split off into its own token, so that
// words[target_index] is the bare target.
struct Stimulus {
  std::string item_id;
  std::string condition;
  std::string sentence;
  std::vector<std::string> words;
  size_t target_index = 0;
  std::optional<double> human_cloze;

  const std::string& target() const { return words[target_index]; }
};

// Tokenizes a sentence around a zero-based target word. Throws
// std::out_of_range when target_index is not a word position.
std::vector<std::string> TokenizeStimulus(std::string_view sentence,
                                          size_t target_index);

// Reads `item_id,condition,sentence,target_index[,human_cloze]`.
// Throws SchemaError (with the row) for malformed rows, out-of-range target
// indices, duplicate (item_id, condition) pairs, or a file without rows;
// IoError if unreadable.
std::vector<Stimulus> LoadStimuli(const std::filesystem::path& path);
std::vector<Stimulus> ParseStimuli(std::string_view csv_text);

// Non-fatal checks: items whose conditions differ in length or in words
// away from the target. One message per finding.
std::vector<std::string> ValidateQuadruplets(
    const std::vector<Stimulus>& stimuli);

// Orders Control, Sem, SemCrit, Synt first, then other labels
// lexicographically.
bool ConditionLess(const std::string& a, const std::string& b);

struct ItemFailure {
  std::string item_id;
  std::string condition;
  std::string message;
  bool scorer_unavailable = false;
};

// Raised after every item has been attempted, listing all failures.
class ItemErrors : public std::runtime_error {
 public:
  explicit ItemErrors(std::vector<ItemFailure> failures);
  const std::vector<ItemFailure>& failures() const { return failures_; }
  bool AnyScorerUnavailable() const;

 private:
  std::vector<ItemFailure> failures_;
};

// Scores every stimulus (candidates plus conditionals), fanning out over
// `jobs` workers. Results are in input order and do not depend on `jobs`.
std::vector<ScoredTarget> ScoreStimuli(const std::vector<Stimulus>& stimuli,
                                       const Scorer& scorer,
                                       const NoiseParams& params,
                                       size_t jobs = 1);

// Decomposes every stimulus at params.lambda.
std::vector<Decomposition> DecomposeStimuli(
    const std::vector<Stimulus>& stimuli, const std::vector<ScoredTarget>& scored,
    const NoiseParams& params);
std::vector<Decomposition> DecomposeStimuli(
    const std::vector<Stimulus>& stimuli, const Scorer& scorer,
    const NoiseParams& params, size_t jobs = 1);

// Per-condition differences to the matched Control item.
struct ConditionEffect {
  std::string condition;
  double mean_A_diff = 0.0;
  double mean_B_diff = 0.0;
  double se_A_diff = 0.0;  // by-item standard error
  double se_B_diff = 0.0;
  std::vector<std::string> item_ids;  // sorted
  std::vector<double> A_diffs;        // parallel to item_ids
  std::vector<double> B_diffs;
  size_t n_items = 0;
};

struct EffectSizes {
  double lambda = 0.0;
  std::vector<ConditionEffect> conditions;  // ConditionLess order, no Control
};

// Throws DataError listing every item that has a non-Control row but no
// Control row.
EffectSizes ComputeEffectSizes(const std::vector<Decomposition>& decompositions);
EffectSizes RunConditionExperiment(const std::vector<Stimulus>& stimuli,
                                   const Scorer& scorer,
                                   const NoiseParams& params, size_t jobs = 1);

struct SweepCell {
  double lambda = 0.0;
  std::string condition;
  double mean_A = 0.0;
  double mean_B = 0.0;
  double mean_S = 0.0;
  double se_A = 0.0;
  double se_B = 0.0;
  size_t n = 0;
};

struct SweepReport {
  ScorerDescriptor scorer;
  NoiseParams params;  // lambda unused; the grid is in `lambdas`
  std::vector<double> lambdas;
  std::vector<SweepCell> rows;  // lambda-major, ConditionLess within
};

// Condition means of A, B, S with by-item standard errors, for
// decompositions that all share one lambda.
std::vector<SweepCell> SummarizeDecompositions(
    const std::vector<Decomposition>& decompositions);

// Scores each stimulus once and re-weights the posterior per lambda.
// Throws std::invalid_argument for an empty grid or a negative lambda.
SweepReport RunLambdaSweep(const std::vector<Stimulus>& stimuli,
                           const Scorer& scorer,
                           const std::vector<double>& lambdas,
                           const NoiseParams& params, size_t jobs = 1,
                           std::vector<Decomposition>* per_item = nullptr);

// Checks that, per condition, mean A does not fall and mean B does not rise
// as lambda grows, allowing up to `max_reversals` steps against the trend
// each no larger than `tolerance` nats.
struct TrendCheck {
  std::string condition;
  std::string quantity;  // "A" or "B"
  size_t reversals = 0;
  double worst_reversal = 0.0;
  bool pass = true;
};
std::vector<TrendCheck> CheckSweepTrend(const SweepReport& report,
                                        size_t max_reversals = 1,
                                        double tolerance = 0.1);

struct ComparisonRow {
  std::string condition;
  std::optional<double> mean_cloze;  // absent if no row carries cloze
  size_t n_cloze = 0;
  double mean_surprisal = 0.0;
  size_t n = 0;
};

struct SurprisalComparisonTable {
  ScorerDescriptor scorer;
  bool has_cloze = false;
  std::vector<ComparisonRow> rows;
};

// Per-condition mean human cloze (passed through) next to mean model
// surprisal of the target.
SurprisalComparisonTable SurprisalComparison(
    const std::vector<Stimulus>& stimuli, const Scorer& scorer,
    size_t jobs = 1);

// Sample mean and standard error of the mean (0 for fewer than two values).
double Mean(const std::vector<double>& values);
double StandardError(const std::vector<double>& values);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_EXPERIMENT_H_
