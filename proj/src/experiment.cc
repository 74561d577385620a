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

#include "surprisal_split/experiment.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <utility>

#include "surprisal_split/csv.h"
#include "surprisal_split/errors.h"
#include "surprisal_split/text.h"

namespace surprisal_split {
namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. fn must not throw.
void ParallelFor(size_t n, size_t jobs, const std::function<void(size_t)>& fn) {
  jobs = std::max<size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

int ConditionRank(const std::string& c) {
  if (c == kControlCondition) return 0;
  if (c == "Sem") return 1;
  if (c == "SemCrit") return 2;
  if (c == "Synt") return 3;
  return 4;
}

bool IsTrailingPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Groups by condition, each group sorted by item id.
std::map<std::string, std::vector<const Decomposition*>> ByCondition(
    const std::vector<Decomposition>& decompositions) {
  std::map<std::string, std::vector<const Decomposition*>> groups;
  for (const auto& d : decompositions) groups[d.condition].push_back(&d);
  for (auto& [condition, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const Decomposition* a, const Decomposition* b) {
                return a->item_id < b->item_id;
              });
  }
  return groups;
}

}  // namespace

bool ConditionLess(const std::string& a, const std::string& b) {
  const int ra = ConditionRank(a);
  const int rb = ConditionRank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double StandardError(const std::vector<double>& values) {
  const size_t n = values.size();
  if (n < 2) return 0.0;
  const double mean = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1)) /
         std::sqrt(static_cast<double>(n));
}

std::vector<std::string> TokenizeStimulus(std::string_view sentence,
                                          size_t target_index) {
  std::vector<std::string> words = SplitWhitespace(sentence);
  if (target_index >= words.size()) {
    throw std::out_of_range("target_index " + std::to_string(target_index) +
                            " is outside the sentence's " +
                            std::to_string(words.size()) + " words");
  }
  std::string& target = words[target_index];
  size_t end = target.size();
  while (end > 0 && IsTrailingPunct(target[end - 1])) --end;
  if (end > 0 && end < target.size()) {
    std::string punct = target.substr(end);
    target.resize(end);
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(target_index) + 1,
                 std::move(punct));
  }
  return words;
}

std::vector<Stimulus> ParseStimuli(std::string_view csv_text) {
  const CsvTable table = ParseCsv(csv_text);
  if (table.header.empty() || table.rows.empty()) {
    throw SchemaError("stimuli file contains no stimuli");
  }
  const size_t c_item = table.RequireColumn("item_id");
  const size_t c_condition = table.RequireColumn("condition");
  const size_t c_sentence = table.RequireColumn("sentence");
  const size_t c_target = table.RequireColumn("target_index");
  const std::optional<size_t> c_cloze = table.Column("human_cloze");

  std::vector<Stimulus> stimuli;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : table.rows) {
    Stimulus s;
    s.item_id = Trim(row.fields[c_item]);
    s.condition = Trim(row.fields[c_condition]);
    s.sentence = row.fields[c_sentence];
    if (s.item_id.empty()) throw SchemaError("empty item_id", row.line);
    if (s.condition.empty()) throw SchemaError("empty condition", row.line);

    const std::string index_text = Trim(row.fields[c_target]);
    const char* first = index_text.data();
    const char* last = first + index_text.size();
    auto [ptr, ec] = std::from_chars(first, last, s.target_index);
    if (index_text.empty() || ec != std::errc() || ptr != last) {
      throw SchemaError("target_index '" + index_text +
                            "' is not a non-negative integer",
                        row.line);
    }
    try {
      s.words = TokenizeStimulus(s.sentence, s.target_index);
    } catch (const std::out_of_range& e) {
      throw SchemaError("item " + s.item_id + " (" + s.condition +
                            "): " + e.what(),
                        row.line);
    }
    if (StripPunctuation(s.target()).empty()) {
      throw SchemaError("item " + s.item_id + " (" + s.condition +
                            "): target word '" + s.target() +
                            "' has no letters",
                        row.line);
    }

    if (c_cloze) {
      const std::string cloze_text = Trim(row.fields[*c_cloze]);
      if (!cloze_text.empty()) {
        double cloze = 0.0;
        try {
          size_t used = 0;
          cloze = std::stod(cloze_text, &used);
          if (used != cloze_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw SchemaError("human_cloze '" + cloze_text + "' is not a number",
                            row.line);
        }
        if (!(cloze >= 0.0 && cloze <= 1.0)) {
          throw SchemaError("human_cloze must lie in [0, 1]", row.line);
        }
        s.human_cloze = cloze;
      }
    }

    if (!seen.emplace(s.item_id, s.condition).second) {
      throw SchemaError("duplicate stimulus (" + s.item_id + ", " +
                            s.condition + ")",
                        row.line);
    }
    stimuli.push_back(std::move(s));
  }
  return stimuli;
}

std::vector<Stimulus> LoadStimuli(const std::filesystem::path& path) {
  return ParseStimuli(ReadTextFile(path));
}

std::vector<std::string> ValidateQuadruplets(
    const std::vector<Stimulus>& stimuli) {
  std::map<std::string, const Stimulus*> controls;
  for (const auto& s : stimuli) {
    if (s.condition == kControlCondition) controls[s.item_id] = &s;
  }
  std::vector<std::string> warnings;
  for (const auto& s : stimuli) {
    if (s.condition == kControlCondition) continue;
    auto it = controls.find(s.item_id);
    if (it == controls.end()) continue;
    const Stimulus& control = *it->second;
    const std::string where = "item " + s.item_id + " (" + s.condition + ")";
    if (s.target_index != control.target_index) {
      warnings.push_back(where + ": target index differs from Control");
      continue;
    }
    if (s.words.size() != control.words.size()) {
      warnings.push_back(where + ": word count differs from Control");
      continue;
    }
    size_t differing = 0;
    for (size_t i = 0; i < s.words.size(); ++i) {
      if (i != s.target_index && s.words[i] != control.words[i]) ++differing;
    }
    if (differing > 0) {
      warnings.push_back(where + ": " + std::to_string(differing) +
                         " word(s) away from the target differ from Control");
    }
  }
  return warnings;
}

ItemErrors::ItemErrors(std::vector<ItemFailure> failures)
    : std::runtime_error([&] {
        std::string message = std::to_string(failures.size()) +
                              " item(s) failed:";
        for (const auto& f : failures) {
          message += "\n  item " + f.item_id + " (" + f.condition +
                     "): " + f.message;
        }
        return message;
      }()),
      failures_(std::move(failures)) {}

bool ItemErrors::AnyScorerUnavailable() const {
  return std::any_of(failures_.begin(), failures_.end(),
                     [](const ItemFailure& f) { return f.scorer_unavailable; });
}

std::vector<ScoredTarget> ScoreStimuli(const std::vector<Stimulus>& stimuli,
                                       const Scorer& scorer,
                                       const NoiseParams& params,
                                       size_t jobs) {
  params.Validate();
  std::vector<ScoredTarget> scored(stimuli.size());
  std::vector<std::optional<ItemFailure>> failed(stimuli.size());
  ParallelFor(stimuli.size(), jobs, [&](size_t i) {
    const Stimulus& s = stimuli[i];
    try {
      scored[i] = ScoreTarget(s.words, s.target_index, scorer, params);
    } catch (const ScorerUnavailable& e) {
      failed[i] = ItemFailure{s.item_id, s.condition, e.what(), true};
    } catch (const std::exception& e) {
      failed[i] = ItemFailure{s.item_id, s.condition, e.what(), false};
    }
  });
  std::vector<ItemFailure> failures;
  for (auto& f : failed) {
    if (f) failures.push_back(std::move(*f));
  }
  if (!failures.empty()) throw ItemErrors(std::move(failures));
  return scored;
}

std::vector<Decomposition> DecomposeStimuli(
    const std::vector<Stimulus>& stimuli,
    const std::vector<ScoredTarget>& scored, const NoiseParams& params) {
  std::vector<Decomposition> out;
  out.reserve(stimuli.size());
  std::vector<ItemFailure> failures;
  for (size_t i = 0; i < stimuli.size(); ++i) {
    try {
      Decomposition d = DecomposeScored(scored[i], params);
      d.item_id = stimuli[i].item_id;
      d.condition = stimuli[i].condition;
      out.push_back(std::move(d));
    } catch (const std::exception& e) {
      char lambda[32];
      std::snprintf(lambda, sizeof lambda, "%.6g", params.lambda);
      failures.push_back({stimuli[i].item_id, stimuli[i].condition,
                          std::string("lambda ") + lambda + ": " + e.what(),
                          false});
    }
  }
  if (!failures.empty()) throw ItemErrors(std::move(failures));
  return out;
}

std::vector<Decomposition> DecomposeStimuli(
    const std::vector<Stimulus>& stimuli, const Scorer& scorer,
    const NoiseParams& params, size_t jobs) {
  return DecomposeStimuli(stimuli, ScoreStimuli(stimuli, scorer, params, jobs),
                          params);
}

EffectSizes ComputeEffectSizes(
    const std::vector<Decomposition>& decompositions) {
  std::map<std::string, const Decomposition*> control;
  for (const auto& d : decompositions) {
    if (d.condition == kControlCondition) control[d.item_id] = &d;
  }
  std::set<std::string> missing;
  for (const auto& d : decompositions) {
    if (d.condition != kControlCondition && !control.contains(d.item_id)) {
      missing.insert(d.item_id);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw DataError("no Control row for item(s): " + list);
  }

  EffectSizes effects;
  if (!decompositions.empty()) effects.lambda = decompositions.front().lambda;
  auto groups = ByCondition(decompositions);
  std::vector<std::string> conditions;
  for (const auto& [condition, group] : groups) {
    if (condition != kControlCondition) conditions.push_back(condition);
  }
  std::sort(conditions.begin(), conditions.end(), ConditionLess);
  for (const auto& condition : conditions) {
    ConditionEffect effect;
    effect.condition = condition;
    for (const Decomposition* d : groups[condition]) {
      const Decomposition& base = *control.at(d->item_id);
      effect.item_ids.push_back(d->item_id);
      effect.A_diffs.push_back(d->heuristic_A - base.heuristic_A);
      effect.B_diffs.push_back(d->discrepancy_B - base.discrepancy_B);
    }
    effect.n_items = effect.item_ids.size();
    effect.mean_A_diff = Mean(effect.A_diffs);
    effect.mean_B_diff = Mean(effect.B_diffs);
    effect.se_A_diff = StandardError(effect.A_diffs);
    effect.se_B_diff = StandardError(effect.B_diffs);
    effects.conditions.push_back(std::move(effect));
  }
  return effects;
}

EffectSizes RunConditionExperiment(const std::vector<Stimulus>& stimuli,
                                   const Scorer& scorer,
                                   const NoiseParams& params, size_t jobs) {
  // Fail on missing Control before spending any scorer calls.
  std::vector<Decomposition> shells;
  for (const auto& s : stimuli) {
    Decomposition d;
    d.item_id = s.item_id;
    d.condition = s.condition;
    shells.push_back(std::move(d));
  }
  ComputeEffectSizes(shells);
  return ComputeEffectSizes(DecomposeStimuli(stimuli, scorer, params, jobs));
}

std::vector<SweepCell> SummarizeDecompositions(
    const std::vector<Decomposition>& decompositions) {
  auto groups = ByCondition(decompositions);
  std::vector<std::string> conditions;
  for (const auto& [condition, group] : groups) conditions.push_back(condition);
  std::sort(conditions.begin(), conditions.end(), ConditionLess);

  std::vector<SweepCell> cells;
  for (const auto& condition : conditions) {
    std::vector<double> a, b, s;
    for (const Decomposition* d : groups[condition]) {
      a.push_back(d->heuristic_A);
      b.push_back(d->discrepancy_B);
      s.push_back(d->surprisal_S);
    }
    SweepCell cell;
    cell.lambda = groups[condition].front()->lambda;
    cell.condition = condition;
    cell.mean_A = Mean(a);
    cell.mean_B = Mean(b);
    cell.mean_S = Mean(s);
    cell.se_A = StandardError(a);
    cell.se_B = StandardError(b);
    cell.n = a.size();
    cells.push_back(std::move(cell));
  }
  return cells;
}

SweepReport RunLambdaSweep(const std::vector<Stimulus>& stimuli,
                           const Scorer& scorer,
                           const std::vector<double>& lambdas,
                           const NoiseParams& params, size_t jobs,
                           std::vector<Decomposition>* per_item) {
  if (lambdas.empty()) throw std::invalid_argument("lambda grid is empty");
  for (double lambda : lambdas) {
    NoiseParams p = params;
    p.lambda = lambda;
    p.Validate();
  }
  SweepReport report;
  report.scorer = scorer.Descriptor();
  report.params = params;
  report.lambdas = lambdas;

  const std::vector<ScoredTarget> scored =
      ScoreStimuli(stimuli, scorer, params, jobs);
  for (double lambda : lambdas) {
    NoiseParams p = params;
    p.lambda = lambda;
    std::vector<Decomposition> decomps = DecomposeStimuli(stimuli, scored, p);
    for (auto& cell : SummarizeDecompositions(decomps)) {
      report.rows.push_back(std::move(cell));
    }
    if (per_item != nullptr) {
      per_item->insert(per_item->end(), decomps.begin(), decomps.end());
    }
  }
  return report;
}

std::vector<TrendCheck> CheckSweepTrend(const SweepReport& report,
                                        size_t max_reversals,
                                        double tolerance) {
  std::map<std::string, std::vector<const SweepCell*>> by_condition;
  for (const auto& cell : report.rows) by_condition[cell.condition].push_back(&cell);
  std::vector<std::string> conditions;
  for (const auto& [condition, cells] : by_condition) conditions.push_back(condition);
  std::sort(conditions.begin(), conditions.end(), ConditionLess);

  std::vector<TrendCheck> checks;
  for (const auto& condition : conditions) {
    auto cells = by_condition[condition];
    std::stable_sort(cells.begin(), cells.end(),
                     [](const SweepCell* a, const SweepCell* b) {
                       return a->lambda < b->lambda;
                     });
    for (const char* quantity : {"A", "B"}) {
      const bool rising = quantity[0] == 'A';
      TrendCheck check{condition, quantity};
      for (size_t i = 1; i < cells.size(); ++i) {
        const double prev = rising ? cells[i - 1]->mean_A : cells[i - 1]->mean_B;
        const double cur = rising ? cells[i]->mean_A : cells[i]->mean_B;
        const double against = rising ? prev - cur : cur - prev;
        if (against > 0.0) {
          ++check.reversals;
          check.worst_reversal = std::max(check.worst_reversal, against);
        }
      }
      check.pass = check.reversals <= max_reversals &&
                   check.worst_reversal <= tolerance;
      checks.push_back(std::move(check));
    }
  }
  return checks;
}

SurprisalComparisonTable SurprisalComparison(
    const std::vector<Stimulus>& stimuli, const Scorer& scorer, size_t jobs) {
  std::vector<double> surprisal(stimuli.size());
  std::vector<std::optional<ItemFailure>> failed(stimuli.size());
  ParallelFor(stimuli.size(), jobs, [&](size_t i) {
    const Stimulus& s = stimuli[i];
    try {
      const auto context = std::span<const std::string>(s.words).first(s.target_index);
      surprisal[i] =
          -scorer.ConditionalLogprob(context, StripPunctuation(s.target()));
    } catch (const ScorerUnavailable& e) {
      failed[i] = ItemFailure{s.item_id, s.condition, e.what(), true};
    } catch (const std::exception& e) {
      failed[i] = ItemFailure{s.item_id, s.condition, e.what(), false};
    }
  });
  std::vector<ItemFailure> failures;
  for (auto& f : failed) {
    if (f) failures.push_back(std::move(*f));
  }
  if (!failures.empty()) throw ItemErrors(std::move(failures));

  // Sorted by item within each condition so the means are order-free.
  std::map<std::string, std::vector<std::pair<std::string, size_t>>> groups;
  for (size_t i = 0; i < stimuli.size(); ++i) {
    groups[stimuli[i].condition].emplace_back(stimuli[i].item_id, i);
  }
  std::vector<std::string> conditions;
  for (auto& [condition, members] : groups) {
    std::sort(members.begin(), members.end());
    conditions.push_back(condition);
  }
  std::sort(conditions.begin(), conditions.end(), ConditionLess);

  SurprisalComparisonTable table;
  table.scorer = scorer.Descriptor();
  for (const auto& condition : conditions) {
    ComparisonRow row;
    row.condition = condition;
    std::vector<double> s_values, cloze_values;
    for (const auto& [item, i] : groups[condition]) {
      s_values.push_back(surprisal[i]);
      if (stimuli[i].human_cloze) cloze_values.push_back(*stimuli[i].human_cloze);
    }
    row.n = s_values.size();
    row.mean_surprisal = Mean(s_values);
    row.n_cloze = cloze_values.size();
    if (!cloze_values.empty()) {
      row.mean_cloze = Mean(cloze_values);
      table.has_cloze = true;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace surprisal_split
