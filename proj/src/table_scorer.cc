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

#include "surprisal_split/table_scorer.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "surprisal_split/text.h"

namespace surprisal_split {

TableScorer::TableScorer(std::string identity) : identity_(std::move(identity)) {}

std::string TableScorer::MaskKey(std::span<const std::string> words,
                                 size_t mask_index) {
  std::vector<std::string> masked(words.begin(), words.end());
  if (mask_index < masked.size()) masked[mask_index] = "<mask>";
  return Join(masked, " ");
}

std::string TableScorer::ContextKey(std::span<const std::string> context) {
  return Join(context, " ");
}

TableScorer::Table TableScorer::ToTable(Distribution dist) {
  Table table;
  for (auto& [word, prob] : dist) {
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw std::invalid_argument("table probability out of [0,1] for " + word);
    }
    table[std::move(word)] = prob;
  }
  return table;
}

void TableScorer::SetDefaultMasked(Distribution dist) {
  default_masked_ = ToTable(std::move(dist));
}
void TableScorer::SetMasked(const std::string& key, Distribution dist) {
  masked_[key] = ToTable(std::move(dist));
}
void TableScorer::SetDefaultConditional(Distribution dist) {
  default_conditional_ = ToTable(std::move(dist));
}
void TableScorer::SetConditional(const std::string& key, Distribution dist) {
  conditional_[key] = ToTable(std::move(dist));
}

const TableScorer::Table& TableScorer::Lookup(
    const std::map<std::string, Table>& tables, const Table& fallback,
    const std::string& key) const {
  auto it = tables.find(key);
  return it == tables.end() ? fallback : it->second;
}

double TableScorer::LogOf(const Table& table, std::string_view word) const {
  auto it = table.find(word);
  if (it == table.end()) return LogFloor();
  return Floor(std::log(it->second));
}

std::vector<ScoredWord> TableScorer::MaskedTopk(
    std::span<const std::string> words, size_t mask_index, size_t k) const {
  CheckMaskArguments(words, mask_index, k);
  const Table& table =
      Lookup(masked_, default_masked_, MaskKey(words, mask_index));
  std::vector<ScoredWord> scored;
  for (const auto& [word, prob] : table) {
    scored.push_back({word, LogOf(table, word)});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredWord& a, const ScoredWord& b) {
                     return a.logprob > b.logprob;
                   });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

double TableScorer::MaskedLogprob(std::span<const std::string> words,
                                  size_t mask_index,
                                  std::string_view fill) const {
  CheckMaskArguments(words, mask_index, 1);
  return LogOf(Lookup(masked_, default_masked_, MaskKey(words, mask_index)),
               fill);
}

double TableScorer::ConditionalLogprob(std::span<const std::string> context,
                                       std::string_view target) const {
  return LogOf(
      Lookup(conditional_, default_conditional_, ContextKey(context)), target);
}

ScorerDescriptor TableScorer::Descriptor() const {
  std::set<std::string> types;
  for (const auto& [word, p] : default_masked_) types.insert(word);
  for (const auto& [word, p] : default_conditional_) types.insert(word);
  for (const auto& [key, table] : masked_) {
    for (const auto& [word, p] : table) types.insert(word);
  }
  for (const auto& [key, table] : conditional_) {
    for (const auto& [word, p] : table) types.insert(word);
  }
  return {ScorerKind::kTable, identity_, std::max<size_t>(types.size(), 1)};
}

}  // namespace surprisal_split
