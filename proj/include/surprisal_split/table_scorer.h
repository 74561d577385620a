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

#ifndef SURPRISAL_SPLIT_TABLE_SCORER_H_
#define SURPRISAL_SPLIT_TABLE_SCORER_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "surprisal_split/scorer.h"

namespace surprisal_split {

// A scorer read off hand-written probability tables. Used for worked
// examples and for constructing stimulus sets with known behavior.
//
// Masked distributions are keyed by the sentence with the masked slot
// replaced by "<mask>" (see MaskKey); conditional distributions are keyed by
// the space-joined left context (see ContextKey). Lookups that miss a key
// fall back to the default distribution; words missing from a distribution
// get the log floor. Probabilities are used as given, without
// renormalization.
class TableScorer : public Scorer {
 public:
  using Distribution = std::vector<std::pair<std::string, double>>;

  explicit TableScorer(std::string identity = "table");

  static std::string MaskKey(std::span<const std::string> words,
                             size_t mask_index);
  static std::string ContextKey(std::span<const std::string> context);

  void SetDefaultMasked(Distribution dist);
  void SetMasked(const std::string& key, Distribution dist);
  void SetDefaultConditional(Distribution dist);
  void SetConditional(const std::string& key, Distribution dist);

  std::vector<ScoredWord> MaskedTopk(std::span<const std::string> words,
                                     size_t mask_index,
                                     size_t k) const override;
  double MaskedLogprob(std::span<const std::string> words, size_t mask_index,
                       std::string_view fill) const override;
  double ConditionalLogprob(std::span<const std::string> context,
                            std::string_view target) const override;
  ScorerDescriptor Descriptor() const override;

 private:
  using Table = std::map<std::string, double, std::less<>>;

  static Table ToTable(Distribution dist);
  const Table& Lookup(const std::map<std::string, Table>& tables,
                      const Table& fallback, const std::string& key) const;
  double LogOf(const Table& table, std::string_view word) const;

  std::string identity_;
  Table default_masked_;
  Table default_conditional_;
  std::map<std::string, Table> masked_;
  std::map<std::string, Table> conditional_;
};

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_TABLE_SCORER_H_
