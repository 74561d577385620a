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

#ifndef SURPRISAL_SPLIT_NGRAM_SCORER_H_
#define SURPRISAL_SPLIT_NGRAM_SCORER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "surprisal_split/scorer.h"

namespace surprisal_split {

using Corpus = std::vector<std::vector<std::string>>;

// One sentence per line, whitespace-tokenized. Blank lines are skipped.
// Throws IoError if the file cannot be read.
Corpus LoadCorpus(const std::filesystem::path& path);

// Add-alpha smoothed n-gram model with backoff over history length.
//
// For a history h of up to order-1 words (left-padded with a sentence-start
// symbol), the model uses the longest suffix of h that was observed in
// training and returns
//
//   p(w | h) = (c(h, w) + alpha) / (c(h) + alpha * |V|)
//
// which is normalized over the vocabulary V (corpus types plus <unk>). The
// masked prior is the left-context conditional only; an n-gram model has no
// access to the right context. Tokens are case-folded on the way in.
// Immutable after training.
class NgramScorer : public Scorer {
 public:
  static constexpr std::string_view kUnknownWord = "<unk>";

  // Throws std::invalid_argument on an empty corpus, order < 1 or
  // alpha <= 0.
  static NgramScorer Train(const Corpus& corpus, int order, double alpha,
                           double log_floor = kDefaultLogFloor);

  std::vector<ScoredWord> MaskedTopk(std::span<const std::string> words,
                                     size_t mask_index,
                                     size_t k) const override;
  double MaskedLogprob(std::span<const std::string> words, size_t mask_index,
                       std::string_view fill) const override;
  double ConditionalLogprob(std::span<const std::string> context,
                            std::string_view target) const override;
  ScorerDescriptor Descriptor() const override;
  double LogFloor() const override { return log_floor_; }

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  // Vocabulary in id order; the last entry is <unk>.
  const std::vector<std::string>& vocabulary() const { return vocab_; }

 private:
  struct HistoryCounts {
    uint64_t total = 0;
    std::unordered_map<int32_t, uint64_t> next;
  };

  NgramScorer() = default;

  int32_t WordId(std::string_view word) const;
  std::vector<int32_t> History(std::span<const std::string> context) const;
  const HistoryCounts& LongestSeenHistory(std::vector<int32_t> history) const;
  double Probability(const HistoryCounts& counts, int32_t word) const;

  int order_ = 1;
  double alpha_ = 1.0;
  double log_floor_ = kDefaultLogFloor;
  int32_t bos_id_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int32_t> ids_;
  std::map<std::vector<int32_t>, HistoryCounts> histories_;
  std::string fingerprint_;
};

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_NGRAM_SCORER_H_
