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

#include "surprisal_split/ngram_scorer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "surprisal_split/errors.h"
#include "surprisal_split/text.h"

namespace surprisal_split {
namespace {

// FNV-1a, 64 bit.
uint64_t Fingerprint(const Corpus& corpus) {
  uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](unsigned char c) {
    hash ^= c;
    hash *= 1099511628211ULL;
  };
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence) {
      for (unsigned char c : token) mix(c);
      mix(' ');
    }
    mix('\n');
  }
  return hash;
}

}  // namespace

Corpus LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = SplitWhitespace(line);
    if (!tokens.empty()) corpus.push_back(std::move(tokens));
  }
  if (in.bad()) throw IoError("error reading corpus file: " + path.string());
  return corpus;
}

NgramScorer NgramScorer::Train(const Corpus& corpus, int order, double alpha,
                               double log_floor) {
  if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("smoothing alpha must be a positive number");
  }
  Corpus folded;
  for (const auto& sentence : corpus) {
    if (sentence.empty()) continue;
    auto& out = folded.emplace_back();
    for (const auto& token : sentence) out.push_back(CaseFold(token));
  }
  if (folded.empty()) throw std::invalid_argument("n-gram corpus is empty");

  NgramScorer model;
  model.order_ = order;
  model.alpha_ = alpha;
  model.log_floor_ = log_floor;

  std::set<std::string> types;
  for (const auto& sentence : folded) types.insert(sentence.begin(), sentence.end());
  types.erase(std::string(kUnknownWord));
  model.vocab_.assign(types.begin(), types.end());
  model.vocab_.emplace_back(kUnknownWord);
  for (size_t i = 0; i < model.vocab_.size(); ++i) {
    model.ids_.emplace(model.vocab_[i], static_cast<int32_t>(i));
  }
  model.bos_id_ = static_cast<int32_t>(model.vocab_.size());

  const size_t history_len = static_cast<size_t>(order - 1);
  for (const auto& sentence : folded) {
    std::vector<int32_t> padded(history_len, model.bos_id_);
    for (const auto& token : sentence) padded.push_back(model.ids_.at(token));
    for (size_t pos = history_len; pos < padded.size(); ++pos) {
      const int32_t word = padded[pos];
      // Every suffix of the full history, including the empty one.
      for (size_t len = 0; len <= history_len; ++len) {
        std::vector<int32_t> history(padded.begin() + (pos - len),
                                     padded.begin() + pos);
        auto& counts = model.histories_[std::move(history)];
        ++counts.total;
        ++counts.next[word];
      }
    }
  }

  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(Fingerprint(folded)));
  char params[64];
  std::snprintf(params, sizeof params, "order=%d;alpha=%.6g;", order, alpha);
  model.fingerprint_ = std::string("ngram:") + params + "corpus=" + hex;
  return model;
}

int32_t NgramScorer::WordId(std::string_view word) const {
  auto it = ids_.find(CaseFold(word));
  if (it == ids_.end()) return static_cast<int32_t>(vocab_.size() - 1);
  return it->second;
}

std::vector<int32_t> NgramScorer::History(
    std::span<const std::string> context) const {
  const size_t history_len = static_cast<size_t>(order_ - 1);
  std::vector<int32_t> history(history_len, bos_id_);
  const size_t take = std::min(history_len, context.size());
  for (size_t i = 0; i < take; ++i) {
    history[history_len - take + i] =
        WordId(context[context.size() - take + i]);
  }
  return history;
}

const NgramScorer::HistoryCounts& NgramScorer::LongestSeenHistory(
    std::vector<int32_t> history) const {
  while (true) {
    auto it = histories_.find(history);
    if (it != histories_.end() && it->second.total > 0) return it->second;
    // The empty history always has counts, so this terminates.
    history.erase(history.begin());
  }
}

double NgramScorer::Probability(const HistoryCounts& counts,
                                int32_t word) const {
  uint64_t joint = 0;
  if (auto it = counts.next.find(word); it != counts.next.end()) {
    joint = it->second;
  }
  return (static_cast<double>(joint) + alpha_) /
         (static_cast<double>(counts.total) +
          alpha_ * static_cast<double>(vocab_.size()));
}

std::vector<ScoredWord> NgramScorer::MaskedTopk(
    std::span<const std::string> words, size_t mask_index, size_t k) const {
  CheckMaskArguments(words, mask_index, k);
  const auto& counts = LongestSeenHistory(History(words.first(mask_index)));
  std::vector<ScoredWord> scored;
  scored.reserve(vocab_.size() - 1);
  // <unk> is a smoothing bucket, not a fill.
  for (size_t id = 0; id + 1 < vocab_.size(); ++id) {
    scored.push_back(
        {vocab_[id],
         Floor(std::log(Probability(counts, static_cast<int32_t>(id))))});
  }
  const size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [](const ScoredWord& a, const ScoredWord& b) {
                      if (a.logprob != b.logprob) return a.logprob > b.logprob;
                      return a.word < b.word;
                    });
  scored.resize(keep);
  return scored;
}

double NgramScorer::MaskedLogprob(std::span<const std::string> words,
                                  size_t mask_index,
                                  std::string_view fill) const {
  CheckMaskArguments(words, mask_index, 1);
  return ConditionalLogprob(words.first(mask_index), fill);
}

double NgramScorer::ConditionalLogprob(std::span<const std::string> context,
                                       std::string_view target) const {
  const auto& counts = LongestSeenHistory(History(context));
  return Floor(std::log(Probability(counts, WordId(target))));
}

ScorerDescriptor NgramScorer::Descriptor() const {
  return {ScorerKind::kNgram, fingerprint_, vocab_.size()};
}

}  // namespace surprisal_split
