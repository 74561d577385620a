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

#include "surprisal_split/scorer.h"

#include <stdexcept>

namespace surprisal_split {

std::string_view ScorerKindName(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kNgram:
      return "ngram";
    case ScorerKind::kRemote:
      return "remote";
    case ScorerKind::kTable:
      return "table";
  }
  return "unknown";
}

double Scorer::Floor(double logprob) const {
  // NaN and -inf both collapse to the floor.
  if (!(logprob >= LogFloor())) return LogFloor();
  return logprob;
}

void CheckMaskArguments(std::span<const std::string> words, size_t mask_index,
                        size_t k) {
  if (mask_index >= words.size()) {
    throw std::invalid_argument("mask index " + std::to_string(mask_index) +
                                " out of range for " +
                                std::to_string(words.size()) + " words");
  }
  if (k == 0) throw std::invalid_argument("k must be at least 1");
}

}  // namespace surprisal_split
