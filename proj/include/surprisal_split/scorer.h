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

#ifndef SURPRISAL_SPLIT_SCORER_H_
#define SURPRISAL_SPLIT_SCORER_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surprisal_split {

// ln(1e-12). Every probability a scorer hands out is clamped to at least
// this, so surprisals stay finite.
inline const double kDefaultLogFloor = std::log(1e-12);

struct ScoredWord {
  std::string word;
  double logprob = 0.0;  // natural log

  friend bool operator==(const ScoredWord&, const ScoredWord&) = default;
};

enum class ScorerKind { kNgram, kRemote, kTable };

std::string_view ScorerKindName(ScorerKind kind);

// Identifies the model behind a scorer. `identity` is stable across runs
// for the same model or corpus and is echoed into every report.
struct ScorerDescriptor {
  ScorerKind kind = ScorerKind::kNgram;
  std::string identity;
  size_t vocabulary_size = 1;
};

// The language-model boundary. Implementations must be safe to call from
// several threads at once.
class Scorer {
 public:
  virtual ~Scorer() = default;

  // Up to `k` distinct fills for words[mask_index], ranked by descending
  // log-probability. Log-probabilities come from the full distribution and
  // are not renormalized over the returned slice.
  virtual std::vector<ScoredWord> MaskedTopk(std::span<const std::string> words,
                                             size_t mask_index,
                                             size_t k) const = 0;

  // Log-probability of one specific fill at the masked position.
  virtual double MaskedLogprob(std::span<const std::string> words,
                               size_t mask_index,
                               std::string_view fill) const = 0;

  // ln p(target | context) under the left-to-right model. `context` may be
  // empty.
  virtual double ConditionalLogprob(std::span<const std::string> context,
                                    std::string_view target) const = 0;

  virtual ScorerDescriptor Descriptor() const = 0;

  virtual double LogFloor() const { return kDefaultLogFloor; }

 protected:
  double Floor(double logprob) const;
};

// Throws std::invalid_argument unless mask_index < words.size() and k >= 1.
void CheckMaskArguments(std::span<const std::string> words, size_t mask_index,
                        size_t k);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_SCORER_H_
