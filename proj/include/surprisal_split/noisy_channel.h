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

#ifndef SURPRISAL_SPLIT_NOISY_CHANNEL_H_
#define SURPRISAL_SPLIT_NOISY_CHANNEL_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surprisal_split/lexdist.h"
#include "surprisal_split/scorer.h"

namespace surprisal_split {

enum class DistanceMode { kRaw, kNormalized };

std::string_view DistanceModeName(DistanceMode mode);
// Accepts "raw" or "normalized"; throws std::invalid_argument otherwise.
DistanceMode ParseDistanceMode(std::string_view name);

// Noise model p(x | w) ∝ exp(-lambda * d(x, w)) plus candidate generation
// settings.
struct NoiseParams {
  double lambda = 0.0;
  DistanceMode distance_mode = DistanceMode::kNormalized;
  size_t top_k = 100;
  bool force_include_veridical = true;

  // Throws std::invalid_argument for negative or non-finite lambda, or
  // top_k == 0.
  void Validate() const;
};

struct Candidate {
  std::string word;     // stripped and case-folded
  std::string surface;  // as returned by the scorer
  double prior_logprob = 0.0;
  EditDistance distance;
  double posterior_prob = 0.0;
};

double DistanceValue(const EditDistance& distance, DistanceMode mode);

struct Posterior {
  // Ranked by prior_logprob - lambda * d, ties by word.
  std::vector<Candidate> candidates;
  std::string veridical_word;
  std::optional<size_t> veridical_rank;

  // 0 when the veridical word is not among the candidates.
  double VeridicalProbability() const;
  // Shannon entropy in nats.
  double Entropy() const;
};

// Masks sentence[target_index], takes the scorer's top_k fills as heuristic
// words, normalizes and deduplicates them (keeping the best prior), and pairs
// each with its edit distance to the veridical word. With
// force_include_veridical the veridical word is appended, with its own
// masked-fill log-probability, if the scorer did not rank it.
//
// Throws std::invalid_argument for a bad index or a target that is empty
// after stripping; scorer errors propagate.
std::vector<Candidate> GenerateCandidates(std::span<const std::string> sentence,
                                          size_t target_index,
                                          const Scorer& scorer,
                                          const NoiseParams& params);

// p(w | x) = softmax_w [prior_logprob(w) - lambda * d(x, w)], evaluated with
// max subtraction. Throws std::invalid_argument on an empty candidate list.
Posterior ComputePosterior(std::vector<Candidate> candidates,
                           const NoiseParams& params,
                           std::string veridical_word);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_NOISY_CHANNEL_H_
