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

#ifndef SURPRISAL_SPLIT_DECOMPOSITION_H_
#define SURPRISAL_SPLIT_DECOMPOSITION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surprisal_split/noisy_channel.h"
#include "surprisal_split/scorer.h"

namespace surprisal_split {

// Surprisal of one target word split into heuristic surprise and
// discrepancy signal. All quantities in nats.
struct Decomposition {
  std::string item_id;
  std::string condition;
  double lambda = 0.0;
  double surprisal_S = 0.0;
  double heuristic_A = 0.0;
  double discrepancy_B = 0.0;  // S - A; negative values are kept
  double posterior_entropy = 0.0;
  double veridical_posterior = 0.0;
  std::optional<size_t> veridical_rank;
  std::string top_candidate;
  size_t n_candidates = 0;
};

// Everything about one target that does not depend on lambda: the candidate
// set and the left-to-right log-probability of each candidate (and of the
// veridical word) in the veridical context.
struct ScoredTarget {
  std::vector<Candidate> candidates;
  std::vector<double> candidate_logprobs;  // parallel to `candidates`
  std::string veridical_word;
  double veridical_logprob = 0.0;
};

ScoredTarget ScoreTarget(std::span<const std::string> sentence,
                         size_t target_index, const Scorer& scorer,
                         const NoiseParams& params);

// S = -ln p(x_t | x_<t); A = sum_w p(w | x) * -ln p(w | x_<t); B = S - A.
// Only the target is corrected, so the context is the veridical one.
Decomposition DecomposeScored(const ScoredTarget& target,
                              const NoiseParams& params,
                              Posterior* posterior_out = nullptr);

Decomposition Decompose(std::span<const std::string> sentence,
                        size_t target_index, const Scorer& scorer,
                        const NoiseParams& params);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_DECOMPOSITION_H_
