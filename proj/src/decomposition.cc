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

#include "surprisal_split/decomposition.h"

#include <map>

#include "surprisal_split/text.h"

namespace surprisal_split {

ScoredTarget ScoreTarget(std::span<const std::string> sentence,
                         size_t target_index, const Scorer& scorer,
                         const NoiseParams& params) {
  ScoredTarget scored;
  scored.candidates = GenerateCandidates(sentence, target_index, scorer, params);
  scored.veridical_word = NormalizeWord(sentence[target_index]);

  const auto context = sentence.first(target_index);
  scored.veridical_logprob = scorer.ConditionalLogprob(
      context, StripPunctuation(sentence[target_index]));
  scored.candidate_logprobs.reserve(scored.candidates.size());
  for (const auto& c : scored.candidates) {
    // The veridical candidate must score exactly like x_t, whatever surface
    // form the masked model returned for it.
    if (c.word == scored.veridical_word) {
      scored.candidate_logprobs.push_back(scored.veridical_logprob);
    } else {
      scored.candidate_logprobs.push_back(
          scorer.ConditionalLogprob(context, StripPunctuation(c.surface)));
    }
  }
  return scored;
}

Decomposition DecomposeScored(const ScoredTarget& target,
                              const NoiseParams& params,
                              Posterior* posterior_out) {
  std::map<std::string, double> logprob_of;
  for (size_t i = 0; i < target.candidates.size(); ++i) {
    logprob_of.emplace(target.candidates[i].word, target.candidate_logprobs[i]);
  }
  Posterior posterior =
      ComputePosterior(target.candidates, params, target.veridical_word);

  Decomposition d;
  d.lambda = params.lambda;
  d.surprisal_S = -target.veridical_logprob;
  double heuristic = 0.0;
  for (const auto& c : posterior.candidates) {
    heuristic += c.posterior_prob * -logprob_of.at(c.word);
  }
  d.heuristic_A = heuristic;
  d.discrepancy_B = d.surprisal_S - d.heuristic_A;
  d.posterior_entropy = posterior.Entropy();
  d.veridical_posterior = posterior.VeridicalProbability();
  d.veridical_rank = posterior.veridical_rank;
  d.top_candidate = posterior.candidates.front().word;
  d.n_candidates = posterior.candidates.size();
  if (posterior_out != nullptr) *posterior_out = std::move(posterior);
  return d;
}

Decomposition Decompose(std::span<const std::string> sentence,
                        size_t target_index, const Scorer& scorer,
                        const NoiseParams& params) {
  return DecomposeScored(ScoreTarget(sentence, target_index, scorer, params),
                         params);
}

}  // namespace surprisal_split
