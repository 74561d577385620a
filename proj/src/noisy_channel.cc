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

#include "surprisal_split/noisy_channel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "surprisal_split/text.h"

namespace surprisal_split {

std::string_view DistanceModeName(DistanceMode mode) {
  return mode == DistanceMode::kRaw ? "raw" : "normalized";
}

DistanceMode ParseDistanceMode(std::string_view name) {
  if (name == "raw") return DistanceMode::kRaw;
  if (name == "normalized") return DistanceMode::kNormalized;
  throw std::invalid_argument("unknown distance mode '" + std::string(name) +
                              "' (expected raw or normalized)");
}

void NoiseParams::Validate() const {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("lambda must be a finite value >= 0");
  }
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");
}

double DistanceValue(const EditDistance& distance, DistanceMode mode) {
  return mode == DistanceMode::kRaw ? static_cast<double>(distance.raw)
                                    : distance.normalized;
}

double Posterior::VeridicalProbability() const {
  return veridical_rank ? candidates[*veridical_rank].posterior_prob : 0.0;
}

double Posterior::Entropy() const {
  double h = 0.0;
  for (const auto& c : candidates) {
    if (c.posterior_prob > 0.0) h -= c.posterior_prob * std::log(c.posterior_prob);
  }
  return h;
}

std::vector<Candidate> GenerateCandidates(std::span<const std::string> sentence,
                                          size_t target_index,
                                          const Scorer& scorer,
                                          const NoiseParams& params) {
  params.Validate();
  if (target_index >= sentence.size()) {
    throw std::invalid_argument("target index " + std::to_string(target_index) +
                                " out of range for " +
                                std::to_string(sentence.size()) + " words");
  }
  const std::string veridical = NormalizeWord(sentence[target_index]);
  if (veridical.empty()) {
    throw std::invalid_argument("target word '" + sentence[target_index] +
                                "' is empty after stripping punctuation");
  }

  std::map<std::string, Candidate> by_word;
  for (auto& fill : scorer.MaskedTopk(sentence, target_index, params.top_k)) {
    std::string word = NormalizeWord(fill.word);
    if (word.empty()) continue;
    auto it = by_word.find(word);
    if (it != by_word.end()) {
      if (fill.logprob > it->second.prior_logprob) {
        it->second.prior_logprob = fill.logprob;
        it->second.surface = std::move(fill.word);
      }
      continue;
    }
    Candidate c;
    c.word = word;
    c.surface = std::move(fill.word);
    c.prior_logprob = fill.logprob;
    by_word.emplace(std::move(word), std::move(c));
  }
  if (params.force_include_veridical && !by_word.contains(veridical)) {
    Candidate c;
    c.word = veridical;
    c.surface = StripPunctuation(sentence[target_index]);
    c.prior_logprob =
        scorer.MaskedLogprob(sentence, target_index, sentence[target_index]);
    by_word.emplace(veridical, std::move(c));
  }

  std::vector<Candidate> out;
  out.reserve(by_word.size());
  for (auto& [word, c] : by_word) {
    c.distance = Levenshtein(veridical, word);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.prior_logprob > b.prior_logprob;
                   });
  return out;
}

Posterior ComputePosterior(std::vector<Candidate> candidates,
                           const NoiseParams& params,
                           std::string veridical_word) {
  params.Validate();
  if (candidates.empty()) {
    throw std::invalid_argument("posterior needs at least one candidate");
  }
  std::vector<double> scores(candidates.size());
  double max_score = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < candidates.size(); ++i) {
    scores[i] = candidates[i].prior_logprob -
                params.lambda *
                    DistanceValue(candidates[i].distance, params.distance_mode);
    max_score = std::max(max_score, scores[i]);
  }
  double total = 0.0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].posterior_prob = std::exp(scores[i] - max_score);
    total += candidates[i].posterior_prob;
  }
  for (auto& c : candidates) c.posterior_prob /= total;

  std::vector<size_t> order(candidates.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return candidates[a].word < candidates[b].word;
  });

  Posterior posterior;
  posterior.veridical_word = NormalizeWord(veridical_word);
  posterior.candidates.reserve(candidates.size());
  for (size_t i : order) {
    if (candidates[i].word == posterior.veridical_word) {
      posterior.veridical_rank = posterior.candidates.size();
    }
    posterior.candidates.push_back(std::move(candidates[i]));
  }
  return posterior;
}

}  // namespace surprisal_split
