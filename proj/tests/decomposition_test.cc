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


#include <cmath>
#include <random>

#include "doctest.h"
#include "surprisal_split/decomposition.h"
#include "surprisal_split/ngram_scorer.h"
#include "surprisal_split/table_scorer.h"

namespace surprisal_split {
namespace {

using Words = std::vector<std::string>;

// anecdote/antidote/hearse with masked priors .7/.2/.1 and conditional
// probabilities .5/.01/.001 after "an amusing".
TableScorer ToyScorer() {
  TableScorer scorer;
  scorer.SetDefaultMasked({{"anecdote", 0.7}, {"antidote", 0.2}, {"hearse", 0.1}});
  scorer.SetDefaultConditional({{"anecdote", 0.5}, {"antidote", 0.01}, {"hearse", 0.001}});
  return scorer;
}

const Words kSentence = {"an", "amusing", "antidote", "."};

NoiseParams Params(double lambda) {
  NoiseParams p;
  p.lambda = lambda;
  return p;
}

// Sum of posterior * (log p(candidate) - log p(veridical)), computed from
// the posterior and scored target independently of DecomposeScored.
double Bracket(const ScoredTarget& target, const Posterior& posterior) {
  double total = 0.0;
  for (const auto& c : posterior.candidates) {
    for (size_t i = 0; i < target.candidates.size(); ++i) {
      if (target.candidates[i].word == c.word) {
        total += c.posterior_prob * (target.candidate_logprobs[i] - target.veridical_logprob);
      }
    }
  }
  return total;
}

TEST_CASE("toy decomposition at lambda zero") {
  const TableScorer scorer = ToyScorer();
  const Decomposition d = Decompose(kSentence, 2, scorer, Params(0.0));
  const double expected_A =
      -(0.7 * std::log(0.5) + 0.2 * std::log(0.01) + 0.1 * std::log(0.001));
  CHECK(d.surprisal_S == doctest::Approx(-std::log(0.01)).epsilon(1e-12));
  CHECK(d.heuristic_A == doctest::Approx(expected_A).epsilon(1e-12));
  CHECK(d.discrepancy_B == doctest::Approx(-std::log(0.01) - expected_A).epsilon(1e-12));
  CHECK(d.top_candidate == "anecdote");
  CHECK(d.n_candidates == 3);
  CHECK(d.veridical_rank == 1u);
  CHECK(d.veridical_posterior == doctest::Approx(0.2));
}

TEST_CASE("toy decomposition at very large lambda") {
  const TableScorer scorer = ToyScorer();
  const Decomposition d = Decompose(kSentence, 2, scorer, Params(1e6));
  CHECK(std::abs(d.discrepancy_B) <= 1e-6);
  CHECK(d.heuristic_A == doctest::Approx(d.surprisal_S));
  CHECK(d.veridical_posterior == doctest::Approx(1.0));
}

TEST_CASE("discrepancy shrinks from the prior-only end to the literal end") {
  // Here the veridical word is unexpected both in context and under the
  // masked prior, so the literal reading carries more surprise.
  const TableScorer scorer = ToyScorer();
  const double b0 = Decompose(kSentence, 2, scorer, Params(0.0)).discrepancy_B;
  const double b_inf = Decompose(kSentence, 2, scorer, Params(1e6)).discrepancy_B;
  CHECK(b0 > b_inf);
}

TEST_CASE("single candidate gives zero discrepancy") {
  TableScorer scorer;
  scorer.SetDefaultMasked({{"antidote", 1.0}});
  scorer.SetDefaultConditional({{"antidote", 0.01}});
  for (double lambda : {0.0, 1.0, 1e6}) {
    const Decomposition d = Decompose(kSentence, 2, scorer, Params(lambda));
    CHECK(d.n_candidates == 1);
    CHECK(d.heuristic_A == doctest::Approx(d.surprisal_S).epsilon(1e-15));
    CHECK(d.discrepancy_B == doctest::Approx(0.0));
    CHECK(d.posterior_entropy == doctest::Approx(0.0));
  }
}

TEST_CASE("veridical candidate reuses the surprisal log-probability") {
  TableScorer scorer;
  scorer.SetDefaultMasked({{"Antidote", 0.6}, {"anecdote", 0.4}});
  scorer.SetDefaultConditional({{"antidote", 0.02}, {"Antidote", 0.9}, {"anecdote", 0.3}});
  const ScoredTarget t = ScoreTarget(kSentence, 2, scorer, Params(0.0));
  REQUIRE(t.candidates.size() == 2);
  CHECK(t.candidates[0].word == "antidote");
  CHECK(t.candidate_logprobs[0] == t.veridical_logprob);
  CHECK(t.veridical_logprob == doctest::Approx(std::log(0.02)));
}

TEST_CASE("S equals A plus B and B equals the bracket on random n-gram stimuli") {
  std::mt19937_64 rng(11);
  const Words vocab = {"the", "cat", "bat", "sat", "on", "mat", "hat", "a", "dog", "fog"};
  Corpus corpus;
  for (int s = 0; s < 60; ++s) {
    std::vector<std::string> sentence;
    const int len = 3 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) sentence.push_back(vocab[rng() % vocab.size()]);
    corpus.push_back(sentence);
  }
  const NgramScorer scorer = NgramScorer::Train(corpus, 3, 0.1);
  for (int trial = 0; trial < 200; ++trial) {
    Words sentence;
    const int len = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) sentence.push_back(vocab[rng() % vocab.size()]);
    const size_t target = rng() % sentence.size();
    NoiseParams params = Params(std::vector<double>{0, 0.5, 1, 4, 16, 1e6}[trial % 6]);
    params.top_k = 1 + rng() % 8;
    const ScoredTarget scored = ScoreTarget(sentence, target, scorer, params);
    Posterior posterior;
    const Decomposition d = DecomposeScored(scored, params, &posterior);
    CHECK(std::abs(d.heuristic_A + d.discrepancy_B - d.surprisal_S) <= 1e-9);
    CHECK(std::abs(d.discrepancy_B - Bracket(scored, posterior)) <= 1e-9);
    CHECK(d.heuristic_A >= 0.0);
    CHECK(d.surprisal_S >= 0.0);
  }
}

}  // namespace
}  // namespace surprisal_split
