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
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "surprisal_split/noisy_channel.h"
#include "surprisal_split/table_scorer.h"

namespace surprisal_split {
namespace {

using Words = std::vector<std::string>;

Candidate Make(const std::string& word, double prob, const std::string& veridical) {
  Candidate c;
  c.word = word;
  c.surface = word;
  c.prior_logprob = std::log(prob);
  c.distance = Levenshtein(veridical, word);
  return c;
}

NoiseParams Params(double lambda, DistanceMode mode = DistanceMode::kNormalized) {
  NoiseParams p;
  p.lambda = lambda;
  p.distance_mode = mode;
  return p;
}

double ProbOf(const Posterior& posterior, const std::string& word) {
  for (const auto& c : posterior.candidates) {
    if (c.word == word) return c.posterior_prob;
  }
  return 0.0;
}

// Direct evaluation without the max shift, in extended precision.
std::vector<long double> NaivePosterior(const std::vector<Candidate>& cands,
                                        const NoiseParams& params) {
  std::vector<long double> out;
  long double total = 0;
  for (const auto& c : cands) {
    const long double w = std::exp(static_cast<long double>(c.prior_logprob) -
                                   params.lambda *
                                       DistanceValue(c.distance, params.distance_mode));
    out.push_back(w);
    total += w;
  }
  for (auto& w : out) w /= total;
  return out;
}

TEST_CASE("two equal priors one edit apart") {
  const std::vector<Candidate> cands = {Make("cat", 0.5, "cat"), Make("bat", 0.5, "cat")};
  const Posterior p = ComputePosterior(cands, Params(std::log(3.0), DistanceMode::kRaw), "cat");
  CHECK(ProbOf(p, "cat") == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(ProbOf(p, "bat") == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.veridical_rank == 0u);
}

TEST_CASE("lambda zero reproduces the normalized prior") {
  const std::vector<Candidate> cands = {Make("anecdote", 0.7, "antidote"),
                                        Make("antidote", 0.2, "antidote"),
                                        Make("hearse", 0.1, "antidote")};
  const Posterior p = ComputePosterior(cands, Params(0.0), "antidote");
  CHECK(ProbOf(p, "anecdote") == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(ProbOf(p, "antidote") == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(ProbOf(p, "hearse") == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(p.candidates.front().word == "anecdote");
  CHECK(p.veridical_rank == 1u);
}

TEST_CASE("large lambda concentrates on the veridical word") {
  const std::vector<Candidate> cands = {Make("anecdote", 0.7, "antidote"),
                                        Make("antidote", 0.2, "antidote"),
                                        Make("hearse", 0.1, "antidote")};
  CHECK(cands[0].distance.raw == 2);
  CHECK(cands[2].distance.raw >= 5);
  const Posterior p = ComputePosterior(cands, Params(1e6), "antidote");
  CHECK(p.VeridicalProbability() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.candidates.front().word == "antidote");
  CHECK(p.Entropy() == doctest::Approx(0.0));
}

TEST_CASE("entropy of a uniform posterior") {
  const std::vector<Candidate> cands = {Make("a", 0.25, "q"), Make("b", 0.25, "q"),
                                        Make("c", 0.25, "q"), Make("d", 0.25, "q")};
  const Posterior p = ComputePosterior(cands, Params(3.0), "q");
  CHECK(p.Entropy() == doctest::Approx(std::log(4.0)));
  CHECK_FALSE(p.veridical_rank.has_value());
  CHECK(p.VeridicalProbability() == 0.0);
  // Exact ties rank alphabetically.
  CHECK(p.candidates[0].word == "a");
  CHECK(p.candidates[3].word == "d");
}

TEST_CASE("posterior matches direct evaluation on random sets") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> prob(1e-6, 1.0);
  std::uniform_real_distribution<double> lam(0.0, 30.0);
  const Words pool = {"ant", "and", "anecdote", "antidote", "hearse", "horse",
                      "cattle", "bottle", "pencil", "stencil", "a", "ab"};
  for (int trial = 0; trial < 500; ++trial) {
    const std::string veridical = pool[rng() % pool.size()];
    std::vector<Candidate> cands;
    for (const auto& w : pool) {
      if (rng() % 2 == 0 || w == veridical) cands.push_back(Make(w, prob(rng), veridical));
    }
    const NoiseParams params =
        Params(lam(rng), trial % 2 ? DistanceMode::kRaw : DistanceMode::kNormalized);
    const auto expected = NaivePosterior(cands, params);
    const Posterior p = ComputePosterior(cands, params, veridical);
    double total = 0.0;
    for (size_t i = 0; i < cands.size(); ++i) {
      CHECK(std::abs(ProbOf(p, cands[i].word) - static_cast<double>(expected[i])) <= 1e-12);
      total += p.candidates[i].posterior_prob;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("veridical probability is non-decreasing in lambda") {
  const std::vector<Candidate> cands = {Make("anecdote", 0.7, "antidote"),
                                        Make("antidote", 0.2, "antidote"),
                                        Make("antidotes", 0.05, "antidote"),
                                        Make("hearse", 0.05, "antidote")};
  double prev = -1.0;
  for (double lambda = 0.0; lambda <= 100.0; lambda += 0.5) {
    const double v = ComputePosterior(cands, Params(lambda), "antidote").VeridicalProbability();
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("adding a constant to every prior leaves the posterior unchanged") {
  std::vector<Candidate> cands = {Make("anecdote", 0.7, "antidote"),
                                  Make("antidote", 0.2, "antidote"),
                                  Make("hearse", 0.1, "antidote")};
  const Posterior base = ComputePosterior(cands, Params(2.5), "antidote");
  for (double shift : {-700.0, -3.0, 5.0, 300.0}) {
    auto shifted = cands;
    for (auto& c : shifted) c.prior_logprob += shift;
    const Posterior p = ComputePosterior(shifted, Params(2.5), "antidote");
    for (const auto& c : base.candidates) {
      CHECK(std::abs(ProbOf(p, c.word) - c.posterior_prob) <= 1e-12);
    }
  }
}

TEST_CASE("parameter validation") {
  const std::vector<Candidate> cands = {Make("a", 0.5, "a")};
  CHECK_THROWS_AS(ComputePosterior(cands, Params(-1.0), "a"), std::invalid_argument);
  CHECK_THROWS_AS(ComputePosterior(cands, Params(std::numeric_limits<double>::infinity()), "a"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ComputePosterior(cands, Params(std::nan("")), "a"), std::invalid_argument);
  CHECK_THROWS_AS(ComputePosterior({}, Params(1.0), "a"), std::invalid_argument);
  NoiseParams zero_k = Params(1.0);
  zero_k.top_k = 0;
  CHECK_THROWS_AS(zero_k.Validate(), std::invalid_argument);
  CHECK(ParseDistanceMode("raw") == DistanceMode::kRaw);
  CHECK(ParseDistanceMode("normalized") == DistanceMode::kNormalized);
  CHECK_THROWS_AS(ParseDistanceMode("cosine"), std::invalid_argument);
}

TableScorer ToyScorer() {
  TableScorer scorer;
  scorer.SetDefaultMasked({{"anecdote", 0.7}, {"Anecdote", 0.05}, {"story", 0.1},
                           {"joke", 0.04}, {"antidote", 0.02}});
  return scorer;
}

TEST_CASE("candidate generation normalizes and deduplicates") {
  const TableScorer scorer = ToyScorer();
  const Words sentence = {"an", "amusing", "antidote."};
  NoiseParams params = Params(1.0);
  params.top_k = 10;
  const auto cands = GenerateCandidates(sentence, 2, scorer, params);
  REQUIRE(cands.size() == 4);
  CHECK(cands[0].word == "anecdote");
  CHECK(cands[0].prior_logprob == doctest::Approx(std::log(0.7)));
  CHECK(cands[0].distance.raw == 2);
  CHECK(cands[0].distance.normalized == doctest::Approx(0.25));
  CHECK(cands[1].word == "story");
  CHECK(cands[3].word == "antidote");
  CHECK(cands[3].distance.raw == 0);
}

TEST_CASE("veridical word is forced in with its own masked probability") {
  const TableScorer scorer = ToyScorer();
  const Words sentence = {"an", "amusing", "antidote"};
  NoiseParams params = Params(1.0);
  params.top_k = 1;
  const auto cands = GenerateCandidates(sentence, 2, scorer, params);
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].word == "anecdote");
  CHECK(cands[1].word == "antidote");
  CHECK(cands[1].prior_logprob == doctest::Approx(std::log(0.02)));

  params.force_include_veridical = false;
  CHECK(GenerateCandidates(sentence, 2, scorer, params).size() == 1);
}

TEST_CASE("a veridical word unknown to the scorer gets the floor") {
  const TableScorer scorer = ToyScorer();
  const Words sentence = {"an", "amusing", "hearse"};
  NoiseParams params = Params(1.0);
  params.top_k = 2;
  const auto cands = GenerateCandidates(sentence, 2, scorer, params);
  REQUIRE(cands.size() == 3);
  CHECK(cands.back().word == "hearse");
  CHECK(cands.back().prior_logprob == kDefaultLogFloor);
}

TEST_CASE("candidate generation rejects bad targets") {
  const TableScorer scorer = ToyScorer();
  CHECK_THROWS_AS(GenerateCandidates(Words{"a", "b"}, 2, scorer, Params(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(GenerateCandidates(Words{"a", "..."}, 1, scorer, Params(0)),
                  std::invalid_argument);
}

}  // namespace
}  // namespace surprisal_split
