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

#include "surprisal_split/lexdist.h"

#include <random>

#include "doctest.h"
#include "test_util.h"

namespace surprisal_split {
namespace {

TEST_CASE("identical words have distance zero") {
  const EditDistance d = Levenshtein("cat", "cat");
  CHECK(d.raw == 0);
  CHECK(d.normalized == 0.0);
}

TEST_CASE("distance to the empty word deletes every character") {
  const EditDistance d = Levenshtein("cat", "");
  CHECK(d.raw == 3);
  CHECK(d.normalized == 1.0);
  CHECK(Levenshtein("", "").raw == 0);
  CHECK(Levenshtein("", "").normalized == 0.0);
}

TEST_CASE("stimulus word pairs") {
  CHECK(Levenshtein("anecdotes", "anecdote").raw == 1);
  CHECK(Levenshtein("anecdotes", "anecdote").normalized == doctest::Approx(1.0 / 9));
  const size_t oracle = testing::FullTableEditDistance("anecdote", "antidote");
  CHECK(oracle == 2);
  CHECK(Levenshtein("anecdote", "antidote").raw == oracle);
}

TEST_CASE("case is folded before comparison") {
  CHECK(Levenshtein("Cat", "cat").raw == 0);
  CHECK(Levenshtein("ANECDOTE", "antidote").raw == 2);
}

TEST_CASE("distance counts code points, not bytes") {
  CHECK(Levenshtein("café", "cafe").raw == 1);
  CHECK(Levenshtein("café", "cafe").normalized == doctest::Approx(0.25));
}

TEST_CASE("metric properties on random pairs up to length 20") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string x = testing::RandomWord(rng, "abcde", 20);
    const std::string y = testing::RandomWord(rng, "abcde", 20);
    const std::string z = testing::RandomWord(rng, "abcde", 20);
    const EditDistance xy = Levenshtein(x, y);
    CHECK(xy == Levenshtein(y, x));
    CHECK((xy.raw == 0) == (x == y));
    CHECK(xy.raw <= std::max(x.size(), y.size()));
    if (!x.empty() || !y.empty()) {
      CHECK(xy.normalized ==
            static_cast<double>(xy.raw) / static_cast<double>(std::max(x.size(), y.size())));
    }
    CHECK(Levenshtein(x, z).raw <= xy.raw + Levenshtein(y, z).raw);
  }
}

TEST_CASE("matches the memoized recursive oracle on short words") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::string a = testing::RandomWord(rng, "abcd", 8);
    const std::string b = testing::RandomWord(rng, "abcd", 8);
    REQUIRE(Levenshtein(a, b).raw == testing::RecursiveEditDistance(a, b));
  }
}

}  // namespace
}  // namespace surprisal_split
