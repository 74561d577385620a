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

#ifndef SURPRISAL_SPLIT_LEXDIST_H_
#define SURPRISAL_SPLIT_LEXDIST_H_

#include <cstddef>
#include <string_view>

namespace surprisal_split {

// Character-level edit distance between an input word and a hypothesis.
//
// `raw` counts unit-cost insertions, deletions and substitutions.
// `normalized` is raw / max(len(a), len(b)), and 0 when both are empty.
struct EditDistance {
  size_t raw = 0;
  double normalized = 0.0;

  friend bool operator==(const EditDistance&, const EditDistance&) = default;
};

// Plain Levenshtein distance over UTF-8 code points after ASCII case
// folding. Total, symmetric and deterministic.
EditDistance Levenshtein(std::string_view a, std::string_view b);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_LEXDIST_H_
