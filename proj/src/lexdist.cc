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

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "surprisal_split/text.h"

namespace surprisal_split {

EditDistance Levenshtein(std::string_view a, std::string_view b) {
  std::u32string s1 = DecodeUtf8(CaseFold(a));
  std::u32string s2 = DecodeUtf8(CaseFold(b));
  const size_t longest = std::max(s1.size(), s2.size());
  if (longest == 0) return {};
  if (s1.size() < s2.size()) std::swap(s1, s2);

  // Two-row DP over the shorter word.
  std::vector<size_t> prev(s2.size() + 1);
  std::vector<size_t> cur(s2.size() + 1);
  std::iota(prev.begin(), prev.end(), size_t{0});
  for (size_t i = 1; i <= s1.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= s2.size(); ++j) {
      const size_t subst = prev[j - 1] + (s1[i - 1] == s2[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  const size_t raw = prev[s2.size()];
  return {raw, static_cast<double>(raw) / static_cast<double>(longest)};
}

}  // namespace surprisal_split
