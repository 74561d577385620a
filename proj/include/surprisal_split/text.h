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

#ifndef SURPRISAL_SPLIT_TEXT_H_
#define SURPRISAL_SPLIT_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace surprisal_split {

// Decodes UTF-8 into code points. Invalid bytes are passed through as
// single code points so that decoding is total.
std::u32string DecodeUtf8(std::string_view text);

// ASCII case folding; non-ASCII bytes are left untouched.
std::string CaseFold(std::string_view word);

// Removes leading and trailing ASCII punctuation and whitespace.
std::string StripPunctuation(std::string_view word);

// Strip then fold: the form in which candidate words enter the posterior.
std::string NormalizeWord(std::string_view word);

// Splits on runs of ASCII whitespace.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(std::span<const std::string> words, std::string_view sep);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_TEXT_H_
