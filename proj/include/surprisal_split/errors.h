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

#ifndef SURPRISAL_SPLIT_ERRORS_H_
#define SURPRISAL_SPLIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surprisal_split {

// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input table does not match its schema. `row` is 1-based and counts
// the header line; 0 means the problem is not tied to a row.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& message, size_t row = 0)
      : std::runtime_error(row == 0 ? message
                                    : "row " + std::to_string(row) + ": " +
                                          message),
        row_(row) {}
  size_t row() const { return row_; }

 private:
  size_t row_;
};

// The language-model backend could not be reached or answered garbage.
class ScorerUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs are well-formed but cannot support the requested computation
// (missing Control rows, empty joins, degenerate predictors).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_ERRORS_H_
