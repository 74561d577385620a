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

#ifndef SURPRISAL_SPLIT_CSV_H_
#define SURPRISAL_SPLIT_CSV_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace surprisal_split {

struct CsvRow {
  size_t line = 0;  // 1-based physical line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180-style table: comma separated, double-quoted fields with ""
// escapes, LF or CRLF records. Blank lines and lines starting with '#' are
// skipped.
struct CsvTable {
  std::vector<std::string> header;
  size_t header_line = 0;
  std::vector<CsvRow> rows;

  // Index of a named column, if present.
  std::optional<size_t> Column(std::string_view name) const;
  // Like Column, but throws SchemaError naming the column when absent.
  size_t RequireColumn(std::string_view name) const;
};

// Throws SchemaError on an unterminated quote or a row whose width differs
// from the header.
CsvTable ParseCsv(std::string_view text);

// Throws IoError if the file cannot be read.
CsvTable ReadCsvFile(const std::filesystem::path& path);
std::string ReadTextFile(const std::filesystem::path& path);

// Quotes a field if it contains a comma, quote, CR or LF.
std::string CsvQuote(std::string_view field);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_CSV_H_
