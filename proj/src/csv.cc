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

#include "surprisal_split/csv.h"

#include <fstream>
#include <sstream>

#include "surprisal_split/errors.h"

namespace surprisal_split {

std::optional<size_t> CsvTable::Column(std::string_view name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

size_t CsvTable::RequireColumn(std::string_view name) const {
  if (auto column = Column(name)) return *column;
  throw SchemaError("missing required column '" + std::string(name) + "'",
                    header_line);
}

CsvTable ParseCsv(std::string_view text) {
  CsvTable table;
  size_t pos = 0;
  size_t line = 1;
  bool have_header = false;
  while (pos < text.size()) {
    const size_t start_line = line;
    if (text[pos] == '#') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
      ++pos;
      ++line;
      continue;
    }
    if (text[pos] == '\n' || (text[pos] == '\r' && pos + 1 < text.size() &&
                              text[pos + 1] == '\n')) {
      pos += text[pos] == '\r' ? 2 : 1;
      ++line;
      continue;
    }

    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (pos >= text.size()) {
        if (in_quotes) throw SchemaError("unterminated quoted field", start_line);
        fields.push_back(std::move(field));
        break;
      }
      const char c = text[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
          } else {
            in_quotes = false;
            ++pos;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++pos;
        }
        continue;
      }
      switch (c) {
        case '"':
          in_quotes = true;
          ++pos;
          break;
        case ',':
          fields.push_back(std::move(field));
          field.clear();
          ++pos;
          break;
        case '\r':
          ++pos;
          break;
        case '\n':
          fields.push_back(std::move(field));
          ++pos;
          ++line;
          done = true;
          break;
        default:
          field.push_back(c);
          ++pos;
      }
    }

    if (!have_header) {
      table.header = std::move(fields);
      table.header_line = start_line;
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw SchemaError("expected " + std::to_string(table.header.size()) +
                            " fields, found " + std::to_string(fields.size()),
                        start_line);
    }
    table.rows.push_back({start_line, std::move(fields)});
  }
  return table;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading file: " + path.string());
  return buffer.str();
}

CsvTable ReadCsvFile(const std::filesystem::path& path) {
  return ParseCsv(ReadTextFile(path));
}

std::string CsvQuote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace surprisal_split
