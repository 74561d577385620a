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

#include "surprisal_split/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "surprisal_split/csv.h"
#include "surprisal_split/errors.h"

namespace surprisal_split {
namespace {

using Json = nlohmann::ordered_json;

// Number rounded to its printed form, so JSON and CSV agree digit for digit.
Json Number(double value) {
  if (!std::isfinite(value)) return FormatNumber(value);
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

double ReadNumber(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return std::strtod(value.get<std::string>().c_str(), nullptr);
  throw SchemaError("expected a number in report, found " + value.dump());
}

std::string Line(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out.push_back(',');
    out += CsvQuote(f);
    first = false;
  }
  out.push_back('\n');
  return out;
}

std::string CommentBlock(const ScorerDescriptor* scorer,
                         const ConfigEcho& config) {
  std::string out;
  auto clean = [](std::string s) {
    for (char& c : s) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
  };
  if (scorer != nullptr) {
    out += "# scorer.kind: " + std::string(ScorerKindName(scorer->kind)) + "\n";
    out += "# scorer.identity: " + clean(scorer->identity) + "\n";
    out += "# scorer.vocabulary_size: " + std::to_string(scorer->vocabulary_size) + "\n";
  }
  for (const auto& [key, value] : config) {
    out += "# config." + key + ": " + clean(value) + "\n";
  }
  return out;
}

Json ScorerJson(const ScorerDescriptor& scorer) {
  Json j;
  j["kind"] = ScorerKindName(scorer.kind);
  j["identity"] = scorer.identity;
  j["vocabulary_size"] = scorer.vocabulary_size;
  return j;
}

Json ConfigJson(const ConfigEcho& config) {
  Json j = Json::object();
  for (const auto& [key, value] : config) j[key] = value;
  return j;
}

ScorerKind ParseScorerKind(const std::string& name) {
  if (name == "ngram") return ScorerKind::kNgram;
  if (name == "remote") return ScorerKind::kRemote;
  if (name == "table") return ScorerKind::kTable;
  throw SchemaError("unknown scorer kind '" + name + "'");
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format '" + std::string(name) +
                              "' (expected csv or json)");
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  // Avoid "-0" so that sign-flipped zeros render identically.
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

std::string RenderSweepReport(const SweepReport& report, ReportFormat format,
                              const ConfigEcho& config) {
  if (format == ReportFormat::kCsv) {
    std::string out = CommentBlock(&report.scorer, {});
    out += "# params.distance_mode: " +
           std::string(DistanceModeName(report.params.distance_mode)) + "\n";
    out += "# params.top_k: " + std::to_string(report.params.top_k) + "\n";
    out += std::string("# params.force_include_veridical: ") +
           (report.params.force_include_veridical ? "true" : "false") + "\n";
    out += CommentBlock(nullptr, config);
    out += "lambda,condition,mean_A,mean_B,se_A,se_B,n\n";
    for (const auto& c : report.rows) {
      out += Line({FormatNumber(c.lambda), c.condition, FormatNumber(c.mean_A),
                   FormatNumber(c.mean_B), FormatNumber(c.se_A),
                   FormatNumber(c.se_B), std::to_string(c.n)});
    }
    return out;
  }

  Json j;
  j["scorer"] = ScorerJson(report.scorer);
  j["params"] = {
      {"distance_mode", DistanceModeName(report.params.distance_mode)},
      {"top_k", report.params.top_k},
      {"force_include_veridical", report.params.force_include_veridical}};
  j["config"] = ConfigJson(config);
  Json rows = Json::object();
  for (const auto& c : report.rows) {
    rows[FormatNumber(c.lambda)][c.condition] = {
        {"mean_A", Number(c.mean_A)}, {"mean_B", Number(c.mean_B)},
        {"mean_S", Number(c.mean_S)}, {"se_A", Number(c.se_A)},
        {"se_B", Number(c.se_B)},     {"n", c.n}};
  }
  j["rows"] = std::move(rows);
  return Dump(j);
}

SweepReport ParseSweepReportJson(std::string_view text) {
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("rows")) {
    throw SchemaError("not a sweep report JSON document");
  }
  SweepReport report;
  try {
    const Json& scorer = j.at("scorer");
    report.scorer.kind = ParseScorerKind(scorer.at("kind").get<std::string>());
    report.scorer.identity = scorer.at("identity").get<std::string>();
    report.scorer.vocabulary_size = scorer.at("vocabulary_size").get<size_t>();
    const Json& params = j.at("params");
    report.params.distance_mode =
        ParseDistanceMode(params.at("distance_mode").get<std::string>());
    report.params.top_k = params.at("top_k").get<size_t>();
    report.params.force_include_veridical =
        params.at("force_include_veridical").get<bool>();
    for (const auto& [lambda_key, conditions] : j.at("rows").items()) {
      const double lambda = std::strtod(lambda_key.c_str(), nullptr);
      report.lambdas.push_back(lambda);
      for (const auto& [condition, cell] : conditions.items()) {
        SweepCell c;
        c.lambda = lambda;
        c.condition = condition;
        c.mean_A = ReadNumber(cell.at("mean_A"));
        c.mean_B = ReadNumber(cell.at("mean_B"));
        c.mean_S = ReadNumber(cell.at("mean_S"));
        c.se_A = ReadNumber(cell.at("se_A"));
        c.se_B = ReadNumber(cell.at("se_B"));
        c.n = cell.at("n").get<size_t>();
        report.rows.push_back(std::move(c));
      }
    }
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed sweep report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("malformed sweep report: ") + e.what());
  }
  return report;
}

std::string RenderDecompositions(const std::vector<Decomposition>& rows,
                                 ReportFormat format,
                                 const Provenance& provenance) {
  if (format == ReportFormat::kCsv) {
    std::string out = CommentBlock(&provenance.scorer, provenance.config);
    out +=
        "item_id,condition,lambda,S,A,B,posterior_entropy,veridical_posterior,"
        "veridical_rank,top_candidate,n_candidates\n";
    for (const auto& d : rows) {
      out += Line({d.item_id, d.condition, FormatNumber(d.lambda),
                   FormatNumber(d.surprisal_S), FormatNumber(d.heuristic_A),
                   FormatNumber(d.discrepancy_B),
                   FormatNumber(d.posterior_entropy),
                   FormatNumber(d.veridical_posterior),
                   d.veridical_rank ? std::to_string(*d.veridical_rank) : "",
                   d.top_candidate, std::to_string(d.n_candidates)});
    }
    return out;
  }
  Json j;
  j["scorer"] = ScorerJson(provenance.scorer);
  j["config"] = ConfigJson(provenance.config);
  Json items = Json::array();
  for (const auto& d : rows) {
    Json item;
    item["item_id"] = d.item_id;
    item["condition"] = d.condition;
    item["lambda"] = Number(d.lambda);
    item["S"] = Number(d.surprisal_S);
    item["A"] = Number(d.heuristic_A);
    item["B"] = Number(d.discrepancy_B);
    item["posterior_entropy"] = Number(d.posterior_entropy);
    item["veridical_posterior"] = Number(d.veridical_posterior);
    item["veridical_rank"] =
        d.veridical_rank ? Json(*d.veridical_rank) : Json(nullptr);
    item["top_candidate"] = d.top_candidate;
    item["n_candidates"] = d.n_candidates;
    items.push_back(std::move(item));
  }
  j["items"] = std::move(items);
  return Dump(j);
}

std::vector<Decomposition> ParseDecompositions(std::string_view text) {
  const size_t first = text.find_first_not_of(" \t\r\n");
  std::vector<Decomposition> out;
  if (first != std::string_view::npos && text[first] == '{') {
    const Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("items") || !j["items"].is_array()) {
      throw SchemaError("not a decomposition report JSON document");
    }
    try {
      for (const auto& item : j["items"]) {
        Decomposition d;
        d.item_id = item.at("item_id").get<std::string>();
        d.condition = item.at("condition").get<std::string>();
        d.lambda = item.contains("lambda") ? ReadNumber(item["lambda"]) : 0.0;
        d.surprisal_S = ReadNumber(item.at("S"));
        d.heuristic_A = ReadNumber(item.at("A"));
        d.discrepancy_B = ReadNumber(item.at("B"));
        out.push_back(std::move(d));
      }
    } catch (const Json::exception& e) {
      throw SchemaError(std::string("malformed decomposition report: ") + e.what());
    }
    return out;
  }

  const CsvTable table = ParseCsv(text);
  if (table.header.empty()) throw SchemaError("decomposition report is empty");
  const size_t c_item = table.RequireColumn("item_id");
  const size_t c_condition = table.RequireColumn("condition");
  const size_t c_s = table.RequireColumn("S");
  const size_t c_a = table.RequireColumn("A");
  const size_t c_b = table.RequireColumn("B");
  const auto c_lambda = table.Column("lambda");
  auto real = [](const std::string& field, size_t line) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || *end != '\0') {
      throw SchemaError("'" + field + "' is not a number", line);
    }
    return v;
  };
  for (const auto& row : table.rows) {
    Decomposition d;
    d.item_id = row.fields[c_item];
    d.condition = row.fields[c_condition];
    if (c_lambda) d.lambda = real(row.fields[*c_lambda], row.line);
    d.surprisal_S = real(row.fields[c_s], row.line);
    d.heuristic_A = real(row.fields[c_a], row.line);
    d.discrepancy_B = real(row.fields[c_b], row.line);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Decomposition> LoadDecompositions(
    const std::filesystem::path& path) {
  return ParseDecompositions(ReadTextFile(path));
}

std::string RenderEffectSizes(const EffectSizes& effects, ReportFormat format,
                              const Provenance& provenance) {
  if (format == ReportFormat::kCsv) {
    std::string out = CommentBlock(&provenance.scorer, provenance.config);
    out += "lambda,condition,mean_A_diff,mean_B_diff,se_A_diff,se_B_diff,n_items\n";
    for (const auto& e : effects.conditions) {
      out += Line({FormatNumber(effects.lambda), e.condition,
                   FormatNumber(e.mean_A_diff), FormatNumber(e.mean_B_diff),
                   FormatNumber(e.se_A_diff), FormatNumber(e.se_B_diff),
                   std::to_string(e.n_items)});
    }
    return out;
  }
  Json j;
  j["scorer"] = ScorerJson(provenance.scorer);
  j["config"] = ConfigJson(provenance.config);
  j["lambda"] = Number(effects.lambda);
  Json conditions = Json::object();
  for (const auto& e : effects.conditions) {
    Json per_item = Json::object();
    for (size_t i = 0; i < e.item_ids.size(); ++i) {
      per_item[e.item_ids[i]] = {{"A_diff", Number(e.A_diffs[i])},
                                 {"B_diff", Number(e.B_diffs[i])}};
    }
    conditions[e.condition] = {{"mean_A_diff", Number(e.mean_A_diff)},
                               {"mean_B_diff", Number(e.mean_B_diff)},
                               {"se_A_diff", Number(e.se_A_diff)},
                               {"se_B_diff", Number(e.se_B_diff)},
                               {"n_items", e.n_items},
                               {"items", std::move(per_item)}};
  }
  j["conditions"] = std::move(conditions);
  return Dump(j);
}

std::string RenderComparison(const SurprisalComparisonTable& table,
                             ReportFormat format, const ConfigEcho& config) {
  if (format == ReportFormat::kCsv) {
    std::string out = CommentBlock(&table.scorer, config);
    out += table.has_cloze ? "condition,mean_cloze,mean_surprisal,n\n"
                           : "condition,mean_surprisal,n\n";
    for (const auto& r : table.rows) {
      if (table.has_cloze) {
        out += Line({r.condition, r.mean_cloze ? FormatNumber(*r.mean_cloze) : "",
                     FormatNumber(r.mean_surprisal), std::to_string(r.n)});
      } else {
        out += Line({r.condition, FormatNumber(r.mean_surprisal),
                     std::to_string(r.n)});
      }
    }
    return out;
  }
  Json j;
  j["scorer"] = ScorerJson(table.scorer);
  j["config"] = ConfigJson(config);
  Json rows = Json::object();
  for (const auto& r : table.rows) {
    Json row;
    if (table.has_cloze) {
      row["mean_cloze"] = r.mean_cloze ? Number(*r.mean_cloze) : Json(nullptr);
    }
    row["mean_surprisal"] = Number(r.mean_surprisal);
    row["n"] = r.n;
    rows[r.condition] = std::move(row);
  }
  j["conditions"] = std::move(rows);
  return Dump(j);
}

std::string RenderFits(const std::vector<RegressionFit>& fits,
                       ReportFormat format, const ConfigEcho& config) {
  static constexpr const char* kMethod = "OLS, not LMM";
  static constexpr const char* kSigns =
      "a negative N400 slope is the standard N400 effect; a positive P600 "
      "slope is the standard P600 effect";
  if (format == ReportFormat::kCsv) {
    ConfigEcho echo = config;
    echo.emplace_back("method", kMethod);
    echo.emplace_back("sign_convention", kSigns);
    std::string out = CommentBlock(nullptr, echo);
    out += "predictor,response,slope,intercept,std_error,t_stat,df,n,standardized\n";
    for (const auto& f : fits) {
      out += Line({f.predictor, f.response, FormatNumber(f.slope),
                   FormatNumber(f.intercept), FormatNumber(f.std_error),
                   FormatNumber(f.t_stat), std::to_string(f.df),
                   std::to_string(f.n), f.standardized ? "true" : "false"});
    }
    return out;
  }
  Json j;
  j["method"] = kMethod;
  j["sign_convention"] = kSigns;
  j["config"] = ConfigJson(config);
  Json rows = Json::array();
  for (const auto& f : fits) {
    rows.push_back({{"predictor", f.predictor},
                    {"response", f.response},
                    {"slope", Number(f.slope)},
                    {"intercept", Number(f.intercept)},
                    {"std_error", Number(f.std_error)},
                    {"t_stat", Number(f.t_stat)},
                    {"df", f.df},
                    {"n", f.n},
                    {"standardized", f.standardized}});
  }
  j["fits"] = std::move(rows);
  return Dump(j);
}

std::string RenderAmplitudes(const std::vector<AmplitudeRecord>& records) {
  std::string out = "item_id,subject_id,condition,n400_amp,p600_amp\n";
  for (const auto& r : records) {
    out += Line({r.item_id, r.subject_id, r.condition, FormatNumber(r.n400_amp),
                 FormatNumber(r.p600_amp)});
  }
  return out;
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing output file: " + path.string());
}

void EmitReport(const SweepReport& report, ReportFormat format,
                const std::filesystem::path& path, const ConfigEcho& config) {
  WriteFile(path, RenderSweepReport(report, format, config));
}

}  // namespace surprisal_split
