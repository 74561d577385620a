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

#include "surprisal_split/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "surprisal_split/csv.h"
#include "surprisal_split/errors.h"

namespace surprisal_split {
namespace {

double ParseReal(const std::string& text, const char* column, size_t line) {
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) return value;
  } catch (const std::exception&) {
  }
  throw SchemaError(std::string(column) + " '" + text + "' is not a finite number",
                    line);
}

struct Moments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

Moments ComputeMoments(std::span<const XYPair> pairs) {
  Moments m;
  const double n = static_cast<double>(pairs.size());
  for (const auto& [x, y] : pairs) {
    m.mean_x += x;
    m.mean_y += y;
  }
  m.mean_x /= n;
  m.mean_y /= n;
  for (const auto& [x, y] : pairs) {
    const double dx = x - m.mean_x;
    const double dy = y - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

bool AllEqual(std::span<const XYPair> pairs, bool predictor) {
  const double first = predictor ? pairs.front().first : pairs.front().second;
  return std::all_of(pairs.begin(), pairs.end(), [&](const XYPair& p) {
    return (predictor ? p.first : p.second) == first;
  });
}

double Select(const Decomposition& d, Predictor predictor) {
  switch (predictor) {
    case Predictor::kA:
      return d.heuristic_A;
    case Predictor::kB:
      return d.discrepancy_B;
    case Predictor::kS:
      return d.surprisal_S;
  }
  return 0.0;
}

}  // namespace

std::string_view ResponseName(Response r) {
  return r == Response::kN400 ? "N400" : "P600";
}

std::string_view PredictorName(Predictor p) {
  switch (p) {
    case Predictor::kA:
      return "A";
    case Predictor::kB:
      return "B";
    case Predictor::kS:
      return "S";
  }
  return "?";
}

std::vector<AmplitudeRecord> ParseAmplitudes(std::string_view csv_text) {
  const CsvTable table = ParseCsv(csv_text);
  if (table.header.empty()) throw SchemaError("amplitude file is empty");
  const size_t c_item = table.RequireColumn("item_id");
  const size_t c_subject = table.RequireColumn("subject_id");
  const size_t c_condition = table.RequireColumn("condition");
  const size_t c_n400 = table.RequireColumn("n400_amp");
  const size_t c_p600 = table.RequireColumn("p600_amp");

  std::vector<AmplitudeRecord> records;
  std::map<std::tuple<std::string, std::string, std::string>, size_t> seen;
  for (const auto& row : table.rows) {
    AmplitudeRecord r;
    r.item_id = row.fields[c_item];
    r.subject_id = row.fields[c_subject];
    r.condition = row.fields[c_condition];
    r.n400_amp = ParseReal(row.fields[c_n400], "n400_amp", row.line);
    r.p600_amp = ParseReal(row.fields[c_p600], "p600_amp", row.line);
    auto [it, inserted] =
        seen.emplace(std::make_tuple(r.item_id, r.subject_id, r.condition), row.line);
    if (!inserted) {
      throw SchemaError("duplicate key (item_id=" + r.item_id +
                            ", subject_id=" + r.subject_id +
                            ", condition=" + r.condition +
                            "), first seen on row " + std::to_string(it->second),
                        row.line);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AmplitudeRecord> LoadAmplitudes(const std::filesystem::path& path) {
  return ParseAmplitudes(ReadTextFile(path));
}

RegressionFit FitOls(std::span<const XYPair> pairs, bool standardize) {
  if (pairs.size() < 3) {
    throw DataError("regression needs at least 3 points, got " +
                    std::to_string(pairs.size()));
  }
  if (AllEqual(pairs, true)) {
    throw DataError("degenerate predictor: all values are equal");
  }
  std::vector<XYPair> data(pairs.begin(), pairs.end());
  Moments m = ComputeMoments(data);
  if (standardize) {
    if (AllEqual(pairs, false)) {
      throw DataError("degenerate response: all values are equal");
    }
    const double denom = static_cast<double>(data.size() - 1);
    const double sd_x = std::sqrt(m.sxx / denom);
    const double sd_y = std::sqrt(m.syy / denom);
    for (auto& [x, y] : data) {
      x = (x - m.mean_x) / sd_x;
      y = (y - m.mean_y) / sd_y;
    }
    m = ComputeMoments(data);
  }

  RegressionFit fit;
  fit.n = data.size();
  fit.df = data.size() - 2;
  fit.standardized = standardize;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;
  double rss = 0.0;
  for (const auto& [x, y] : data) {
    const double r = y - fit.intercept - fit.slope * x;
    rss += r * r;
  }
  fit.std_error = std::sqrt(rss / static_cast<double>(fit.df) / m.sxx);
  if (fit.std_error > 0.0) {
    fit.t_stat = fit.slope / fit.std_error;
  } else if (fit.slope != 0.0) {
    fit.t_stat = std::copysign(std::numeric_limits<double>::infinity(), fit.slope);
  }
  return fit;
}

JoinResult PredictorJoin(const std::vector<Decomposition>& decompositions,
                         const std::vector<AmplitudeRecord>& amplitudes,
                         Response response, Predictor predictor,
                         bool item_means) {
  std::map<std::pair<std::string, std::string>, const Decomposition*> by_key;
  for (const auto& d : decompositions) {
    if (!by_key.emplace(std::make_pair(d.item_id, d.condition), &d).second) {
      throw DataError("decompositions repeat (item_id=" + d.item_id +
                      ", condition=" + d.condition +
                      "); fit one lambda at a time");
    }
  }

  JoinResult join;
  // Key order keeps the pair list independent of input order.
  std::map<std::tuple<std::string, std::string, std::string>, XYPair> trials;
  for (const auto& r : amplitudes) {
    auto it = by_key.find({r.item_id, r.condition});
    if (it == by_key.end()) {
      ++join.unmatched;
      continue;
    }
    const double amp = response == Response::kN400 ? r.n400_amp : r.p600_amp;
    trials.emplace(std::make_tuple(r.item_id, r.condition, r.subject_id),
                   XYPair{Select(*it->second, predictor), amp});
  }
  if (trials.empty()) {
    throw DataError(
        "empty join: no amplitude record shares an (item_id, condition) with "
        "the decompositions");
  }
  if (!item_means) {
    for (const auto& [key, pair] : trials) join.pairs.push_back(pair);
    return join;
  }
  std::map<std::pair<std::string, std::string>, std::pair<XYPair, size_t>> cells;
  for (const auto& [key, pair] : trials) {
    auto& [acc, count] = cells[{std::get<0>(key), std::get<1>(key)}];
    acc.first = pair.first;
    acc.second += pair.second;
    ++count;
  }
  for (const auto& [key, cell] : cells) {
    join.pairs.push_back(
        {cell.first.first, cell.first.second / static_cast<double>(cell.second)});
  }
  return join;
}

std::vector<RegressionFit> FitComponentTable(
    const std::vector<Decomposition>& decompositions,
    const std::vector<AmplitudeRecord>& amplitudes, bool standardize,
    bool item_means) {
  const std::pair<Predictor, Response> cells[] = {
      {Predictor::kA, Response::kN400},
      {Predictor::kS, Response::kN400},
      {Predictor::kB, Response::kP600},
      {Predictor::kS, Response::kP600},
  };
  std::vector<RegressionFit> fits;
  for (const auto& [predictor, response] : cells) {
    const JoinResult join =
        PredictorJoin(decompositions, amplitudes, response, predictor, item_means);
    RegressionFit fit;
    try {
      fit = FitOls(join.pairs, standardize);
    } catch (const DataError& e) {
      throw DataError(std::string(PredictorName(predictor)) + " -> " +
                      std::string(ResponseName(response)) + ": " + e.what());
    }
    fit.predictor = PredictorName(predictor);
    fit.response = ResponseName(response);
    fits.push_back(std::move(fit));
  }
  return fits;
}

std::vector<AmplitudeRecord> SimulateAmplitudes(
    const std::vector<Decomposition>& decompositions, size_t n_subjects,
    double n400_slope, double p600_slope, double noise_sd, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto noise = [&](std::mt19937_64& gen) { return noise_sd * normal(gen); };
  std::vector<AmplitudeRecord> out;
  out.reserve(decompositions.size() * n_subjects);
  for (size_t subject = 0; subject < n_subjects; ++subject) {
    for (const auto& d : decompositions) {
      AmplitudeRecord r;
      r.item_id = d.item_id;
      r.subject_id = "s" + std::to_string(subject + 1);
      r.condition = d.condition;
      r.n400_amp = n400_slope * d.heuristic_A + noise(rng);
      r.p600_amp = p600_slope * d.discrepancy_B + noise(rng);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace surprisal_split
