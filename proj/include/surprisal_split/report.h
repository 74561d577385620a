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

#ifndef SURPRISAL_SPLIT_REPORT_H_
#define SURPRISAL_SPLIT_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surprisal_split/analysis.h"
#include "surprisal_split/decomposition.h"
#include "surprisal_split/experiment.h"
#include "surprisal_split/scorer.h"

namespace surprisal_split {

// Reports are bit-stable: fixed column order, numbers printed with six
// significant digits ("%.6g"), LF line endings. CSV reports open with
// '#'-prefixed provenance lines (scorer descriptor and config echo) ahead of
// the header; JSON reports carry the same under "scorer" and "config".

enum class ReportFormat { kCsv, kJson };

// Accepts "csv" or "json"; throws std::invalid_argument otherwise.
ReportFormat ParseReportFormat(std::string_view name);

// "%.6g", with "inf", "-inf" and "nan" for non-finite values.
std::string FormatNumber(double value);

// Ordered key/value echo of the run configuration.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct Provenance {
  ScorerDescriptor scorer;
  ConfigEcho config;
};

std::string RenderSweepReport(const SweepReport& report, ReportFormat format,
                              const ConfigEcho& config = {});
// Parses the JSON rendering back. Values carry the six-digit rounding.
SweepReport ParseSweepReportJson(std::string_view text);

std::string RenderDecompositions(const std::vector<Decomposition>& rows,
                                 ReportFormat format,
                                 const Provenance& provenance);
// Accepts either rendering (JSON if the text starts with '{').
std::vector<Decomposition> ParseDecompositions(std::string_view text);
std::vector<Decomposition> LoadDecompositions(const std::filesystem::path& path);

std::string RenderEffectSizes(const EffectSizes& effects, ReportFormat format,
                              const Provenance& provenance);

std::string RenderComparison(const SurprisalComparisonTable& table,
                             ReportFormat format, const ConfigEcho& config = {});

std::string RenderFits(const std::vector<RegressionFit>& fits,
                       ReportFormat format, const ConfigEcho& config = {});

std::string RenderAmplitudes(const std::vector<AmplitudeRecord>& records);

// Writes bytes verbatim. Throws IoError on failure.
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Renders and writes a sweep report.
void EmitReport(const SweepReport& report, ReportFormat format,
                const std::filesystem::path& path,
                const ConfigEcho& config = {});

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_REPORT_H_
