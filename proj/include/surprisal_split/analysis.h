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

#ifndef SURPRISAL_SPLIT_ANALYSIS_H_
#define SURPRISAL_SPLIT_ANALYSIS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surprisal_split/decomposition.h"

namespace surprisal_split {

// Per-trial ERP amplitudes, mean voltage over each component's window.
// Sign conventions are passed through untouched.
struct AmplitudeRecord {
  std::string item_id;
  std::string subject_id;
  std::string condition;
  double n400_amp = 0.0;
  double p600_amp = 0.0;
};

// Reads `item_id,subject_id,condition,n400_amp,p600_amp`. Throws SchemaError
// naming a missing column, a malformed row, or a duplicated
// (item_id, subject_id, condition) key.
std::vector<AmplitudeRecord> LoadAmplitudes(const std::filesystem::path& path);
std::vector<AmplitudeRecord> ParseAmplitudes(std::string_view csv_text);

// Simple linear regression of response on predictor. Ordinary least
// squares, not a mixed-effects model.
struct RegressionFit {
  std::string predictor;
  std::string response;
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
  double t_stat = 0.0;  // slope / std_error; +-inf for a perfect nonzero fit
  size_t n = 0;
  size_t df = 0;  // n - 2
  bool standardized = false;
};

using XYPair = std::pair<double, double>;  // (predictor, response)

// Closed-form OLS. With `standardize`, both variables are z-scored first
// (sample standard deviation), so the slope is a standardized coefficient.
// Throws DataError for fewer than three points, a constant predictor, or
// (when standardizing) a constant response.
RegressionFit FitOls(std::span<const XYPair> pairs, bool standardize);

enum class Response { kN400, kP600 };
enum class Predictor { kA, kB, kS };

std::string_view ResponseName(Response r);
std::string_view PredictorName(Predictor p);

struct JoinResult {
  std::vector<XYPair> pairs;
  size_t unmatched = 0;  // amplitude records with no decomposition
};

// One pair per amplitude record whose (item_id, condition) has a
// decomposition. With `item_means`, amplitudes are first averaged over
// subjects so there is one pair per (item, condition).
// Throws DataError if decompositions repeat an (item, condition) key or if
// nothing matches.
JoinResult PredictorJoin(const std::vector<Decomposition>& decompositions,
                         const std::vector<AmplitudeRecord>& amplitudes,
                         Response response, Predictor predictor,
                         bool item_means = false);

// The four cells A->N400, S->N400, B->P600, S->P600.
std::vector<RegressionFit> FitComponentTable(
    const std::vector<Decomposition>& decompositions,
    const std::vector<AmplitudeRecord>& amplitudes, bool standardize,
    bool item_means = false);

// Synthetic amplitudes: n400 = n400_slope * A + noise,
// p600 = p600_slope * B + noise, noise ~ N(0, noise_sd), one record per
// decomposition and subject. Deterministic for a given seed.
std::vector<AmplitudeRecord> SimulateAmplitudes(
    const std::vector<Decomposition>& decompositions, size_t n_subjects,
    double n400_slope, double p600_slope, double noise_sd, uint64_t seed);

}  // namespace surprisal_split

#endif  // SURPRISAL_SPLIT_ANALYSIS_H_
