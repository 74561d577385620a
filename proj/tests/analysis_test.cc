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


#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "surprisal_split/analysis.h"
#include "surprisal_split/errors.h"

namespace surprisal_split {
namespace {

struct OracleFit {
  double slope, intercept, std_error;
};

// Least squares through the normal equations of the design [1 x].
OracleFit Oracle(const std::vector<XYPair>& pairs) {
  const Eigen::Index n = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = pairs[i].first;
    y(i) = pairs[i].second;
  }
  const Eigen::Matrix2d xtx = X.transpose() * X;
  const Eigen::Vector2d beta = xtx.ldlt().solve(X.transpose() * y);
  const Eigen::VectorXd resid = y - X * beta;
  const double sigma2 = resid.squaredNorm() / static_cast<double>(n - 2);
  const Eigen::Matrix2d cov = sigma2 * xtx.inverse();
  return {beta(1), beta(0), std::sqrt(cov(1, 1))};
}

std::vector<XYPair> RandomPairs(std::mt19937_64& rng, size_t n, double slope,
                                double intercept, double sd) {
  std::normal_distribution<double> x_dist(2.0, 3.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<XYPair> pairs;
  for (size_t i = 0; i < n; ++i) {
    const double x = x_dist(rng);
    pairs.emplace_back(x, intercept + slope * x + sd * noise(rng));
  }
  return pairs;
}

double Rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST_CASE("OLS agrees with the normal equations") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pairs = RandomPairs(rng, 20, trial - 25.0, 3.0, 1.5);
    const OracleFit expected = Oracle(pairs);
    const RegressionFit fit = FitOls(pairs, false);
    CHECK(Rel(fit.slope, expected.slope) <= 1e-9);
    CHECK(Rel(fit.intercept, expected.intercept) <= 1e-9);
    CHECK(Rel(fit.std_error, expected.std_error) <= 1e-9);
    CHECK(Rel(fit.t_stat, expected.slope / expected.std_error) <= 1e-9);
    CHECK(fit.n == 20);
    CHECK(fit.df == 18);
  }
}

TEST_CASE("a hand-computed fit") {
  const std::vector<XYPair> pairs = {{0, 1}, {1, 3}, {2, 4}, {3, 8}};
  const RegressionFit fit = FitOls(pairs, false);
  // Sxx = 5, Sxy = 11, RSS = 1.8.
  CHECK(fit.slope == doctest::Approx(2.2));
  CHECK(fit.intercept == doctest::Approx(0.7));
  CHECK(fit.std_error == doctest::Approx(std::sqrt(1.8 / 2.0 / 5.0)));
}

TEST_CASE("t is invariant to affine rescaling of either variable") {
  std::mt19937_64 rng(5);
  const auto pairs = RandomPairs(rng, 30, 0.7, -1.0, 2.0);
  const double t = FitOls(pairs, false).t_stat;
  auto scaled = pairs;
  for (auto& [x, y] : scaled) {
    x = 4.0 * x - 9.0;
    y = 0.25 * y + 100.0;
  }
  CHECK(FitOls(scaled, false).t_stat == doctest::Approx(t).epsilon(1e-9));
  const RegressionFit z = FitOls(pairs, true);
  CHECK(z.standardized);
  CHECK(z.t_stat == doctest::Approx(t).epsilon(1e-9));
  CHECK(std::abs(z.intercept) <= 1e-12);
  CHECK(std::abs(z.slope) <= 1.0);
}

TEST_CASE("swapping predictor and response keeps t") {
  std::mt19937_64 rng(9);
  auto pairs = RandomPairs(rng, 25, -1.3, 0.5, 3.0);
  const double t = FitOls(pairs, false).t_stat;
  for (auto& [x, y] : pairs) std::swap(x, y);
  CHECK(FitOls(pairs, false).t_stat == doctest::Approx(t).epsilon(1e-9));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(FitOls(std::vector<XYPair>{{1, 2}, {2, 3}}, false), DataError);
  CHECK_THROWS_AS(FitOls(std::vector<XYPair>{{1, 2}, {1, 3}, {1, 4}}, false), DataError);
  CHECK_THROWS_AS(FitOls(std::vector<XYPair>{{1, 2}, {2, 2}, {3, 2}}, true), DataError);
  const RegressionFit flat = FitOls(std::vector<XYPair>{{1, 2}, {2, 2}, {3, 2}}, false);
  CHECK(flat.slope == 0.0);
  const RegressionFit exact = FitOls(std::vector<XYPair>{{1, 2}, {2, 4}, {3, 6}}, false);
  CHECK(exact.slope == doctest::Approx(2.0));
  CHECK(exact.t_stat == std::numeric_limits<double>::infinity());
}

std::vector<Decomposition> Decomps(size_t items, const std::vector<std::string>& conditions) {
  std::vector<Decomposition> out;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (size_t i = 0; i < items; ++i) {
    for (const auto& c : conditions) {
      Decomposition d;
      d.item_id = std::to_string(i + 1);
      d.condition = c;
      d.heuristic_A = u(rng);
      d.discrepancy_B = u(rng) - 5.0;
      d.surprisal_S = d.heuristic_A + d.discrepancy_B;
      out.push_back(d);
    }
  }
  return out;
}

TEST_CASE("join cardinality") {
  const std::vector<std::string> conditions = {"Control", "Sem", "SemCrit", "Synt"};
  const auto decomps = Decomps(6, conditions);
  const auto amps = SimulateAmplitudes(decomps, 5, 1.0, 1.0, 0.5, 42);
  CHECK(amps.size() == 5 * 6 * 4);
  const JoinResult joined = PredictorJoin(decomps, amps, Response::kN400, Predictor::kA);
  CHECK(joined.pairs.size() == 5 * 6 * 4);
  CHECK(joined.unmatched == 0);
  const JoinResult means =
      PredictorJoin(decomps, amps, Response::kN400, Predictor::kA, /*item_means=*/true);
  CHECK(means.pairs.size() == 6 * 4);

  auto extra = amps;
  extra.push_back({"999", "s1", "Control", 0.0, 0.0});
  CHECK(PredictorJoin(decomps, extra, Response::kP600, Predictor::kB).unmatched == 1);

  auto dup = decomps;
  dup.push_back(decomps.front());
  CHECK_THROWS_AS(PredictorJoin(dup, amps, Response::kN400, Predictor::kA), DataError);
  CHECK_THROWS_AS(PredictorJoin(decomps, {}, Response::kN400, Predictor::kA), DataError);
}

TEST_CASE("simulation is reproducible and recoverable") {
  const auto decomps = Decomps(40, {"Control", "Sem", "SemCrit", "Synt"});
  const auto a = SimulateAmplitudes(decomps, 20, -0.8, 1.4, 2.0, 7);
  const auto b = SimulateAmplitudes(decomps, 20, -0.8, 1.4, 2.0, 7);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n400_amp == b[i].n400_amp);
    CHECK(a[i].subject_id == b[i].subject_id);
  }
  const auto fits = FitComponentTable(decomps, a, false);
  REQUIRE(fits.size() == 4);
  CHECK(fits[0].predictor == "A");
  CHECK(fits[0].response == "N400");
  CHECK(std::abs(fits[0].slope - -0.8) <= 3 * fits[0].std_error);
  CHECK(fits[2].predictor == "B");
  CHECK(fits[2].response == "P600");
  CHECK(std::abs(fits[2].slope - 1.4) <= 3 * fits[2].std_error);
}

TEST_CASE("amplitude parsing") {
  const auto amps = ParseAmplitudes(
      "item_id,subject_id,condition,n400_amp,p600_amp\n"
      "1,s1,Control,-1.5,0.25\n"
      "1,s1,Sem,-3,1e-1\n");
  REQUIRE(amps.size() == 2);
  CHECK(amps[1].n400_amp == -3.0);
  CHECK(amps[1].p600_amp == doctest::Approx(0.1));
  CHECK_THROWS_AS(ParseAmplitudes("item_id,subject_id,condition,n400_amp\n1,s1,C,1\n"),
                  SchemaError);
  CHECK_THROWS_AS(ParseAmplitudes("item_id,subject_id,condition,n400_amp,p600_amp\n"
                                  "1,s1,C,1,2\n1,s1,C,3,4\n"),
                  SchemaError);
  CHECK_THROWS_AS(ParseAmplitudes("item_id,subject_id,condition,n400_amp,p600_amp\n"
                                  "1,s1,C,abc,2\n"),
                  SchemaError);
}

}  // namespace
}  // namespace surprisal_split
