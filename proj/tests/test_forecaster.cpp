/*
 * Copyright 2026 The Soilcast Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "soilcast/error.hpp"
#include "soilcast/evaluation.hpp"
#include "soilcast/knn_forecaster.hpp"
#include "soilcast/random.hpp"
#include "soilcast/sarima.hpp"
#include "soilcast/stats.hpp"

namespace soilcast {
namespace {

using fixtures::series;

double mae(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

TEST(Knn, StoredRowCount) {
  const auto s = series("S", fixtures::diurnal(900, 25.0, 3.0, 0.2, 1));
  EXPECT_EQ(KnnForecaster::fit(s, {}).n_rows(), 876u);
}

TEST(Knn, GapRowsDropped) {
  auto v = fixtures::diurnal(900, 25.0, 3.0, 0.2, 1);
  v[500] = kMissing;
  // The missing slot kills its own row and the 24 rows that use it as a lag.
  EXPECT_EQ(KnnForecaster::fit(series("S", v), {}).n_rows(), 876u - 25u);
}

TEST(Knn, AllMissingThrows) {
  EXPECT_THROW(KnnForecaster::fit(SensorSeries::all_missing("S", fixtures::grid(300)), {}), Error);
}

TEST(Knn, ConstantSeriesForecastsConstant) {
  const auto f = KnnForecaster::fit(series("S", std::vector<double>(300, 27.25)), {}).forecast(72);
  ASSERT_EQ(f.size(), 72u);
  for (double v : f) EXPECT_EQ(v, 27.25);
}

TEST(Knn, NoiseFreeSine) {
  const auto v = fixtures::diurnal(360, 25.0, 3.0);
  const auto f = KnnForecaster::fit(series("S", std::vector<double>(v.begin(), v.begin() + 336)), {}).forecast(24);
  EXPECT_LT(mae(f, std::span<const double>(v).subspan(336)), 0.05);
}

TEST(Knn, ExactRepeatReplaysContinuation) {
  // Random motif of 60 h appears twice; the window ends right after the
  // second copy's first 30 h, matching slot 30 of the first copy.
  Rng rng(5);
  std::uniform_real_distribution<double> u(10.0, 40.0);
  std::vector<double> motif(60);
  for (auto& x : motif) x = u(rng);
  std::vector<double> v(motif);
  for (int i = 0; i < 150; ++i) v.push_back(u(rng));
  v.insert(v.end(), motif.begin(), motif.begin() + 30);
  KnnConfig c;
  c.k = 1;
  c.hour_of_day = false;
  const auto f = KnnForecaster::fit(series("S", v), c).forecast(10);
  for (std::size_t h = 0; h < 10; ++h) EXPECT_EQ(f[h], motif[30 + h]) << h;
}

TEST(Knn, AffineEquivariance) {
  const auto v = fixtures::diurnal(336, 25.0, 3.0, 0.5, 8);
  const auto base = KnnForecaster::fit(series("S", v), {}).forecast(24);
  for (auto [a, b] : {std::pair{2.0, 5.0}, std::pair{0.5, -3.0}, std::pair{10.0, 0.0}}) {
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = a * v[i] + b;
    const auto f = KnnForecaster::fit(series("S", w), {}).forecast(24);
    for (std::size_t h = 0; h < 24; ++h) EXPECT_NEAR((f[h] - b) / a, base[h], 1e-9);
  }
}

TEST(Knn, ForecastWithinTargetRange) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto v = fixtures::diurnal(336, 25.0, 3.0, 1.0, seed);
    const auto m = KnnForecaster::fit(series("S", v), {});
    const auto [lo, hi] = std::minmax_element(m.targets().begin(), m.targets().end());
    for (double f : m.forecast(48)) {
      EXPECT_GE(f, *lo);
      EXPECT_LE(f, *hi);
    }
  }
}

TEST(Knn, WindowBoundsEnforced) {
  const auto s = series("S", fixtures::diurnal(1000, 25.0, 3.0));
  EXPECT_THROW(fit_knn(s, {100, 500}, {}), Error);
  EXPECT_THROW(fit_knn(s, {1000, 1000}, {}), Error);
  EXPECT_NO_THROW(fit_knn(s, {336, 800}, {}));
}

TEST(Sarima, PeriodicSeries) {
  std::vector<double> v(24 * 16);
  for (std::size_t t = 0; t < v.size(); ++t) {
    v[t] = 25.0 + 3.0 * std::sin(2.0 * 3.141592653589793 * static_cast<double>(t % 24) / 24.0) +
           (t % 24 == 5 ? 1.0 : 0.0);
  }
  const auto s = series("S", std::vector<double>(v.begin(), v.begin() + 24 * 15));
  const auto f = fit_forecast_sarima(s, {}, 24);
  EXPECT_LT(mae(f.values, std::span<const double>(v).subspan(24 * 15)), 0.05);
}

TEST(Sarima, ConstantFallsBackToPersistence) {
  const auto f = fit_forecast_sarima(series("S", std::vector<double>(300, 19.5)), {}, 24);
  EXPECT_TRUE(f.fit.fallback);
  EXPECT_FALSE(f.fit.warning.empty());
  for (double v : f.values) EXPECT_EQ(v, 19.5);
}

TEST(Sarima, RecoversSeasonalArCoefficient) {
  SarimaConfig c;
  c.ar_order = 1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto w = fixtures::ar1(800, 0.6, seed);
    std::vector<double> x(800);
    for (std::size_t t = 0; t < x.size(); ++t) {
      const double season = 2.0 * std::sin(2.0 * 3.141592653589793 * static_cast<double>(t % 24) / 24.0);
      x[t] = (t < 24 ? 25.0 + season : x[t - 24]) + 0.1 * w[t];
    }
    const auto f = fit_forecast_sarima(series("S", x), c, 24);
    ASSERT_FALSE(f.fit.fallback);
    ASSERT_EQ(f.fit.ar.size(), 1u);
    EXPECT_NEAR(f.fit.ar[0], 0.6, 0.05) << "seed " << seed;
  }
}

TEST(Sarima, NeedsTwoSeasons) {
  EXPECT_THROW(fit_forecast_sarima(series("S", fixtures::diurnal(40, 25, 2, 0.1)), {}, 24), Error);
}

TEST(Percentile, LinearInterpolation) {
  const std::vector<double> m{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(quantile_linear(m, 0.75), 0.325, 1e-15);
  EXPECT_NEAR(quantile_linear(m, 0.5), 0.25, 1e-15);
  EXPECT_EQ(quantile_linear(std::vector<double>{3.0}, 0.75), 3.0);
  EXPECT_THROW(quantile_linear(std::vector<double>{}, 0.5), Error);
  const auto s = summarize("knn", {0.4, 0.1, 0.3, 0.2});
  EXPECT_NEAR(s.p75_mae, 0.325, 1e-15);
  EXPECT_NEAR(s.mean_mae, 0.25, 1e-15);
  EXPECT_EQ(s.sensors, 4u);
}

// Exactly 24 h-periodic data; seasonal naive is then a perfect forecaster.
Dataset periodic_dataset() {
  std::vector<SensorSeries> s;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> v(24 * 40);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = 20.0 + i + static_cast<double>((t * (i + 3)) % 24) * 0.25;
    s.push_back(series("S" + std::to_string(i), v));
  }
  return Dataset(fixtures::grid(24 * 40), std::move(s));
}

NamedForecaster seasonal_naive(double bias) {
  return {"naive", [bias](const SensorSeries& w, std::size_t h) {
            std::vector<double> out(h);
            for (std::size_t i = 0; i < h; ++i) out[i] = w[w.size() - 24 + i % 24] + bias;
            return out;
          }};
}

TEST(Evaluation, PerfectAndBiasedForecasters) {
  const Dataset d = periodic_dataset();
  EvalConfig c;
  auto r = rolling_origin_evaluate(d, {seasonal_naive(0.0)}, c);
  ASSERT_EQ(r.scores.size(), 3u);
  for (const auto& s : r.scores) EXPECT_EQ(s.mae, 0.0);
  r = rolling_origin_evaluate(d, {seasonal_naive(1.0)}, c);
  for (const auto& s : r.scores) EXPECT_NEAR(s.mae, 1.0, 1e-12);
  EXPECT_NEAR(r.summary("naive")->mean_mae, 1.0, 1e-12);
  EXPECT_NEAR(r.summary("naive")->p75_mae, 1.0, 1e-12);
}

TEST(Evaluation, OriginsAtSixteenHundredDaily) {
  const auto g = fixtures::grid(24 * 40);
  const auto o = evaluation_origins(g, {});
  ASSERT_FALSE(o.empty());
  for (std::size_t i = 0; i < o.size(); ++i) {
    EXPECT_EQ(g.hour_of_day(o[i]), 16);
    EXPECT_GE(o[i], 336u);
    EXPECT_LE(o[i] + 24, g.n_slots());
    if (i > 0) {
      EXPECT_EQ(o[i] - o[i - 1], 24u);
    }
  }
}

TEST(Evaluation, FailingModelExcludesSensor) {
  const Dataset d = periodic_dataset();
  NamedForecaster broken{"broken", [](const SensorSeries&, std::size_t) -> std::vector<double> {
                           throw Error(Errc::kInsufficientData, "nope");
                         }};
  const auto r = rolling_origin_evaluate(d, {seasonal_naive(0.0), broken}, {});
  EXPECT_EQ(r.excluded.size(), 3u);
  EXPECT_EQ(r.summary("broken"), nullptr);
  EXPECT_NE(r.summary("naive"), nullptr);
}

TEST(Evaluation, DeterministicAndCsvLayout) {
  const Dataset d = periodic_dataset();
  const std::vector<NamedForecaster> models{knn_model({}), sarima_model({})};
  const auto a = rolling_origin_evaluate(d, models, {});
  const auto b = rolling_origin_evaluate(d, models, {});
  std::ostringstream sa, sb, ra;
  write_eval_summary_csv(sa, a);
  write_eval_summary_csv(sb, b);
  write_eval_report_csv(ra, a);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str().find("# percentile: linear interpolation between closest ranks"), std::string::npos);
  EXPECT_NE(sa.str().find("model,mean_mae,p75_mae,median_mae,sensors\nknn,"), std::string::npos);
  EXPECT_NE(sa.str().find("\nsarima,"), std::string::npos);
  EXPECT_EQ(ra.str().rfind("sensor_id,model,mae,origins\n", 0), 0u);
}

}  // namespace
}  // namespace soilcast
