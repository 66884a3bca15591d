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

#include <cmath>

#include "fixtures.hpp"
#include "soilcast/error.hpp"
#include "soilcast/synthetic.hpp"
#include "soilcast/virtual_sensor.hpp"

namespace soilcast {
namespace {

using fixtures::series;

double held_out_mae(const MlpBackup& m, const SensorSeries& nb, const SensorSeries& target,
                    std::size_t first, std::size_t last) {
  const auto pred = predict_series(m, nb, first, last);
  double sum = 0.0;
  for (std::size_t t = first; t < last; ++t) sum += std::fabs(pred[t - first] - target[t]);
  return sum / static_cast<double>(last - first);
}

TEST(Backup, IdentityMap) {
  const auto nb = series("N", fixtures::diurnal(700, 25.0, 4.0, 0.6, 1));
  const auto target = SensorSeries("T", nb.grid(), std::vector<double>(nb.values().begin(), nb.values().end()));
  const auto m = train_backup(nb, target, {600, 600}, 7);
  EXPECT_LT(held_out_mae(m, nb, target, 600, 700), 0.1);
  EXPECT_NEAR(predict_backup(m, 22.4), 22.4, 0.5);
}

TEST(Backup, AffineMap) {
  const auto nb = series("N", fixtures::diurnal(700, 20.0, 3.0, 0.5, 2));
  std::vector<double> t(700);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 2.0 * nb[i] + 3.0;
  const auto target = series("T", t);
  const auto m = train_backup(nb, target, {600, 600}, 7);
  EXPECT_LT(held_out_mae(m, nb, target, 600, 700), 0.2);
}

TEST(Backup, ConstantNeighbourIsDegenerate) {
  const auto nb = series("N", std::vector<double>(300, 20.0));
  const auto target = series("T", fixtures::diurnal(300, 20.0, 3.0));
  try {
    train_backup(nb, target, {300, 300}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerate);
  }
}

TEST(Backup, SparseTargetIsRejected) {
  const auto nb = series("N", fixtures::diurnal(300, 20.0, 3.0, 0.2, 1));
  auto t = fixtures::diurnal(300, 20.0, 3.0, 0.2, 2);
  for (std::size_t i = 0; i < 100; ++i) t[i] = kMissing;
  EXPECT_THROW(train_backup(nb, series("T", t), {300, 300}, 1), Error);
}

TEST(Backup, OutputsAreClamped) {
  const auto nb = series("N", fixtures::diurnal(400, 50.0, 30.0, 1.0, 3));
  std::vector<double> t(400);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 100.0 - nb[i];
  const auto m = train_backup(nb, series("T", t), {400, 400}, 1);
  for (double x : {-1e6, -500.0, 0.0, 50.0, 150.0, 1e6}) {
    const double y = predict_backup(m, x);
    EXPECT_GE(y, 0.0);
    EXPECT_LE(y, 100.0);
  }
  EXPECT_TRUE(is_missing(predict_backup(m, kMissing)));
}

TEST(Backup, SeededWeightsAreDeterministic) {
  const auto nb = series("N", fixtures::diurnal(400, 25.0, 3.0, 0.5, 5));
  const auto t = series("T", fixtures::diurnal(400, 28.0, 2.5, 0.5, 5));
  const auto a = train_backup(nb, t, {400, 400}, 11), b = train_backup(nb, t, {400, 400}, 11);
  EXPECT_EQ(a.hidden_weights, b.hidden_weights);
  EXPECT_EQ(a.hidden_bias, b.hidden_bias);
  EXPECT_EQ(a.output_weights, b.output_weights);
  EXPECT_EQ(a.output_bias, b.output_bias);
  const auto c = train_backup(nb, t, {400, 400}, 12);
  EXPECT_NE(a.hidden_weights, c.hidden_weights);
}

TEST(Backup, LaggedInputs) {
  MlpTrainingConfig cfg;
  cfg.input_lags = 2;
  const auto nb = series("N", fixtures::diurnal(500, 25.0, 3.0, 0.3, 6));
  const auto target = SensorSeries("T", nb.grid(), std::vector<double>(nb.values().begin(), nb.values().end()));
  const auto m = train_backup(nb, target, {400, 400}, 3, cfg);
  EXPECT_EQ(m.n_inputs, 3u);
  EXPECT_LT(held_out_mae(m, nb, target, 400, 500), 0.3);
}

Dataset pair_dataset(std::size_t n) {
  auto base = fixtures::diurnal(n, 25.0, 3.0, 0.3, 9);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = 0.9 * base[i] + 2.0;
  return Dataset(fixtures::grid(n), {series("N", base), series("T", t), series("U", fixtures::diurnal(n, 30, 2, 0.3, 10))});
}

TEST(VirtualState, ActivateAndRefresh) {
  auto d = pair_dataset(600);
  const RuleConfig rules;
  // Fault from slot 400 onwards.
  std::vector<double> t(d.at("T").values().begin(), d.at("T").values().end());
  for (std::size_t i = 400; i < 600; ++i) t[i] = kMissing;
  d = d.with_series(series("T", t));
  auto up = activate_virtual_sensor(d, "T", "N", 400, 456, {"T"}, 1);
  ASSERT_TRUE(up.state.active);
  EXPECT_FALSE(up.state.unbacked);
  ASSERT_EQ(up.events.size(), 1u);
  EXPECT_EQ(up.events[0].kind, VirtualEventKind::kActivated);
  EXPECT_EQ(up.state.model->trained_on.end_slot, 400u);

  const auto next = refresh_daily(up.state, d, 480, {"T"}, rules, 1);
  EXPECT_TRUE(next.state.active);
  EXPECT_EQ(next.state.last_refresh, up.state.last_refresh + 24);
  EXPECT_EQ(next.state.model->trained_on, up.state.model->trained_on);
}

TEST(VirtualState, RestoredTargetDeactivates) {
  const auto d = pair_dataset(700);
  auto up = activate_virtual_sensor(d, "T", "N", 400, 408, {"T"}, 1);
  ASSERT_TRUE(up.state.active);
  // 120 clean hours after activation.
  const auto next = refresh_daily(up.state, d, 528, {}, RuleConfig{}, 1);
  EXPECT_FALSE(next.state.active);
  ASSERT_EQ(next.events.size(), 1u);
  EXPECT_EQ(next.events[0].kind, VirtualEventKind::kDeactivated);
  // Too early: not all 120 h lie after activation.
  EXPECT_TRUE(refresh_daily(up.state, d, 504, {}, RuleConfig{}, 1).state.active);
}

TEST(VirtualState, NoChaining) {
  const auto d = pair_dataset(600);
  auto up = activate_virtual_sensor(d, "T", "N", 400, 408, {"T", "N"}, 1);
  EXPECT_TRUE(up.state.unbacked);
  EXPECT_FALSE(up.state.model);
  ASSERT_EQ(up.events.size(), 1u);
  EXPECT_EQ(up.events[0].kind, VirtualEventKind::kUnbacked);

  up = activate_virtual_sensor(d, "T", "T", 400, 408, {"T"}, 1);
  EXPECT_TRUE(up.state.unbacked);

  // Neighbour fails while the backup is serving.
  auto ok = activate_virtual_sensor(d, "T", "N", 400, 408, {"T"}, 1);
  std::vector<double> t(d.at("T").values().begin(), d.at("T").values().end());
  for (std::size_t i = 400; i < 600; ++i) t[i] = kMissing;
  const auto d2 = d.with_series(series("T", t));
  const auto next = refresh_daily(ok.state, d2, 432, {"T", "N"}, RuleConfig{}, 1);
  EXPECT_TRUE(next.state.unbacked);
  ASSERT_FALSE(next.events.empty());
  EXPECT_EQ(next.events.back().kind, VirtualEventKind::kUnbacked);
}

TEST(Outage, ZeroHoursHasNoMae) {
  const auto d = pair_dataset(600);
  const auto r = simulate_outage(d, "T", "N", 400, 0, 1);
  EXPECT_FALSE(r.backup_mae);
  EXPECT_FALSE(r.persistence_mae);
  EXPECT_TRUE(r.rows.empty());
}

TEST(Outage, Preconditions) {
  const auto d = pair_dataset(600);
  EXPECT_THROW(simulate_outage(d, "T", "T", 400, 10, 1), Error);
  EXPECT_THROW(simulate_outage(d, "T", "N", 550, 100, 1), Error);
}

TEST(Outage, BackupBeatsPersistenceOnCorpusPair) {
  const auto corpus = generate_corpus();
  const Dataset d = resample_hourly(corpus.readings, corpus.grid);
  const std::size_t start = kCorpusSlots * 6 / 10;
  const auto r = simulate_outage(d, "SENS0021", "SENS0012", start, 500, 42);
  ASSERT_TRUE(r.backup_mae && r.persistence_mae);
  EXPECT_LE(*r.backup_mae, *r.persistence_mae);
  EXPECT_LE(*r.backup_mae, 3.0);
  EXPECT_EQ(r.rows.size(), 500u);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.backup, 0.0);
    EXPECT_LE(row.backup, 100.0);
  }
}

}  // namespace
}  // namespace soilcast
