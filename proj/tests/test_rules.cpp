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
#include <random>

#include "fixtures.hpp"
#include "soilcast/error.hpp"
#include "soilcast/random.hpp"
#include "soilcast/rules.hpp"

namespace soilcast {
namespace {

using fixtures::series;

SensorSeries with_missing(std::size_t n, std::size_t n_missing) {
  auto v = fixtures::diurnal(n, 25.0, 2.0);
  // Spread out so no long gap forms.
  for (std::size_t i = 0, placed = 0; placed < n_missing; ++i) {
    const std::size_t t = (i * 7) % n;
    if (!is_missing(v[t])) {
      v[t] = kMissing;
      ++placed;
    }
  }
  return series("S", v);
}

TEST(Missingness, StrictThreshold) {
  const RuleConfig c;
  EXPECT_TRUE(check_missingness(with_missing(200, 120), c).fired);
  EXPECT_FALSE(check_missingness(with_missing(200, 100), c).fired);
  EXPECT_FALSE(check_missingness(with_missing(200, 0), c).fired);
  EXPECT_DOUBLE_EQ(check_missingness(with_missing(200, 120), c).evidence.stat("missing_fraction"), 0.6);
}

SensorSeries with_gap(std::size_t first, std::size_t hours, std::size_t n = 300) {
  auto v = fixtures::diurnal(n, 25.0, 2.0);
  for (std::size_t t = first; t < first + hours; ++t) v[t] = kMissing;
  return series("S", v);
}

TEST(LongGap, StrictThreshold) {
  const RuleConfig c;
  EXPECT_TRUE(check_long_gap(with_gap(50, 73), c).fired);
  EXPECT_FALSE(check_long_gap(with_gap(50, 72), c).fired);
  auto v = fixtures::diurnal(300, 25.0, 2.0);
  for (std::size_t t = 20; t < 60; ++t) v[t] = kMissing;
  for (std::size_t t = 61; t < 101; ++t) v[t] = kMissing;
  EXPECT_FALSE(check_long_gap(series("S", v), c).fired);
  const auto out = check_long_gap(with_gap(50, 73), c);
  ASSERT_EQ(out.evidence.ranges.size(), 1u);
  EXPECT_EQ(out.evidence.ranges[0], (SlotRange{50, 123}));
}

TEST(StuckAt, ConstantSpanFires) {
  const RuleConfig c;
  EXPECT_TRUE(check_stuck_at(series("S", std::vector<double>(120, 20.0)), c).fired);
  std::vector<double> osc(120);
  for (std::size_t t = 0; t < osc.size(); ++t) osc[t] = t % 2 ? 21.5 : 20.0;
  EXPECT_FALSE(check_stuck_at(series("S", osc), c).fired);
  std::vector<double> step(120, 20.0);
  step.back() = 22.0;
  EXPECT_FALSE(check_stuck_at(series("S", step), c).fired);
}

TEST(StuckAt, BelowOnePercentIsStrict) {
  const RuleConfig c;
  std::vector<double> v(130);
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = t % 2 ? 21.0 : 20.0;  // range exactly 1.0
  EXPECT_FALSE(check_stuck_at(series("S", v), c).fired);
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = t % 2 ? 20.99 : 20.0;
  EXPECT_TRUE(check_stuck_at(series("S", v), c).fired);
}

TEST(OutOfRange, Bounds) {
  const RuleConfig c;
  auto v = fixtures::diurnal(48, 25.0, 2.0);
  v[10] = 101.0;
  EXPECT_TRUE(check_out_of_range(series("S", v), c).fired);
  v[10] = -0.5;
  EXPECT_TRUE(check_out_of_range(series("S", v), c).fired);
  EXPECT_FALSE(check_out_of_range(series("S", fixtures::diurnal(48, 25.0, 20.0)), c).fired);
}

TEST(OutOfRange, PerDeviceOverride) {
  RuleConfig c;
  c.valid_range_overrides["S"] = {5.0, 45.0};
  auto v = fixtures::diurnal(48, 25.0, 2.0);
  v[3] = 46.0;
  EXPECT_TRUE(check_out_of_range(series("S", v), c).fired);
  EXPECT_FALSE(check_out_of_range(SensorSeries("T", fixtures::grid(48), v), c).fired);
}

TEST(Spike, SingleSlot) {
  const RuleConfig c;
  std::vector<double> v(100, 20.0);
  v[40] = 35.0;
  const auto out = check_spikes(series("S", v), c);
  EXPECT_TRUE(out.fired);
  ASSERT_EQ(out.evidence.ranges.size(), 1u);
  EXPECT_EQ(out.evidence.ranges[0], (SlotRange{40, 41}));
}

TEST(Spike, DiurnalSineStaysUnderThreshold) {
  const RuleConfig c;
  const auto s = series("S", fixtures::diurnal(24 * 14, 25.0, 2.0));
  // Brute-force max deviation from the centered moving median.
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<double> w;
    const long lo = static_cast<long>(i) - 12;
    for (long t = std::max(0L, lo); t < std::min<long>(lo + 24, static_cast<long>(s.size())); ++t) {
      w.push_back(s[static_cast<std::size_t>(t)]);
    }
    std::sort(w.begin(), w.end());
    const double med = w.size() % 2 ? w[w.size() / 2] : 0.5 * (w[w.size() / 2 - 1] + w[w.size() / 2]);
    worst = std::max(worst, std::fabs(s[i] - med));
  }
  EXPECT_LT(worst, 5.0);
  const auto out = check_spikes(s, c);
  EXPECT_FALSE(out.fired);
  EXPECT_NEAR(out.evidence.stat("max_deviation_pct"), worst, 1e-12);
  EXPECT_FALSE(check_spikes(series("S", std::vector<double>(50, 30.0)), c).fired);
}

TEST(Screen, CleanSineHasNoRules) {
  EXPECT_TRUE(screen(series("S", fixtures::diurnal(336, 25.0, 2.0, 0.05, 3)), {}).fired_rules().empty());
}

TEST(Screen, GapPlusOutOfRange) {
  auto v = fixtures::diurnal(336, 3.0, 1.5, 0.05, 3);
  for (std::size_t t = 100; t < 180; ++t) v[t] = kMissing;
  v[250] = -0.5;
  EXPECT_EQ(screen(series("S", v), {}).fired_rules(),
            (std::set<Detector>{Detector::kLongGap, Detector::kOutOfRange}));
}

TEST(Screen, AllMissingWindow) {
  const auto s = SensorSeries::all_missing("S", fixtures::grid(200));
  EXPECT_EQ(screen(s, {}).fired_rules(),
            (std::set<Detector>{Detector::kMissingness, Detector::kLongGap}));
}

TEST(Screen, InjectionSuiteFiresExactlyTheInjectedRules) {
  const auto suite = fixtures::rule_injection_suite();
  ASSERT_EQ(suite.size(), 9u);
  for (const auto& f : suite) {
    EXPECT_EQ(screen(f.series, {}).fired_rules(), f.expected) << f.name;
  }
}

TEST(Screen, PureFunction) {
  for (const auto& f : fixtures::rule_injection_suite()) {
    const auto a = screen(f.series, {});
    const auto b = screen(f.series, {});
    ASSERT_EQ(a.fired.size(), b.fired.size());
    for (std::size_t i = 0; i < a.fired.size(); ++i) {
      EXPECT_EQ(a.fired[i].evidence.ranges, b.fired[i].evidence.ranges);
      EXPECT_EQ(a.fired[i].evidence.stats, b.fired[i].evidence.stats);
    }
  }
}

// Adding missing slots never un-fires Missingness or LongGap.
TEST(Screen, MissingMonotonicity) {
  const RuleConfig c;
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto v = fixtures::diurnal(240, 25.0, 2.0, 0.1, static_cast<std::uint64_t>(trial));
    std::uniform_int_distribution<std::size_t> slot(0, v.size() - 1);
    std::uniform_int_distribution<std::size_t> len(0, 100);
    const std::size_t first = slot(rng), n = len(rng);
    for (std::size_t t = first; t < std::min(v.size(), first + n); ++t) v[t] = kMissing;
    bool miss = check_missingness(series("S", v), c).fired;
    bool gap = check_long_gap(series("S", v), c).fired;
    for (int extra = 0; extra < 30; ++extra) {
      v[slot(rng)] = kMissing;
      const bool m2 = check_missingness(series("S", v), c).fired;
      const bool g2 = check_long_gap(series("S", v), c).fired;
      EXPECT_TRUE(!miss || m2);
      EXPECT_TRUE(!gap || g2);
      miss = m2;
      gap = g2;
    }
  }
}

TEST(RuleConfig, ValidateRejectsNonsense) {
  RuleConfig c;
  c.missing_frac_max = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.valid_range = {50.0, 10.0};
  EXPECT_THROW(c.validate(), Error);
  EXPECT_NO_THROW(RuleConfig{}.validate());
}

TEST(DetectorNames, RoundTrip) {
  for (auto d : {Detector::kMissingness, Detector::kLongGap, Detector::kStuckAt, Detector::kOutOfRange,
                 Detector::kSpike, Detector::kIForest, Detector::kArima}) {
    EXPECT_EQ(detector_from_name(detector_name(d)), d);
  }
  EXPECT_FALSE(detector_from_name("Bogus"));
}

}  // namespace
}  // namespace soilcast
