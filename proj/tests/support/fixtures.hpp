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

// Seeded fixtures shared by the unit tests and the acceptance runner.

#ifndef SOILCAST_TESTS_FIXTURES_HPP_
#define SOILCAST_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "soilcast/config.hpp"
#include "soilcast/dataset.hpp"
#include "soilcast/rules.hpp"
#include "soilcast/scheduler.hpp"
#include "soilcast/series.hpp"

namespace soilcast::fixtures {

// 2023-01-01T00:00:00.
Instant epoch();
TimeGrid grid(std::size_t n_slots);

// mean + amp * sin(2 pi t / 24) plus optional seeded N(0, noise) jitter.
std::vector<double> diurnal(std::size_t n, double mean, double amp, double noise = 0.0,
                            std::uint64_t seed = 1);
SensorSeries series(const std::string& id, std::vector<double> values);

// x_t = phi x_{t-1} + e_t, e ~ N(0, 1), after a burn-in.
std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed);

// (x, y) standard bivariate normal with correlation rho.
void gaussian_pair(std::size_t n, double rho, std::uint64_t seed, std::vector<double>& x,
                   std::vector<double>& y);

struct RuleFixture {
  std::string name;
  SensorSeries series;
  std::set<Detector> expected;
};

// Nine 336 h windows: one per single fault, three combinations and a clean
// control.
std::vector<RuleFixture> rule_injection_suite();

// A random night: zones on up to three lines, member forecasts, rain and
// recurring plus one-off blackouts.
struct ScheduleInstance {
  std::string date;
  NightSpan night;
  std::vector<BlackoutRule> blackouts;
  std::vector<ZoneConfig> zones;
  // forecasts[z][m]: 24 h forecast of member m of zone z (may be absent).
  std::vector<std::vector<std::optional<std::vector<double>>>> forecasts;
  double precip_mm = 0.0;
};
ScheduleInstance random_schedule_instance(std::uint64_t seed);

// Deficit, rain credit, minutes and sequencing, as the daily run does it.
Schedule plan(const ScheduleInstance& instance);

// Empty when every window is inside the night, no two windows on one line
// overlap, no window touches a blackout and every runtime is within its cap.
std::vector<std::string> schedule_violations(const ScheduleInstance& instance,
                                             const Schedule& schedule);

// Writes the synthetic corpus (hourly.csv, precip.csv) into `dir` once and
// returns the example park configuration pointed at it, with outputs under
// `dir`/out.
PipelineConfig corpus_workspace(const std::string& dir,
                                const std::vector<std::string>& overrides = {});

// Directory holding the example park.toml and zones.toml.
std::string example_config_dir();

}  // namespace soilcast::fixtures

#endif  // SOILCAST_TESTS_FIXTURES_HPP_
