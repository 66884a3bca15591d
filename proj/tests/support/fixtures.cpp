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

#include "fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <filesystem>
#include <random>
#include <sstream>

#include "soilcast/file_io.hpp"
#include "soilcast/random.hpp"
#include "soilcast/synthetic.hpp"

namespace soilcast::fixtures {

Instant epoch() { return *parse_instant("2023-01-01T00:00:00"); }

TimeGrid grid(std::size_t n_slots) { return TimeGrid(epoch(), n_slots); }

std::vector<double> diurnal(std::size_t n, double mean, double amp, double noise,
                            std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(n);
  for (std::size_t t = 0; t < n; ++t) {
    v[t] = mean + amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / 24.0);
    if (noise > 0.0) v[t] += noise * z(rng);
  }
  return v;
}

SensorSeries series(const std::string& id, std::vector<double> values) {
  const std::size_t n = values.size();
  return SensorSeries(id, grid(n), std::move(values));
}

std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  double x = 0.0;
  for (int i = 0; i < 200; ++i) x = phi * x + z(rng);
  std::vector<double> v(n);
  for (auto& e : v) {
    x = phi * x + z(rng);
    e = x;
  }
  return v;
}

void gaussian_pair(std::size_t n, double rho, std::uint64_t seed, std::vector<double>& x,
                   std::vector<double>& y) {
  Rng rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  x.resize(n);
  y.resize(n);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = z(rng), b = z(rng);
    x[i] = a;
    y[i] = rho * a + c * b;
  }
}

namespace {

constexpr std::size_t kLen = 336;

// Wet sensor around 25 %; dry one around 3 % so that a slightly negative
// reading is out of range without also being a 5-point spike.
std::vector<double> wet() { return diurnal(kLen, 25.0, 2.0, 0.05, 11); }
std::vector<double> dry() { return diurnal(kLen, 3.0, 1.5, 0.05, 12); }

void gap(std::vector<double>& v, std::size_t first, std::size_t hours) {
  for (std::size_t t = first; t < first + hours; ++t) v[t] = kMissing;
}

// 60 % missing, never more than 3 h in a row.
void scatter_missing(std::vector<double>& v) {
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (t % 5 < 3) v[t] = kMissing;
  }
}

void stuck(std::vector<double>& v, std::size_t first, std::size_t hours) {
  const double level = v[first];
  for (std::size_t t = first; t < first + hours; ++t) v[t] = level;
}

}  // namespace

std::vector<RuleFixture> rule_injection_suite() {
  std::vector<RuleFixture> out;
  auto add = [&](std::string name, std::vector<double> v, std::set<Detector> expected) {
    out.push_back({name, series("FIX-" + name, std::move(v)), std::move(expected)});
  };

  add("clean", wet(), {});
  {
    auto v = wet();
    scatter_missing(v);
    add("missingness", v, {Detector::kMissingness});
  }
  {
    auto v = wet();
    gap(v, 100, 80);
    add("long-gap", v, {Detector::kLongGap});
  }
  {
    auto v = wet();
    stuck(v, 150, 130);
    add("stuck-at", v, {Detector::kStuckAt});
  }
  {
    auto v = dry();
    v[200] = -0.5;
    add("out-of-range", v, {Detector::kOutOfRange});
  }
  {
    auto v = wet();
    v[60] += 15.0;
    add("spike", v, {Detector::kSpike});
  }
  {
    auto v = dry();
    gap(v, 40, 80);
    v[250] = -0.5;
    add("long-gap+out-of-range", v, {Detector::kLongGap, Detector::kOutOfRange});
  }
  {
    auto v = wet();
    stuck(v, 180, 130);
    v[60] += 15.0;
    add("stuck-at+spike", v, {Detector::kStuckAt, Detector::kSpike});
  }
  {
    auto v = dry();
    scatter_missing(v);
    v[203] = -0.5;  // 203 % 5 == 3, a present slot
    add("missingness+out-of-range", v, {Detector::kMissingness, Detector::kOutOfRange});
  }
  return out;
}

namespace {

std::string clock(int minutes) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60 % 24, minutes % 60);
  return buf;
}

}  // namespace

ScheduleInstance random_schedule_instance(std::uint64_t seed) {
  Rng rng = make_stream(seed, "schedule-instance");
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  ScheduleInstance in;
  in.date = "2023-0" + std::to_string(pick(1, 9)) + "-1" + std::to_string(pick(0, 9));
  in.night.start_minute = pick(20 * 4, 23 * 4) * 15;
  in.night.end_minute = pick(4 * 4, 7 * 4) * 15;

  const int n_recurring = pick(0, 3);
  for (int b = 0; b < n_recurring; ++b) {
    const int start = (in.night.start_minute + pick(-60, 9 * 60)) % 1440;
    const int len = pick(5, 150);
    auto rule = parse_blackout(clock(start) + "-" + clock((start + len) % 1440), "recurring");
    if (rule) in.blackouts.push_back(*rule);
  }
  if (pick(0, 1) == 1) {
    const Instant start = in.night.start_on(in.date) + std::chrono::minutes(pick(-30, 7 * 60));
    const Instant end = start + std::chrono::minutes(pick(10, 120));
    auto rule = parse_blackout(format_instant(start) + "/" + format_instant(end), "one-off");
    if (rule) in.blackouts.push_back(*rule);
  }

  const int n_zones = pick(1, 12);
  const int n_lines = pick(1, 3);
  for (int z = 0; z < n_zones; ++z) {
    ZoneConfig zone;
    zone.zone_id = "Z" + std::to_string(100 + z);
    zone.main_line = std::string(1, static_cast<char>('A' + pick(0, n_lines - 1)));
    zone.application_rate = uni(0.1, 2.0);
    zone.target_vwc = uni(15.0, 40.0);
    zone.vwc_to_mm = uni(0.3, 3.0);
    zone.max_runtime = pick(5, 180);
    std::vector<std::optional<std::vector<double>>> members;
    const int n_members = pick(1, 4);
    for (int m = 0; m < n_members; ++m) {
      zone.members.push_back(zone.zone_id + "-S" + std::to_string(m));
      if (pick(0, 9) == 0) {
        members.push_back(std::nullopt);
        continue;
      }
      members.push_back(diurnal(24, uni(8.0, 45.0), uni(0.0, 4.0), uni(0.0, 0.5),
                                seed * 131 + static_cast<std::uint64_t>(z * 7 + m)));
    }
    in.zones.push_back(zone);
    in.forecasts.push_back(std::move(members));
  }
  in.precip_mm = pick(0, 2) == 0 ? 0.0 : uni(0.0, 25.0);
  return in;
}

Schedule plan(const ScheduleInstance& in) {
  std::vector<Proposal> proposals;
  for (std::size_t z = 0; z < in.zones.size(); ++z) {
    proposals.push_back(propose_zone(in.zones[z], in.date,
                                     compute_deficit(in.zones[z], in.forecasts[z]), in.precip_mm));
  }
  return sequence_zones(std::move(proposals), blackouts_for_night(in.blackouts, in.date), in.night,
                        in.date);
}

std::vector<std::string> schedule_violations(const ScheduleInstance& in, const Schedule& s) {
  std::vector<std::string> bad;
  const Instant night_start = in.night.start_on(in.date), night_end = in.night.end_on(in.date);
  const auto blackouts = blackouts_for_night(in.blackouts, in.date);
  for (std::size_t i = 0; i < s.proposals.size(); ++i) {
    const Proposal& p = s.proposals[i];
    const ZoneConfig& zone = in.zones[i];
    if (p.runtime_minutes < 0 || p.runtime_minutes > zone.max_runtime) {
      bad.push_back(p.zone_id + ": runtime outside [0, cap]");
    }
    if (p.runtime_minutes == 0) continue;
    if (!p.window_start || !p.window_end) {
      bad.push_back(p.zone_id + ": positive runtime without a window");
      continue;
    }
    if (*p.window_end - *p.window_start != std::chrono::minutes(p.runtime_minutes)) {
      bad.push_back(p.zone_id + ": window length differs from runtime");
    }
    if (*p.window_start < night_start || *p.window_end > night_end) {
      bad.push_back(p.zone_id + ": window outside the night span");
    }
    for (const auto& b : blackouts) {
      if (*p.window_start < b.end && b.start < *p.window_end) {
        bad.push_back(p.zone_id + ": window intersects blackout " + b.reason);
      }
    }
    for (std::size_t j = i + 1; j < s.proposals.size(); ++j) {
      const Proposal& q = s.proposals[j];
      if (q.main_line != p.main_line || q.runtime_minutes == 0 || !q.window_start) continue;
      if (*p.window_start < *q.window_end && *q.window_start < *p.window_end) {
        bad.push_back(p.zone_id + " and " + q.zone_id + " overlap on line " + p.main_line);
      }
    }
  }
  return bad;
}

std::string example_config_dir() { return SOILCAST_EXAMPLE_CONFIG_DIR; }

PipelineConfig corpus_workspace(const std::string& dir, const std::vector<std::string>& overrides) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string hourly = (fs::path(dir) / "hourly.csv").string();
  const std::string precip = (fs::path(dir) / "precip.csv").string();
  if (!fs::is_regular_file(hourly) || !fs::is_regular_file(precip)) {
    const SyntheticCorpus corpus = generate_corpus();
    std::ostringstream h, p;
    write_hourly_csv(h, resample_hourly(corpus.readings, corpus.grid), std::vector<std::string>{});
    write_precip_csv(p, corpus);
    write_file_atomic(hourly, h.str());
    write_file_atomic(precip, p.str());
  }
  std::vector<std::string> all{"paths.dataset=" + hourly, "paths.precip=" + precip,
                               "paths.out_dir=" + (fs::path(dir) / "out").string()};
  all.insert(all.end(), overrides.begin(), overrides.end());
  return load_config((fs::path(example_config_dir()) / "park.toml").string(), all);
}

}  // namespace soilcast::fixtures
