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

#include "soilcast/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "soilcast/error.hpp"
#include "soilcast/random.hpp"

namespace soilcast {
namespace {

constexpr std::size_t kPerHour = 6;

struct SensorModel {
  const char* id;
  int zone;
  double capacity;  // field capacity, vwc percent
  double residual;  // dry limit
  double et_gain;   // peak hourly loss near capacity
  double irrigation;
};

// Zone irrigation start hour, after midnight.
struct ZoneModel {
  int start_hour;
};

constexpr std::array<ZoneModel, 5> kZones{{{1}, {2}, {3}, {4}, {5}}};

constexpr std::array<SensorModel, kCorpusSensors> kSensors{{
    {"SENS0003", 0, 34.0, 11.0, 0.42, 3.6},
    {"SENS0005", 0, 31.5, 10.0, 0.38, 3.2},
    {"SENS0008", 0, 36.0, 12.5, 0.45, 3.9},
    {"SENS0010", 1, 29.0, 9.0, 0.36, 3.0},
    {"SENS0012", 1, 33.0, 10.5, 0.40, 3.5},
    {"SENS0014", 2, 38.0, 14.0, 0.48, 4.1},
    {"SENS0017", 2, 30.5, 9.5, 0.35, 3.1},
    {"SENS0019", 3, 35.0, 12.0, 0.44, 3.7},
    {"SENS0021", 1, 0.0, 0.0, 0.0, 0.0},  // derived from SENS0012
    {"SENS0023", 3, 32.0, 10.0, 0.39, 3.3},
    {"SENS0026", 4, 37.0, 13.0, 0.46, 4.0},
    {"SENS0028", 4, 28.5, 8.5, 0.34, 2.9},
    {"SENS0030", 4, 33.5, 11.5, 0.41, 3.4},
}};

// Storm days (offset from the corpus start) and 24 h totals in mm.
struct Storm {
  int day;
  int hour;
  double mm;
};
constexpr std::array<Storm, 5> kStorms{{{6, 15, 18.0}, {17, 4, 11.0}, {28, 20, 24.0},
                                        {39, 9, 9.0}, {59, 13, 15.0}}};

double quantize(double v) { return std::round(v * 100.0) / 100.0; }

std::vector<double> simulate_sensor(const SensorModel& m, const std::vector<double>& demand,
                                    const std::vector<double>& rain_mm, Rng& rng) {
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::vector<double> s(kCorpusSlots);
  double v = m.capacity - 4.0;
  const int start = kZones[static_cast<std::size_t>(m.zone)].start_hour;
  for (std::size_t t = 0; t < kCorpusSlots; ++t) {
    const int hour = static_cast<int>(t % 24);
    const double wet = std::clamp((v - m.residual) / (m.capacity - m.residual), 0.0, 1.3);
    v -= m.et_gain * demand[t] * wet;
    // Drainage above field capacity.
    if (v > m.capacity) v -= 0.12 * (v - m.capacity);
    if (hour == start && v < m.capacity - 1.0) v += m.irrigation * (0.9 + 0.2 * std::abs(jitter(rng)) / 2.0);
    if (hour == start + 1 && v < m.capacity - 1.0) v += 0.35 * m.irrigation;
    v += 0.28 * rain_mm[t] * std::max(0.0, 1.0 - (v - m.capacity) / 6.0);
    v = std::max(v, m.residual + 0.5);
    s[t] = v;
  }
  return s;
}

}  // namespace

SyntheticCorpus generate_corpus(std::uint64_t seed) {
  const Instant start = *parse_instant("2022-11-15T00:00:00");
  SyntheticCorpus corpus{{}, TimeGrid(start, kCorpusSlots), {}, {}};
  const std::size_t days = (kCorpusSlots + 23) / 24;

  // Shared weather: daily evaporative demand as a positive AR(1).
  Rng weather = make_stream(seed, "synth-weather");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> day_factor(days);
  double ar = 0.0;
  for (std::size_t d = 0; d < days; ++d) {
    ar = 0.7 * ar + 0.3 * normal(weather);
    day_factor[d] = std::clamp(1.0 + 0.6 * ar, 0.4, 1.8);
  }
  std::vector<double> rain(kCorpusSlots, 0.0);
  corpus.precip_mm.assign(days, 0.0);
  for (const auto& storm : kStorms) {
    // Rain falls over four hours, heaviest first.
    constexpr std::array<double, 4> kShape{0.4, 0.3, 0.2, 0.1};
    for (std::size_t k = 0; k < kShape.size(); ++k) {
      const std::size_t t = static_cast<std::size_t>(storm.day) * 24 + static_cast<std::size_t>(storm.hour) + k;
      if (t < kCorpusSlots) rain[t] += storm.mm * kShape[k];
    }
  }
  // The forecast issued on day d covers [d 16:00, d + 1 16:00).
  for (std::size_t t = 16; t < kCorpusSlots; ++t) corpus.precip_mm[(t - 16) / 24] += rain[t];
  for (std::size_t d = 0; d < days; ++d) {
    corpus.dates.push_back(format_date(start + std::chrono::days(d)));
  }
  std::vector<double> demand(kCorpusSlots, 0.0);
  for (std::size_t t = 0; t < kCorpusSlots; ++t) {
    const double h = static_cast<double>(t % 24);
    const double sun = std::sin(std::numbers::pi * (h - 6.0) / 14.0);
    const double cloud = rain[t] > 0.0 ? 0.3 : 1.0;
    demand[t] = (h >= 6.0 && h <= 20.0 ? std::max(0.0, sun) : 0.0) * day_factor[t / 24] * cloud;
  }

  std::vector<std::vector<double>> truth(kCorpusSensors);
  std::size_t companion_of = 0, companion = 0;
  for (std::size_t i = 0; i < kCorpusSensors; ++i) {
    if (std::string_view(kSensors[i].id) == "SENS0012") companion_of = i;
    if (std::string_view(kSensors[i].id) == "SENS0021") {
      companion = i;
      continue;
    }
    Rng rng = make_stream(seed, "synth-sensor", i);
    truth[i] = simulate_sensor(kSensors[i], demand, rain, rng);
  }
  {
    Rng rng = make_stream(seed, "synth-sensor", companion);
    std::vector<double> s(kCorpusSlots);
    double drift = 0.0;
    for (std::size_t t = 0; t < kCorpusSlots; ++t) {
      drift = 0.97 * drift + 0.03 * normal(rng);
      s[t] = 0.86 * truth[companion_of][t] + 3.9 + drift;
    }
    truth[companion] = std::move(s);
  }

  // Candidate readings: six per hour per sensor.
  struct Candidate {
    std::size_t sensor;
    std::size_t slot;
    std::size_t k;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(kCorpusSensors * kCorpusSlots * kPerHour);
  std::vector<char> dropped;
  for (std::size_t t = 0; t < kCorpusSlots; ++t) {
    for (std::size_t i = 0; i < kCorpusSensors; ++i) {
      for (std::size_t k = 0; k < kPerHour; ++k) candidates.push_back({i, t, k});
    }
  }
  dropped.assign(candidates.size(), 0);
  // Scattered packet loss makes up the published count. Every slot keeps at
  // least three readings, so the hourly matrix has no missing values.
  std::vector<std::size_t> kept(kCorpusSensors * kCorpusSlots, kPerHour);
  const std::size_t target_drop = candidates.size() - kCorpusReadings;
  Rng loss = make_stream(seed, "synth-loss");
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::shuffle(order.begin(), order.end(), loss);
  std::size_t n_dropped = 0;
  for (std::size_t j = 0; j < order.size() && n_dropped < target_drop; ++j) {
    const auto& cand = candidates[order[j]];
    std::size_t& left = kept[cand.slot * kCorpusSensors + cand.sensor];
    if (left <= 3) continue;
    --left;
    dropped[order[j]] = 1;
    ++n_dropped;
  }

  Rng noise = make_stream(seed, "synth-noise");
  std::uniform_int_distribution<int> second(0, 59);
  corpus.readings.reserve(kCorpusReadings);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    // Draw unconditionally so the noise sequence does not depend on drops.
    const double eps = 0.04 * normal(noise);
    const int sec = second(noise);
    if (dropped[c]) continue;
    const auto& s = truth[cand.sensor];
    const double prev = cand.slot == 0 ? s[0] : s[cand.slot - 1];
    const double frac = static_cast<double>(cand.k + 1) / static_cast<double>(kPerHour);
    const double level = prev + (s[cand.slot] - prev) * frac;
    const Instant ts = corpus.grid.time_of(cand.slot) +
                       std::chrono::minutes(10 * cand.k) + std::chrono::seconds(sec);
    corpus.readings.push_back({kSensors[cand.sensor].id, ts, quantize(level + eps)});
  }
  std::stable_sort(corpus.readings.begin(), corpus.readings.end(),
                   [](const RawReading& a, const RawReading& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     return a.sensor_id < b.sensor_id;
                   });
  if (corpus.readings.size() != kCorpusReadings) {
    throw Error(Errc::kDegenerate, "synthetic corpus size mismatch");
  }
  return corpus;
}

void write_raw_csv(std::ostream& out, const std::vector<RawReading>& readings) {
  out << "timestamp,sensor_id,vwc\n";
  char buf[32];
  for (const auto& r : readings) {
    std::snprintf(buf, sizeof buf, "%.2f", r.vwc);
    out << format_instant(r.timestamp) << ',' << r.sensor_id << ',' << buf << '\n';
  }
}

void write_precip_csv(std::ostream& out, const SyntheticCorpus& corpus) {
  out << "date,precip_mm_24h\n";
  for (std::size_t d = 0; d < corpus.dates.size(); ++d) {
    out << corpus.dates[d] << ',' << format_value(corpus.precip_mm[d]) << '\n';
  }
}

}  // namespace soilcast
