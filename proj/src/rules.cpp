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

#include "soilcast/rules.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <deque>

#include "soilcast/error.hpp"

namespace soilcast {
namespace {

constexpr std::array<std::string_view, 7> kDetectorNames = {
    "Missingness", "LongGap", "StuckAt", "OutOfRange", "Spike", "IForest", "Arima"};

// Contiguous runs of slots satisfying `pred`.
template <typename Pred>
std::vector<SlotRange> runs(std::size_t n, Pred pred) {
  std::vector<SlotRange> out;
  std::size_t i = 0;
  while (i < n) {
    if (!pred(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && pred(j)) ++j;
    out.push_back({i, j});
    i = j;
  }
  return out;
}

}  // namespace

std::string_view detector_name(Detector d) {
  return kDetectorNames[static_cast<std::size_t>(d)];
}

std::optional<Detector> detector_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kDetectorNames.size(); ++i) {
    if (kDetectorNames[i] == name) return static_cast<Detector>(i);
  }
  return std::nullopt;
}

double Evidence::stat(std::string_view name) const {
  for (const auto& [k, v] : stats) {
    if (k == name) return v;
  }
  return kMissing;
}

ValidRange RuleConfig::range_for(const std::string& sensor_id) const {
  auto it = valid_range_overrides.find(sensor_id);
  return it == valid_range_overrides.end() ? valid_range : it->second;
}

void RuleConfig::validate() const {
  std::string problems;
  auto need = [&](bool ok, const char* what) {
    if (!ok) problems += std::string(problems.empty() ? "" : "; ") + what;
  };
  need(missing_frac_max > 0.0 && missing_frac_max < 1.0,
       "missing_frac_max must be in (0, 1)");
  need(gap_hours_max > 0, "gap_hours_max must be positive");
  need(stuck_delta_pct > 0.0, "stuck_delta_pct must be positive");
  need(stuck_span_hours > 0, "stuck_span_hours must be positive");
  need(valid_range.min_vwc < valid_range.max_vwc, "valid_range must be ordered");
  for (const auto& [id, r] : valid_range_overrides) {
    need(r.min_vwc < r.max_vwc, "valid_range override must be ordered");
  }
  need(spike_median_window_hours > 0, "spike_median_window_hours must be positive");
  need(spike_threshold_pct > 0.0, "spike_threshold_pct must be positive");
  if (!problems.empty()) throw Error(Errc::kInvalidArgument, "rules: " + problems);
}

std::set<Detector> FaultVerdict::fired_rules() const {
  std::set<Detector> out;
  for (const auto& o : fired) out.insert(o.rule);
  return out;
}

const RuleOutcome* FaultVerdict::outcome(Detector d) const {
  for (const auto& o : fired) {
    if (o.rule == d) return &o;
  }
  return nullptr;
}

void FaultVerdict::add(RuleOutcome outcome) {
  if (!outcome.fired) return;
  auto pos = std::find_if(fired.begin(), fired.end(), [&](const RuleOutcome& o) {
    return o.rule >= outcome.rule;
  });
  if (pos != fired.end() && pos->rule == outcome.rule) {
    *pos = std::move(outcome);
  } else {
    fired.insert(pos, std::move(outcome));
  }
}

RuleOutcome check_missingness(const SensorSeries& series, const RuleConfig& config) {
  RuleOutcome out{Detector::kMissingness, false, {}};
  const double frac = static_cast<double>(series.missing_count()) /
                      static_cast<double>(series.size());
  out.fired = frac > config.missing_frac_max;
  out.evidence.stats = {{"missing_fraction", frac}};
  if (out.fired) {
    out.evidence.ranges = runs(series.size(), [&](std::size_t i) { return series.missing(i); });
  }
  return out;
}

RuleOutcome check_long_gap(const SensorSeries& series, const RuleConfig& config) {
  RuleOutcome out{Detector::kLongGap, false, {}};
  const auto gaps = runs(series.size(), [&](std::size_t i) { return series.missing(i); });
  SlotRange longest{0, 0};
  for (const auto& g : gaps) {
    if (g.end - g.begin > longest.end - longest.begin) longest = g;
  }
  const std::size_t len = longest.end - longest.begin;
  out.fired = len > config.gap_hours_max;
  out.evidence.stats = {{"longest_gap_hours", static_cast<double>(len)}};
  if (out.fired) out.evidence.ranges = {longest};
  return out;
}

RuleOutcome check_stuck_at(const SensorSeries& series, const RuleConfig& config) {
  RuleOutcome out{Detector::kStuckAt, false, {}};
  const std::size_t span = config.stuck_span_hours;
  const std::size_t n = series.size();
  if (n < span) return out;

  // Monotonic deques of slot indices hold the running max and min of the
  // present values in [start, start + span).
  std::deque<std::size_t> maxq, minq;
  std::size_t present = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!series.missing(i)) {
      ++present;
      while (!maxq.empty() && series[maxq.back()] <= series[i]) maxq.pop_back();
      maxq.push_back(i);
      while (!minq.empty() && series[minq.back()] >= series[i]) minq.pop_back();
      minq.push_back(i);
    }
    if (i + 1 < span) continue;
    const std::size_t start = i + 1 - span;
    while (!maxq.empty() && maxq.front() < start) maxq.pop_front();
    while (!minq.empty() && minq.front() < start) minq.pop_front();
    // A change needs at least two observations; emptier spans belong to the
    // missingness rules.
    if (present >= 2) {
      const double range = series[maxq.front()] - series[minq.front()];
      if (range < config.stuck_delta_pct) {
        out.fired = true;
        out.evidence.ranges = {{start, start + span}};
        out.evidence.stats = {{"range_pct", range},
                              {"present_slots", static_cast<double>(present)}};
        return out;
      }
    }
    if (!series.missing(start)) --present;
  }
  return out;
}

RuleOutcome check_out_of_range(const SensorSeries& series, const RuleConfig& config) {
  RuleOutcome out{Detector::kOutOfRange, false, {}};
  const ValidRange range = config.range_for(series.sensor_id());
  double worst_low = kMissing, worst_high = kMissing;
  out.evidence.ranges = runs(series.size(), [&](std::size_t i) {
    const double v = series[i];
    return !is_missing(v) && (v < range.min_vwc || v > range.max_vwc);
  });
  for (const auto& r : out.evidence.ranges) {
    for (std::size_t i = r.begin; i < r.end; ++i) {
      const double v = series[i];
      if (v < range.min_vwc) worst_low = is_missing(worst_low) ? v : std::min(worst_low, v);
      if (v > range.max_vwc) worst_high = is_missing(worst_high) ? v : std::max(worst_high, v);
    }
  }
  out.fired = !out.evidence.ranges.empty();
  if (out.fired) {
    if (!is_missing(worst_low)) out.evidence.stats.emplace_back("min_value", worst_low);
    if (!is_missing(worst_high)) out.evidence.stats.emplace_back("max_value", worst_high);
  }
  return out;
}

std::vector<double> centered_moving_median(const SensorSeries& series,
                                           std::size_t window_hours) {
  const std::size_t n = series.size();
  const std::size_t half = window_hours / 2;
  std::vector<double> medians(n, kMissing);
  std::vector<double> buf;
  buf.reserve(window_hours);
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(half);
    const auto lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, first));
    const auto hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>(n), first + static_cast<std::ptrdiff_t>(window_hours)));
    buf.clear();
    for (std::size_t j = lo; j < hi; ++j) {
      if (!series.missing(j)) buf.push_back(series[j]);
    }
    if (buf.empty()) continue;
    std::sort(buf.begin(), buf.end());
    const std::size_t m = buf.size();
    medians[i] = m % 2 == 1 ? buf[m / 2] : 0.5 * (buf[m / 2 - 1] + buf[m / 2]);
  }
  return medians;
}

RuleOutcome check_spikes(const SensorSeries& series, const RuleConfig& config) {
  if (series.size() < config.spike_median_window_hours) {
    throw Error(Errc::kInsufficientData,
                "spike check needs at least " +
                    std::to_string(config.spike_median_window_hours) + " slots");
  }
  RuleOutcome out{Detector::kSpike, false, {}};
  const auto median = centered_moving_median(series, config.spike_median_window_hours);
  double worst = 0.0;
  std::vector<bool> spike(series.size(), false);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.missing(i)) continue;
    const double dev = std::fabs(series[i] - median[i]);
    worst = std::max(worst, dev);
    spike[i] = dev > config.spike_threshold_pct;
  }
  out.evidence.stats = {{"max_deviation_pct", worst}};
  out.evidence.ranges = runs(series.size(), [&](std::size_t i) { return spike[i]; });
  out.fired = !out.evidence.ranges.empty();
  if (!out.fired) out.evidence.ranges.clear();
  return out;
}

FaultVerdict screen(const SensorSeries& series, const RuleConfig& config,
                    std::optional<WindowSpec> window) {
  FaultVerdict verdict;
  verdict.sensor_id = series.sensor_id();
  verdict.window = window.value_or(WindowSpec{series.size(), series.size()});
  verdict.add(check_missingness(series, config));
  verdict.add(check_long_gap(series, config));
  verdict.add(check_stuck_at(series, config));
  verdict.add(check_out_of_range(series, config));
  verdict.add(check_spikes(series, config));
  return verdict;
}

}  // namespace soilcast
