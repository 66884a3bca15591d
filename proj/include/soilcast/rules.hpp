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

// Rule-first screening of a sensor window. Each rule is a pure function of
// (series, config); screen() runs all five and unions the outcomes.

#ifndef SOILCAST_RULES_HPP_
#define SOILCAST_RULES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soilcast/series.hpp"

namespace soilcast {

enum class Detector {
  kMissingness,
  kLongGap,
  kStuckAt,
  kOutOfRange,
  kSpike,
  kIForest,
  kArima,
};

std::string_view detector_name(Detector d);
std::optional<Detector> detector_from_name(std::string_view name);

// Half-open slot range.
struct SlotRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const SlotRange&, const SlotRange&) = default;
};

struct Evidence {
  std::vector<SlotRange> ranges;
  std::vector<std::pair<std::string, double>> stats;

  double stat(std::string_view name) const;
};

struct RuleOutcome {
  Detector rule = Detector::kMissingness;
  bool fired = false;
  Evidence evidence;
};

struct ValidRange {
  double min_vwc = 0.0;
  double max_vwc = 100.0;
};

struct RuleConfig {
  double missing_frac_max = 0.5;
  std::size_t gap_hours_max = 72;
  double stuck_delta_pct = 1.0;
  std::size_t stuck_span_hours = 120;
  ValidRange valid_range;
  // Per-device calibration bounds, keyed by sensor_id.
  std::map<std::string, ValidRange> valid_range_overrides;
  std::size_t spike_median_window_hours = 24;
  double spike_threshold_pct = 5.0;

  ValidRange range_for(const std::string& sensor_id) const;
  // Throws listing every violated invariant.
  void validate() const;
};

struct FaultVerdict {
  std::string sensor_id;
  WindowSpec window;
  std::vector<RuleOutcome> fired;  // ordered by Detector

  bool faulty() const { return !fired.empty(); }
  std::set<Detector> fired_rules() const;
  const RuleOutcome* outcome(Detector d) const;
  void add(RuleOutcome outcome);
};

RuleOutcome check_missingness(const SensorSeries& series, const RuleConfig& config);
RuleOutcome check_long_gap(const SensorSeries& series, const RuleConfig& config);
RuleOutcome check_stuck_at(const SensorSeries& series, const RuleConfig& config);
RuleOutcome check_out_of_range(const SensorSeries& series, const RuleConfig& config);
RuleOutcome check_spikes(const SensorSeries& series, const RuleConfig& config);

// Centered moving median over present values; the window for slot i covers
// [i - w/2, i - w/2 + w) clipped to the series. Missing where no value is
// present in the window.
std::vector<double> centered_moving_median(const SensorSeries& series,
                                           std::size_t window_hours);

// Runs the five rules. `window` is recorded in the verdict as metadata; by
// default it spans the whole series.
FaultVerdict screen(const SensorSeries& series, const RuleConfig& config,
                    std::optional<WindowSpec> window = std::nullopt);

}  // namespace soilcast

#endif  // SOILCAST_RULES_HPP_
