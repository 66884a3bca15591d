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

#ifndef SOILCAST_SERIES_HPP_
#define SOILCAST_SERIES_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "soilcast/time_grid.hpp"

namespace soilcast {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// One sensor's hourly volumetric water content (percent) on a time grid.
// Missing slots are stored as NaN; every present value is finite.
class SensorSeries {
 public:
  SensorSeries(std::string sensor_id, TimeGrid grid, std::vector<double> values);

  static SensorSeries all_missing(std::string sensor_id, TimeGrid grid);

  const std::string& sensor_id() const { return sensor_id_; }
  const TimeGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t slot) const { return values_[slot]; }
  bool missing(std::size_t slot) const { return is_missing(values_[slot]); }
  std::span<const double> values() const { return values_; }

  std::vector<bool> missing_mask() const;
  std::size_t missing_count() const;

  // Copy with `slot` replaced; `value` may be kMissing.
  SensorSeries with_value(std::size_t slot, double value) const;

 private:
  std::string sensor_id_;
  TimeGrid grid_;
  std::vector<double> values_;
};

// Rolling window of `length_hours` slots ending (exclusive) at `end_slot`.
struct WindowSpec {
  static constexpr std::size_t kMinHours = 200;
  static constexpr std::size_t kMaxHours = 900;

  std::size_t length_hours = kMinHours;
  std::size_t end_slot = kMinHours;

  std::size_t begin_slot() const { return end_slot - length_hours; }

  // Throws unless the window lies inside a grid of `n_slots`.
  void validate(std::size_t n_slots) const;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

SensorSeries slice_window(const SensorSeries& series, const WindowSpec& spec);

// Unchecked-length slice used internally for sub-windows shorter than the
// rolling-window minimum (e.g. the 24 h detector horizon).
SensorSeries slice_slots(const SensorSeries& series, std::size_t first,
                         std::size_t count);

// out[i] = values[i] - values[i - lag]; the first `lag` slots are missing,
// as is any slot where either operand is missing.
SensorSeries seasonal_difference(const SensorSeries& series, std::size_t lag_hours);

}  // namespace soilcast

#endif  // SOILCAST_SERIES_HPP_
