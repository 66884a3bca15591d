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

#include "soilcast/series.hpp"

#include <algorithm>
#include <utility>

#include "soilcast/error.hpp"

namespace soilcast {

SensorSeries::SensorSeries(std::string sensor_id, TimeGrid grid,
                           std::vector<double> values)
    : sensor_id_(std::move(sensor_id)), grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_slots()) {
    throw Error(Errc::kInvalidArgument,
                "series " + sensor_id_ + ": value count " +
                    std::to_string(values_.size()) + " != grid slots " +
                    std::to_string(grid_.n_slots()));
  }
  for (double v : values_) {
    if (std::isinf(v)) {
      throw Error(Errc::kInvalidArgument,
                  "series " + sensor_id_ + " contains a non-finite value");
    }
  }
}

SensorSeries SensorSeries::all_missing(std::string sensor_id, TimeGrid grid) {
  return SensorSeries(std::move(sensor_id), grid,
                      std::vector<double>(grid.n_slots(), kMissing));
}

std::vector<bool> SensorSeries::missing_mask() const {
  std::vector<bool> mask(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) mask[i] = missing(i);
  return mask;
}

std::size_t SensorSeries::missing_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), is_missing));
}

SensorSeries SensorSeries::with_value(std::size_t slot, double value) const {
  std::vector<double> copy = values_;
  copy.at(slot) = value;
  return SensorSeries(sensor_id_, grid_, std::move(copy));
}

void WindowSpec::validate(std::size_t n_slots) const {
  if (length_hours < kMinHours || length_hours > kMaxHours) {
    throw Error(Errc::kInvalidArgument,
                "window length " + std::to_string(length_hours) +
                    " h outside [200, 900]");
  }
  if (end_slot < length_hours) {
    throw Error(Errc::kInvalidArgument,
                "window of " + std::to_string(length_hours) +
                    " h cannot end at slot " + std::to_string(end_slot));
  }
  if (end_slot > n_slots) {
    throw Error(Errc::kInvalidArgument,
                "window end " + std::to_string(end_slot) +
                    " beyond series length " + std::to_string(n_slots));
  }
}

SensorSeries slice_window(const SensorSeries& series, const WindowSpec& spec) {
  spec.validate(series.size());
  return slice_slots(series, spec.begin_slot(), spec.length_hours);
}

SensorSeries slice_slots(const SensorSeries& series, std::size_t first,
                         std::size_t count) {
  if (count == 0 || first + count > series.size()) {
    throw Error(Errc::kInvalidArgument, "slice out of range");
  }
  auto v = series.values().subspan(first, count);
  return SensorSeries(series.sensor_id(), series.grid().sub_grid(first, count),
                      std::vector<double>(v.begin(), v.end()));
}

SensorSeries seasonal_difference(const SensorSeries& series,
                                 std::size_t lag_hours) {
  if (lag_hours == 0) {
    throw Error(Errc::kInvalidArgument, "difference lag must be >= 1");
  }
  if (lag_hours >= series.size()) {
    throw Error(Errc::kInvalidArgument,
                "difference lag " + std::to_string(lag_hours) +
                    " >= series length " + std::to_string(series.size()));
  }
  std::vector<double> out(series.size(), kMissing);
  for (std::size_t i = lag_hours; i < series.size(); ++i) {
    // NaN propagates through the subtraction.
    out[i] = series[i] - series[i - lag_hours];
  }
  return SensorSeries(series.sensor_id(), series.grid(), std::move(out));
}

}  // namespace soilcast
