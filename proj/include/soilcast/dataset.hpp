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

#ifndef SOILCAST_DATASET_HPP_
#define SOILCAST_DATASET_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soilcast/series.hpp"
#include "soilcast/time_grid.hpp"

namespace soilcast {

struct RawReading {
  std::string sensor_id;
  Instant timestamp;
  double vwc = 0.0;
};

enum class Aggregation { kMean, kMedian };

// All sensors of a replay on one shared grid, ordered by sensor_id.
class Dataset {
 public:
  Dataset(TimeGrid grid, std::vector<SensorSeries> series);

  const TimeGrid& grid() const { return grid_; }
  std::size_t size() const { return series_.size(); }
  std::span<const SensorSeries> series() const { return series_; }

  const SensorSeries* find(std::string_view sensor_id) const;
  const SensorSeries& at(std::string_view sensor_id) const;
  std::vector<std::string> sensor_ids() const;

  Dataset with_series(SensorSeries replacement) const;
  // First `n_slots` slots of every series.
  Dataset truncated(std::size_t n_slots) const;

 private:
  TimeGrid grid_;
  std::vector<SensorSeries> series_;
};

// Each slot holds the mean (or median) of the readings in [slot, slot + 1h);
// slots without readings are missing. Values within a slot are sorted before
// aggregation, so the result does not depend on input order.
Dataset resample_hourly(std::span<const RawReading> readings,
                        const TimeGrid& grid,
                        Aggregation aggregation = Aggregation::kMean);

// Grid spanning the hours touched by `readings`.
TimeGrid grid_for(std::span<const RawReading> readings);

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct RawCsv {
  std::vector<RawReading> readings;
  std::vector<RejectedRow> rejected;
  std::size_t rows_read = 0;
};

// Long-format CSV with a header naming timestamp, sensor_id and vwc columns
// in any order. Common aliases (time/datetime, sensor/device, value) are
// accepted. Malformed rows are collected, not thrown.
RawCsv read_raw_csv(std::istream& in);
RawCsv read_raw_csv_file(const std::string& path);

// Wide CSV: timestamp,<sensor_1>,...,<sensor_n>[,provenance]. Empty, "NA" and
// "nan" cells are missing. Lines starting with '#' are comments.
struct HourlyMatrix {
  Dataset dataset;
  std::vector<std::string> provenance;  // empty unless the column exists
};
HourlyMatrix read_hourly_csv(std::istream& in);
HourlyMatrix read_hourly_csv_file(const std::string& path);

// Loads either layout, sniffing the header.
Dataset load_dataset_file(const std::string& path,
                          Aggregation aggregation = Aggregation::kMean);

// Shortest round-trip decimal text; empty for missing.
std::string format_value(double v);

// Writes the wide layout. `comments` are emitted first as "# " lines.
// `provenance`, when non-empty, must have one entry per slot and is written
// as a trailing column.
void write_hourly_csv(std::ostream& out, const Dataset& dataset,
                      std::span<const std::string> comments = {},
                      std::span<const std::string> provenance = {});

}  // namespace soilcast

#endif  // SOILCAST_DATASET_HPP_
