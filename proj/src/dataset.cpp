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

#include "soilcast/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "soilcast/error.hpp"
#include "text_util.hpp"

namespace soilcast {

Dataset::Dataset(TimeGrid grid, std::vector<SensorSeries> series)
    : grid_(grid), series_(std::move(series)) {
  std::sort(series_.begin(), series_.end(),
            [](const SensorSeries& a, const SensorSeries& b) {
              return a.sensor_id() < b.sensor_id();
            });
  for (std::size_t i = 0; i < series_.size(); ++i) {
    if (!(series_[i].grid() == grid_)) {
      throw Error(Errc::kInvalidArgument,
                  "series " + series_[i].sensor_id() + " is on a different grid");
    }
    if (i > 0 && series_[i].sensor_id() == series_[i - 1].sensor_id()) {
      throw Error(Errc::kInvalidArgument,
                  "duplicate sensor id " + series_[i].sensor_id());
    }
  }
}

const SensorSeries* Dataset::find(std::string_view sensor_id) const {
  auto it = std::lower_bound(series_.begin(), series_.end(), sensor_id,
                             [](const SensorSeries& s, std::string_view id) {
                               return s.sensor_id() < id;
                             });
  if (it == series_.end() || it->sensor_id() != sensor_id) return nullptr;
  return &*it;
}

const SensorSeries& Dataset::at(std::string_view sensor_id) const {
  if (const SensorSeries* s = find(sensor_id)) return *s;
  throw Error(Errc::kInvalidArgument,
              "unknown sensor " + std::string(sensor_id));
}

std::vector<std::string> Dataset::sensor_ids() const {
  std::vector<std::string> ids;
  ids.reserve(series_.size());
  for (const auto& s : series_) ids.push_back(s.sensor_id());
  return ids;
}

Dataset Dataset::with_series(SensorSeries replacement) const {
  std::vector<SensorSeries> copy = series_;
  auto it = std::find_if(copy.begin(), copy.end(), [&](const SensorSeries& s) {
    return s.sensor_id() == replacement.sensor_id();
  });
  if (it == copy.end()) {
    copy.push_back(std::move(replacement));
  } else {
    *it = std::move(replacement);
  }
  return Dataset(grid_, std::move(copy));
}

Dataset Dataset::truncated(std::size_t n_slots) const {
  std::vector<SensorSeries> cut;
  cut.reserve(series_.size());
  for (const auto& s : series_) cut.push_back(slice_slots(s, 0, n_slots));
  return Dataset(grid_.sub_grid(0, n_slots), std::move(cut));
}

TimeGrid grid_for(std::span<const RawReading> readings) {
  if (readings.empty()) {
    throw Error(Errc::kInsufficientData, "no readings");
  }
  auto [lo, hi] = std::minmax_element(
      readings.begin(), readings.end(),
      [](const RawReading& a, const RawReading& b) {
        return a.timestamp < b.timestamp;
      });
  return TimeGrid::covering(lo->timestamp, hi->timestamp);
}

Dataset resample_hourly(std::span<const RawReading> readings,
                        const TimeGrid& grid, Aggregation aggregation) {
  if (readings.empty()) {
    throw Error(Errc::kInsufficientData, "resample_hourly: no readings");
  }
  // sensor -> slot -> values
  std::map<std::string, std::vector<std::vector<double>>> buckets;
  for (std::size_t i = 0; i < readings.size(); ++i) {
    const RawReading& r = readings[i];
    if (!std::isfinite(r.vwc)) {
      throw Error(Errc::kInvalidArgument,
                  "reading " + std::to_string(i) + " has a non-finite value");
    }
    const auto slot = grid.slot_of(r.timestamp);
    if (!slot) {
      throw Error(Errc::kInvalidArgument,
                  "reading " + std::to_string(i) + " at " +
                      format_instant(r.timestamp) + " lies outside the grid");
    }
    auto& slots = buckets[r.sensor_id];
    if (slots.empty()) slots.resize(grid.n_slots());
    slots[*slot].push_back(r.vwc);
  }
  std::vector<SensorSeries> out;
  out.reserve(buckets.size());
  for (auto& [id, slots] : buckets) {
    std::vector<double> values(grid.n_slots(), kMissing);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto& bucket = slots[s];
      if (bucket.empty()) continue;
      std::sort(bucket.begin(), bucket.end());
      const std::size_t n = bucket.size();
      if (aggregation == Aggregation::kMedian) {
        values[s] = n % 2 == 1 ? bucket[n / 2]
                               : 0.5 * (bucket[n / 2 - 1] + bucket[n / 2]);
      } else {
        double sum = 0.0;
        for (double v : bucket) sum += v;
        values[s] = sum / static_cast<double>(n);
      }
    }
    out.emplace_back(id, grid, std::move(values));
  }
  return Dataset(grid, std::move(out));
}

namespace {

int find_column(const std::vector<std::string>& header,
                std::initializer_list<std::string_view> names) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string h = detail::to_lower(header[i]);
    for (auto n : names) {
      if (h == n) return static_cast<int>(i);
    }
  }
  return -1;
}

bool parse_cell(std::string_view cell, double& out) {
  cell = detail::trim(cell);
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

bool is_missing_token(std::string_view cell) {
  const std::string c = detail::to_lower(detail::trim(cell));
  return c.empty() || c == "na" || c == "nan" || c == "null";
}

}  // namespace

RawCsv read_raw_csv(std::istream& in) {
  RawCsv result;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    header = detail::split_csv(line);
    break;
  }
  if (header.empty()) {
    throw Error(Errc::kParse, "raw CSV has no header");
  }
  const int ts_col = find_column(header, {"timestamp", "time", "datetime", "date_time"});
  const int id_col = find_column(header, {"sensor_id", "sensor", "device", "device_id", "sensorid"});
  const int v_col = find_column(header, {"vwc", "value", "soil_moisture", "moisture"});
  if (ts_col < 0 || id_col < 0 || v_col < 0) {
    throw Error(Errc::kParse,
                "raw CSV header must name timestamp, sensor_id and vwc columns");
  }
  const auto needed = static_cast<std::size_t>(std::max({ts_col, id_col, v_col}));
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    ++result.rows_read;
    const auto cells = detail::split_csv(line);
    if (cells.size() <= needed) {
      result.rejected.push_back({line_no, "too few columns"});
      continue;
    }
    const auto ts = parse_instant(cells[ts_col]);
    if (!ts) {
      result.rejected.push_back({line_no, "bad timestamp '" + cells[ts_col] + "'"});
      continue;
    }
    const std::string id(detail::trim(cells[id_col]));
    if (id.empty()) {
      result.rejected.push_back({line_no, "empty sensor_id"});
      continue;
    }
    double v = 0.0;
    if (!parse_cell(cells[v_col], v) || !std::isfinite(v)) {
      result.rejected.push_back({line_no, "bad vwc '" + cells[v_col] + "'"});
      continue;
    }
    result.readings.push_back({id, *ts, v});
  }
  return result;
}

RawCsv read_raw_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  return read_raw_csv(in);
}

HourlyMatrix read_hourly_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty() || line.front() == '#') continue;
    header = detail::split_csv(line);
    break;
  }
  if (header.size() < 2) {
    throw Error(Errc::kParse, "hourly CSV needs a timestamp and a sensor column");
  }
  std::size_t n_sensors = header.size() - 1;
  const bool has_provenance = detail::to_lower(header.back()) == "provenance";
  if (has_provenance) --n_sensors;

  std::vector<std::pair<Instant, std::vector<double>>> rows;
  std::vector<std::string> provenance_rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto cells = detail::split_csv(line);
    if (cells.size() < n_sensors + 1) {
      throw Error(Errc::kParse, "hourly CSV line " + std::to_string(line_no) +
                                    ": expected " + std::to_string(n_sensors + 1) +
                                    " columns");
    }
    const auto ts = parse_instant(cells[0]);
    if (!ts) {
      throw Error(Errc::kParse, "hourly CSV line " + std::to_string(line_no) +
                                    ": bad timestamp");
    }
    std::vector<double> values(n_sensors, kMissing);
    for (std::size_t c = 0; c < n_sensors; ++c) {
      const auto& cell = cells[c + 1];
      if (is_missing_token(cell)) continue;
      if (!parse_cell(cell, values[c]) || !std::isfinite(values[c])) {
        throw Error(Errc::kParse, "hourly CSV line " + std::to_string(line_no) +
                                      ": bad value '" + cell + "'");
      }
    }
    rows.emplace_back(*ts, std::move(values));
    if (has_provenance) {
      provenance_rows.push_back(cells.size() > n_sensors + 1
                                    ? std::string(detail::trim(cells[n_sensors + 1]))
                                    : std::string());
    }
  }
  if (rows.empty()) throw Error(Errc::kInsufficientData, "hourly CSV has no rows");
  Instant lo = rows.front().first, hi = rows.front().first;
  for (const auto& r : rows) {
    lo = std::min(lo, r.first);
    hi = std::max(hi, r.first);
  }
  const TimeGrid grid = TimeGrid::covering(lo, hi);
  std::vector<std::vector<double>> columns(
      n_sensors, std::vector<double>(grid.n_slots(), kMissing));
  std::vector<std::string> provenance;
  if (has_provenance) provenance.assign(grid.n_slots(), "");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t slot = *grid.slot_of(rows[r].first);
    for (std::size_t c = 0; c < n_sensors; ++c) columns[c][slot] = rows[r].second[c];
    if (has_provenance) provenance[slot] = provenance_rows[r];
  }
  std::vector<SensorSeries> series;
  for (std::size_t c = 0; c < n_sensors; ++c) {
    series.emplace_back(std::string(detail::trim(header[c + 1])), grid,
                        std::move(columns[c]));
  }
  return {Dataset(grid, std::move(series)), std::move(provenance)};
}

HourlyMatrix read_hourly_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  return read_hourly_csv(in);
}

Dataset load_dataset_file(const std::string& path, Aggregation aggregation) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!detail::trim(line).empty() && line.front() != '#') break;
  }
  const auto header = detail::split_csv(line);
  const bool long_format =
      find_column(header, {"sensor_id", "sensor", "device", "device_id", "sensorid"}) >= 0 &&
      find_column(header, {"vwc", "value", "soil_moisture", "moisture"}) >= 0;
  if (long_format) {
    const RawCsv raw = read_raw_csv_file(path);
    if (raw.readings.empty()) {
      throw Error(Errc::kInsufficientData, path + ": no valid readings");
    }
    return resample_hourly(raw.readings, grid_for(raw.readings), aggregation);
  }
  return read_hourly_csv_file(path).dataset;
}

std::string format_value(double v) {
  if (is_missing(v)) return {};
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_hourly_csv(std::ostream& out, const Dataset& dataset,
                      std::span<const std::string> comments,
                      std::span<const std::string> provenance) {
  const TimeGrid& grid = dataset.grid();
  if (!provenance.empty() && provenance.size() != grid.n_slots()) {
    throw Error(Errc::kInvalidArgument, "provenance length mismatch");
  }
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "timestamp";
  for (const auto& s : dataset.series()) out << ',' << s.sensor_id();
  if (!provenance.empty()) out << ",provenance";
  out << '\n';
  for (std::size_t slot = 0; slot < grid.n_slots(); ++slot) {
    out << format_instant(grid.time_of(slot));
    for (const auto& s : dataset.series()) out << ',' << format_value(s[slot]);
    if (!provenance.empty()) out << ',' << provenance[slot];
    out << '\n';
  }
}

}  // namespace soilcast
