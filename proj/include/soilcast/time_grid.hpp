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

#ifndef SOILCAST_TIME_GRID_HPP_
#define SOILCAST_TIME_GRID_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace soilcast {

// Wall-clock instants. Corpus timestamps are local-naive and treated as a
// uniform clock, so no time-zone conversion happens anywhere.
using Instant = std::chrono::sys_seconds;

constexpr std::chrono::seconds kSlotDuration{3600};

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.fff]]" with 'T' or ' ' as the
// separator. A trailing 'Z' or UTC offset is accepted and ignored.
std::optional<Instant> parse_instant(std::string_view text);

// "YYYY-MM-DDTHH:MM:SS"
std::string format_instant(Instant t);
// "YYYY-MM-DD"
std::string format_date(Instant t);

Instant floor_to_hour(Instant t);

class TimeGrid {
 public:
  TimeGrid(Instant start, std::size_t n_slots);

  Instant start() const { return start_; }
  std::size_t n_slots() const { return n_slots_; }
  Instant end() const { return start_ + kSlotDuration * n_slots_; }

  Instant time_of(std::size_t slot) const {
    return start_ + kSlotDuration * static_cast<std::int64_t>(slot);
  }
  // Slot containing t under half-open [slot, slot + 1h) assignment.
  std::optional<std::size_t> slot_of(Instant t) const;
  int hour_of_day(std::size_t slot) const;

  // Sub-grid of `count` slots beginning at `first`.
  TimeGrid sub_grid(std::size_t first, std::size_t count) const;

  // Smallest grid covering [first, last].
  static TimeGrid covering(Instant first, Instant last);

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  Instant start_;
  std::size_t n_slots_;
};

}  // namespace soilcast

#endif  // SOILCAST_TIME_GRID_HPP_
