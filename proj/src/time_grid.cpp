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

#include "soilcast/time_grid.hpp"

#include <charconv>
#include <cstdio>

#include "soilcast/error.hpp"

namespace soilcast {
namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  const char* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc() && ptr == first + len;
}

}  // namespace

std::optional<Instant> parse_instant(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '"')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '"' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!read_int(text, 0, 4, y) || text.size() < 10 || text[4] != '-' ||
      !read_int(text, 5, 2, mo) || text[7] != '-' || !read_int(text, 8, 2, d)) {
    return std::nullopt;
  }
  if (text.size() > 10) {
    if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
    if (!read_int(text, 11, 2, h) || text.size() < 16 || text[13] != ':' ||
        !read_int(text, 14, 2, mi)) {
      return std::nullopt;
    }
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
      if (!read_int(text, 17, 2, s)) return std::nullopt;
      pos = 19;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      }
    }
    if (pos < text.size()) {
      const char c = text[pos];
      if (c != 'Z' && c != '+' && c != '-') return std::nullopt;
    }
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return Instant{sys_days{ymd}} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_instant(Instant t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day ymd{day_start};
  const auto secs = (t - day_start).count();
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lld",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long long>(secs / 3600),
                static_cast<long long>((secs / 60) % 60),
                static_cast<long long>(secs % 60));
  return buf;
}

std::string format_date(Instant t) { return format_instant(t).substr(0, 10); }

Instant floor_to_hour(Instant t) {
  return std::chrono::floor<std::chrono::hours>(t);
}

TimeGrid::TimeGrid(Instant start, std::size_t n_slots)
    : start_(start), n_slots_(n_slots) {
  if (n_slots == 0) {
    throw Error(Errc::kInvalidArgument, "TimeGrid needs at least one slot");
  }
  if (floor_to_hour(start) != start) {
    throw Error(Errc::kInvalidArgument,
                "TimeGrid start must be aligned to the hour: " +
                    format_instant(start));
  }
}

std::optional<std::size_t> TimeGrid::slot_of(Instant t) const {
  if (t < start_ || t >= end()) return std::nullopt;
  return static_cast<std::size_t>((t - start_) / kSlotDuration);
}

int TimeGrid::hour_of_day(std::size_t slot) const {
  const Instant t = time_of(slot);
  const auto since_midnight = t - std::chrono::floor<std::chrono::days>(t);
  return static_cast<int>(since_midnight / kSlotDuration);
}

TimeGrid TimeGrid::sub_grid(std::size_t first, std::size_t count) const {
  if (first + count > n_slots_) {
    throw Error(Errc::kInvalidArgument, "sub_grid out of range");
  }
  return TimeGrid(time_of(first), count);
}

TimeGrid TimeGrid::covering(Instant first, Instant last) {
  const Instant start = floor_to_hour(first);
  const auto n = (floor_to_hour(last) - start) / kSlotDuration + 1;
  return TimeGrid(start, static_cast<std::size_t>(n));
}

}  // namespace soilcast
