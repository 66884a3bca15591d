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

#include "soilcast/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "soilcast/error.hpp"
#include "text_util.hpp"

namespace soilcast {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kMinutesPerDay = 24 * 60;

struct Interval {
  int begin;  // minutes after night start, half-open
  int end;
  int length() const { return end - begin; }
};

std::vector<Interval> free_intervals(int night_minutes, std::span<const BlackoutWindow> blackouts,
                                     Instant night_start) {
  std::vector<Interval> blocked;
  for (const auto& b : blackouts) {
    const auto from = std::chrono::floor<std::chrono::minutes>(b.start - night_start).count();
    const auto to = std::chrono::ceil<std::chrono::minutes>(b.end - night_start).count();
    const int lo = static_cast<int>(std::clamp<long long>(from, 0, night_minutes));
    const int hi = static_cast<int>(std::clamp<long long>(to, 0, night_minutes));
    if (hi > lo) blocked.push_back({lo, hi});
  }
  std::sort(blocked.begin(), blocked.end(),
            [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
  std::vector<Interval> free;
  int cursor = 0;
  for (const auto& b : blocked) {
    if (b.begin > cursor) free.push_back({cursor, b.begin});
    cursor = std::max(cursor, b.end);
  }
  if (cursor < night_minutes) free.push_back({cursor, night_minutes});
  return free;
}

std::string opt_instant(const std::optional<Instant>& t) {
  return t ? format_instant(*t) : std::string();
}

Instant date_midnight(const std::string& date) {
  const auto t = parse_instant(date);
  if (!t || date.size() != 10) throw Error(Errc::kInvalidArgument, "invalid date: " + date);
  return *t;
}

}  // namespace

void ZoneConfig::validate() const {
  std::vector<std::string> problems;
  if (zone_id.empty()) problems.push_back("zone_id is empty");
  if (!(application_rate > 0.0) || !std::isfinite(application_rate)) {
    problems.push_back("application_rate must be > 0");
  }
  if (!(target_vwc > 0.0 && target_vwc < 100.0)) problems.push_back("target_vwc must be in (0, 100)");
  if (!(vwc_to_mm >= 0.0) || !std::isfinite(vwc_to_mm)) problems.push_back("vwc_to_mm must be >= 0");
  if (max_runtime <= 0) problems.push_back("max_runtime must be > 0");
  if (main_line.empty()) problems.push_back("main_line is empty");
  if (problems.empty()) return;
  std::string msg = "zone " + zone_id + ":";
  for (const auto& p : problems) msg += " " + p + ";";
  throw Error(Errc::kInvalidArgument, msg);
}

std::string_view status_name(ProposalStatus status) {
  switch (status) {
    case ProposalStatus::kProposed: return "proposed";
    case ProposalStatus::kAccepted: return "accepted";
    case ProposalStatus::kOverridden: return "overridden";
    case ProposalStatus::kSkipped: return "skipped";
  }
  return "proposed";
}

std::optional<ProposalStatus> parse_status(std::string_view text) {
  for (auto s : {ProposalStatus::kProposed, ProposalStatus::kAccepted,
                 ProposalStatus::kOverridden, ProposalStatus::kSkipped}) {
    if (status_name(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<double> zone_forecast_vwc(
    std::span<const std::optional<std::vector<double>>> member_forecasts,
    std::size_t horizon_hours) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& f : member_forecasts) {
    if (!f) continue;
    double lo = INFINITY;
    const std::size_t n = std::min(horizon_hours, f->size());
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isfinite((*f)[i])) lo = std::min(lo, (*f)[i]);
    }
    if (!std::isfinite(lo)) continue;
    sum += lo;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

double deficit_from_vwc(const ZoneConfig& zone, double zone_vwc) {
  return std::max(0.0, zone.target_vwc - zone_vwc) * zone.vwc_to_mm;
}

std::optional<double> compute_deficit(
    const ZoneConfig& zone,
    std::span<const std::optional<std::vector<double>>> member_forecasts) {
  const auto vwc = zone_forecast_vwc(member_forecasts);
  if (!vwc) return std::nullopt;
  return deficit_from_vwc(zone, *vwc);
}

double rain_credit(double deficit_mm, double precip_mm) {
  if (precip_mm < 0.0) throw Error(Errc::kInvalidArgument, "precipitation must be >= 0");
  return std::max(0.0, deficit_mm - precip_mm);
}

RuntimeMinutes minutes_from_deficit(double net_deficit_mm, const ZoneConfig& zone) {
  if (!(zone.application_rate > 0.0)) {
    throw Error(Errc::kInvalidArgument, "application_rate must be > 0");
  }
  RuntimeMinutes out;
  if (!(net_deficit_mm > 0.0)) return out;
  // The epsilon keeps exact quotients such as 5 / 0.5 from rounding up.
  const double raw = std::ceil(net_deficit_mm / zone.application_rate - 1e-9);
  if (raw > zone.max_runtime) {
    out.minutes = zone.max_runtime;
    out.capped = true;
  } else {
    out.minutes = static_cast<int>(std::max(0.0, raw));
  }
  return out;
}

Proposal propose_zone(const ZoneConfig& zone, const std::string& date,
                      std::optional<double> deficit_mm, double precip_mm,
                      std::optional<int> fallback_minutes) {
  Proposal p;
  p.zone_id = zone.zone_id;
  p.date = date;
  p.main_line = zone.main_line;
  if (deficit_mm) {
    const double net = rain_credit(*deficit_mm, precip_mm);
    p.deficit_mm = *deficit_mm;
    p.rain_credit_mm = *deficit_mm - net;
    const auto m = minutes_from_deficit(net, zone);
    p.runtime_minutes = m.minutes;
    p.capped = m.capped;
  } else {
    p.status = ProposalStatus::kSkipped;
    p.reason = "no-data";
    p.fallback = true;
    p.runtime_minutes = std::clamp(fallback_minutes.value_or(0), 0, zone.max_runtime);
  }
  p.requested_minutes = p.runtime_minutes;
  return p;
}

void NightSpan::validate() const {
  if (start_minute < 0 || start_minute >= kMinutesPerDay || end_minute < 0 ||
      end_minute >= kMinutesPerDay || start_minute == end_minute) {
    throw Error(Errc::kInvalidArgument, "night span must be two distinct clock times");
  }
}

Instant NightSpan::start_on(const std::string& date) const {
  return date_midnight(date) + std::chrono::minutes(start_minute);
}

Instant NightSpan::end_on(const std::string& date) const {
  const int day = end_minute <= start_minute ? kMinutesPerDay : 0;
  return date_midnight(date) + std::chrono::minutes(day + end_minute);
}

std::optional<int> parse_clock(std::string_view text) {
  text = detail::trim(text);
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  for (std::size_t i : {0, 1, 3, 4}) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  const int h = (text[0] - '0') * 10 + (text[1] - '0');
  const int m = (text[3] - '0') * 10 + (text[4] - '0');
  if (h > 23 || m > 59) return std::nullopt;
  return h * 60 + m;
}

std::optional<NightSpan> parse_night_span(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  const auto a = parse_clock(text.substr(0, dash));
  const auto b = parse_clock(text.substr(dash + 1));
  if (!a || !b || *a == *b) return std::nullopt;
  return NightSpan{*a, *b};
}

std::optional<BlackoutRule> parse_blackout(std::string_view text, std::string reason) {
  text = detail::trim(text);
  BlackoutRule rule;
  rule.reason = std::move(reason);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto a = parse_instant(detail::trim(text.substr(0, slash)));
    const auto b = parse_instant(detail::trim(text.substr(slash + 1)));
    if (!a || !b || !(*b > *a)) return std::nullopt;
    rule.fixed = BlackoutWindow{*a, *b, rule.reason};
    return rule;
  }
  rule.recurring = parse_night_span(text);
  if (!rule.recurring) return std::nullopt;
  return rule;
}

std::vector<BlackoutWindow> blackouts_for_night(std::span<const BlackoutRule> rules,
                                                const std::string& date) {
  std::vector<BlackoutWindow> out;
  const Instant midnight = date_midnight(date);
  for (const auto& r : rules) {
    if (r.fixed) {
      out.push_back(*r.fixed);
      continue;
    }
    for (int day = -1; day <= 1; ++day) {
      const Instant base = midnight + std::chrono::days(day);
      const Instant s = base + std::chrono::minutes(r.recurring->start_minute);
      const int wrap = r.recurring->end_minute <= r.recurring->start_minute ? kMinutesPerDay : 0;
      const Instant e = base + std::chrono::minutes(wrap + r.recurring->end_minute);
      out.push_back({s, e, r.reason});
    }
  }
  return out;
}

Schedule sequence_zones(std::vector<Proposal> proposals, std::span<const BlackoutWindow> blackouts,
                        const NightSpan& night, const std::string& date) {
  night.validate();
  for (const auto& b : blackouts) {
    if (!(b.end > b.start)) throw Error(Errc::kInvalidArgument, "blackout end must follow start");
  }
  const Instant night_start = night.start_on(date);
  const int night_minutes = static_cast<int>(
      std::chrono::duration_cast<std::chrono::minutes>(night.end_on(date) - night_start).count());
  const auto free_all = free_intervals(night_minutes, blackouts, night_start);
  int capacity = 0;
  for (const auto& f : free_all) capacity += f.length();

  Schedule out;
  std::map<std::string, std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    Proposal& p = proposals[i];
    p.window_start.reset();
    p.window_end.reset();
    p.requested_minutes = std::max(p.requested_minutes, p.runtime_minutes);
    if (p.runtime_minutes < 0) throw Error(Errc::kInvalidArgument, "negative runtime");
    lines[p.main_line].push_back(i);
  }
  for (auto& [line, members] : lines) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return proposals[a].zone_id < proposals[b].zone_id;
    });
    long long demand = 0;
    for (std::size_t i : members) demand += proposals[i].runtime_minutes;
    bool reduced = false;
    if (demand > capacity) {
      for (std::size_t i : members) {
        Proposal& p = proposals[i];
        const int scaled = static_cast<int>(
            (static_cast<long long>(p.runtime_minutes) * capacity) / demand);
        if (scaled < p.runtime_minutes) {
          p.runtime_minutes = scaled;
          p.truncated = true;
          reduced = true;
        }
      }
    }
    std::vector<Interval> free = free_all;
    int scheduled = 0;
    for (std::size_t i : members) {
      Proposal& p = proposals[i];
      if (p.runtime_minutes == 0) continue;
      auto slot = std::find_if(free.begin(), free.end(),
                               [&](const Interval& f) { return f.length() >= p.runtime_minutes; });
      if (slot == free.end()) {
        slot = std::max_element(free.begin(), free.end(), [](const Interval& a, const Interval& b) {
          return a.length() < b.length();
        });
        const int room = slot == free.end() ? 0 : slot->length();
        p.runtime_minutes = room;
        p.truncated = true;
        reduced = true;
        if (room == 0) continue;
      }
      p.window_start = night_start + std::chrono::minutes(slot->begin);
      p.window_end = night_start + std::chrono::minutes(slot->begin + p.runtime_minutes);
      slot->begin += p.runtime_minutes;
      if (slot->length() == 0) free.erase(slot);
      scheduled += p.runtime_minutes;
    }
    if (reduced) {
      out.overflow.push_back({line, static_cast<int>(demand), capacity, scheduled});
    }
  }
  out.proposals = std::move(proposals);
  return out;
}

std::map<std::string, double> read_precip_csv(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cells = detail::split_csv(trimmed);
    if (header) {
      header = false;
      if (cells.size() < 2 || detail::to_lower(detail::trim(cells[0])) != "date") {
        throw Error(Errc::kParse, "precip csv: expected header date,precip_mm_24h");
      }
      continue;
    }
    if (cells.size() < 2) {
      throw Error(Errc::kParse, "precip csv line " + std::to_string(line_no) + ": too few cells");
    }
    const std::string date(detail::trim(cells[0]));
    double mm = 0.0;
    try {
      std::size_t used = 0;
      const std::string cell(detail::trim(cells[1]));
      mm = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(Errc::kParse, "precip csv line " + std::to_string(line_no) + ": bad value");
    }
    if (!(mm >= 0.0) || !parse_instant(date) || date.size() != 10) {
      throw Error(Errc::kParse, "precip csv line " + std::to_string(line_no) + ": invalid row");
    }
    out[date] = mm;
  }
  return out;
}

std::map<std::string, double> read_precip_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open " + path);
  return read_precip_csv(in);
}

std::string proposal_to_json(const Proposal& p) {
  Json j;
  j["zone_id"] = p.zone_id;
  j["date"] = p.date;
  j["runtime_minutes"] = p.runtime_minutes;
  j["window_start"] = p.window_start ? Json(opt_instant(p.window_start)) : Json(nullptr);
  j["window_end"] = p.window_end ? Json(opt_instant(p.window_end)) : Json(nullptr);
  j["deficit_mm"] = p.deficit_mm;
  j["rain_credit_mm"] = p.rain_credit_mm;
  j["status"] = std::string(status_name(p.status));
  j["main_line"] = p.main_line;
  j["requested_minutes"] = p.requested_minutes;
  j["capped"] = p.capped;
  j["truncated"] = p.truncated;
  j["fallback"] = p.fallback;
  if (p.override_minutes) j["override_minutes"] = *p.override_minutes;
  if (!p.reason.empty()) j["reason"] = p.reason;
  if (p.decided_at) j["decided_at"] = *p.decided_at;
  return j.dump();
}

Proposal proposal_from_json(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const std::exception& e) {
    throw Error(Errc::kParse, std::string("proposal: ") + e.what());
  }
  try {
    Proposal p;
    p.zone_id = j.at("zone_id").get<std::string>();
    p.date = j.at("date").get<std::string>();
    p.runtime_minutes = j.at("runtime_minutes").get<int>();
    for (auto [key, field] : {std::pair{"window_start", &p.window_start},
                              std::pair{"window_end", &p.window_end}}) {
      if (j.contains(key) && !j[key].is_null()) {
        const auto t = parse_instant(j[key].get<std::string>());
        if (!t) throw Error(Errc::kParse, std::string("proposal: bad ") + key);
        *field = *t;
      }
    }
    p.deficit_mm = j.value("deficit_mm", 0.0);
    p.rain_credit_mm = j.value("rain_credit_mm", 0.0);
    const auto status = parse_status(j.value("status", std::string("proposed")));
    if (!status) throw Error(Errc::kParse, "proposal: unknown status");
    p.status = *status;
    p.main_line = j.value("main_line", std::string("main"));
    p.requested_minutes = j.value("requested_minutes", p.runtime_minutes);
    p.capped = j.value("capped", false);
    p.truncated = j.value("truncated", false);
    p.fallback = j.value("fallback", false);
    if (j.contains("override_minutes")) p.override_minutes = j["override_minutes"].get<int>();
    p.reason = j.value("reason", std::string());
    if (j.contains("decided_at")) p.decided_at = j["decided_at"].get<std::string>();
    if (p.status == ProposalStatus::kOverridden && !p.override_minutes) {
      throw Error(Errc::kParse, "proposal: overridden without override_minutes");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParse, std::string("proposal: ") + e.what());
  }
}

std::vector<Proposal> read_proposals(std::string_view text) {
  std::vector<Proposal> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    if (line.find("\"meta\"") != std::string::npos) {
      const auto j = Json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.contains("meta")) continue;
    }
    out.push_back(proposal_from_json(line));
  }
  return out;
}

CommitResult commit_proposals(std::vector<Proposal> proposals, std::span<const ZoneConfig> zones,
                              const CommitOptions& options) {
  auto find_zone = [&](const std::string& id) -> const ZoneConfig* {
    for (const auto& z : zones) {
      if (z.zone_id == id) return &z;
    }
    return nullptr;
  };
  std::vector<std::string> problems;
  for (const auto& [zone, minutes] : options.overrides) {
    const auto it = std::find_if(proposals.begin(), proposals.end(),
                                 [&](const Proposal& p) { return p.zone_id == zone; });
    if (it == proposals.end()) problems.push_back("override for unknown zone " + zone);
  }
  for (const auto& [zone, reason] : options.skips) {
    const auto it = std::find_if(proposals.begin(), proposals.end(),
                                 [&](const Proposal& p) { return p.zone_id == zone; });
    if (it == proposals.end()) problems.push_back("skip for unknown zone " + zone);
  }

  CommitResult result;
  for (Proposal& p : proposals) {
    const std::string stamp =
        options.committed_at.empty() ? p.date + "T16:00:00" : options.committed_at;
    const bool decided_now = options.overrides.count(p.zone_id) || options.skips.count(p.zone_id) ||
                             (options.accept_all && p.status == ProposalStatus::kProposed);
    if (auto it = options.overrides.find(p.zone_id); it != options.overrides.end()) {
      p.status = ProposalStatus::kOverridden;
      p.override_minutes = it->second;
    } else if (auto sk = options.skips.find(p.zone_id); sk != options.skips.end()) {
      p.status = ProposalStatus::kSkipped;
      p.reason = sk->second.empty() ? "operator" : sk->second;
      p.fallback = false;
    } else if (options.accept_all && p.status == ProposalStatus::kProposed) {
      p.status = ProposalStatus::kAccepted;
    }
    if (decided_now || (p.status != ProposalStatus::kProposed && !p.decided_at)) {
      p.decided_at = stamp;
    }

    ExecutedRun run{p.zone_id, p.date, 0, std::string(status_name(p.status)), stamp};
    switch (p.status) {
      case ProposalStatus::kProposed:
        result.unreviewed.push_back(p.zone_id);
        continue;
      case ProposalStatus::kAccepted:
        run.executed_minutes = p.runtime_minutes;
        break;
      case ProposalStatus::kOverridden: {
        const ZoneConfig* z = find_zone(p.zone_id);
        const int m = *p.override_minutes;
        if (m < 0) problems.push_back("override for " + p.zone_id + " is negative");
        if (z && m > z->max_runtime) {
          problems.push_back("override for " + p.zone_id + " exceeds max_runtime " +
                             std::to_string(z->max_runtime));
        }
        run.executed_minutes = m;
        break;
      }
      case ProposalStatus::kSkipped:
        run.executed_minutes = p.fallback ? p.runtime_minutes : 0;
        break;
    }
    result.executed.push_back(run);
  }
  if (!problems.empty()) {
    std::string msg = "commit rejected:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw Error(Errc::kInvalidArgument, msg);
  }
  result.proposals = std::move(proposals);
  return result;
}

std::string executed_to_json(const ExecutedRun& run) {
  Json j;
  j["zone_id"] = run.zone_id;
  j["date"] = run.date;
  j["executed_minutes"] = run.executed_minutes;
  j["status"] = run.status;
  j["committed_at"] = run.committed_at;
  return j.dump();
}

std::vector<ExecutedRun> read_executed_log(std::string_view text) {
  std::vector<ExecutedRun> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      const auto j = Json::parse(line);
      if (j.contains("meta")) continue;
      out.push_back({j.at("zone_id").get<std::string>(), j.at("date").get<std::string>(),
                     j.at("executed_minutes").get<int>(), j.value("status", std::string()),
                     j.value("committed_at", std::string())});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kParse,
                  "executed log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::map<std::string, int> last_accepted_runtimes(std::span<const ExecutedRun> log,
                                                  const std::string& date) {
  std::map<std::string, std::pair<std::string, int>> latest;
  for (const auto& r : log) {
    if (r.date >= date) continue;
    if (r.status != "accepted" && r.status != "overridden") continue;
    auto it = latest.find(r.zone_id);
    // Later lines win among equal dates.
    if (it == latest.end() || r.date >= it->second.first) latest[r.zone_id] = {r.date, r.executed_minutes};
  }
  std::map<std::string, int> out;
  for (const auto& [zone, v] : latest) out[zone] = v.second;
  return out;
}

}  // namespace soilcast
