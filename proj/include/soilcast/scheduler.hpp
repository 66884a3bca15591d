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

// Zone runtime proposals and overnight sequencing.
//
// A zone's forecast is the mean over its member sensors of each sensor's
// minimum forecast over the next 24 h. The deficit below the target level is
// converted to millimetres, reduced by forecast rain, and turned into whole
// minutes at the zone's application rate. Zones sharing a main line are then
// placed one after another into the free parts of the night.

#ifndef SOILCAST_SCHEDULER_HPP_
#define SOILCAST_SCHEDULER_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soilcast/time_grid.hpp"

namespace soilcast {

struct ZoneConfig {
  std::string zone_id;
  std::vector<std::string> members;
  double application_rate = 0.5;  // mm per minute
  double target_vwc = 22.0;       // percent
  double vwc_to_mm = 1.5;         // mm per vwc percent
  std::string main_line = "main";
  int max_runtime = 60;  // minutes

  // Throws listing every violated field.
  void validate() const;
};

enum class ProposalStatus { kProposed, kAccepted, kOverridden, kSkipped };

std::string_view status_name(ProposalStatus status);
std::optional<ProposalStatus> parse_status(std::string_view text);

struct Proposal {
  std::string zone_id;
  std::string date;  // YYYY-MM-DD of the trigger day
  std::string main_line;
  int runtime_minutes = 0;
  int requested_minutes = 0;  // before any truncation
  std::optional<Instant> window_start;
  std::optional<Instant> window_end;
  double deficit_mm = 0.0;
  double rain_credit_mm = 0.0;
  ProposalStatus status = ProposalStatus::kProposed;
  std::optional<int> override_minutes;  // when overridden
  std::string reason;                   // when skipped or fallen back
  std::optional<std::string> decided_at;
  bool capped = false;
  bool truncated = false;
  bool fallback = false;  // runtime taken from the last accepted run
};

// Mean over the available members of each member's minimum forecast.
// Members mapped to nullopt (or with empty or all-NaN vectors) are skipped.
// Returns nullopt when no member has a forecast.
std::optional<double> zone_forecast_vwc(
    std::span<const std::optional<std::vector<double>>> member_forecasts,
    std::size_t horizon_hours = 24);

// max(0, target - zone forecast) * vwc_to_mm, or nullopt with no data.
std::optional<double> compute_deficit(
    const ZoneConfig& zone,
    std::span<const std::optional<std::vector<double>>> member_forecasts);
double deficit_from_vwc(const ZoneConfig& zone, double zone_vwc);

// max(0, deficit - precipitation forecast over the coming 24 h).
double rain_credit(double deficit_mm, double precip_mm);

struct RuntimeMinutes {
  int minutes = 0;
  bool capped = false;
};
// ceil(net / application_rate), capped at max_runtime.
RuntimeMinutes minutes_from_deficit(double net_deficit_mm, const ZoneConfig& zone);

// Unsequenced proposal for one zone. An empty `deficit_mm` means no member
// had a forecast: the zone is skipped ("no-data") and repeats
// `fallback_minutes`, capped at max_runtime, or 0 without history.
Proposal propose_zone(const ZoneConfig& zone, const std::string& date,
                      std::optional<double> deficit_mm, double precip_mm,
                      std::optional<int> fallback_minutes = std::nullopt);

// Night span as minutes after midnight. The span starts on the trigger date
// and, when end <= start, ends on the following day.
struct NightSpan {
  int start_minute = 22 * 60;
  int end_minute = 6 * 60;

  void validate() const;
  Instant start_on(const std::string& date) const;
  Instant end_on(const std::string& date) const;
};

// "HH:MM-HH:MM"
std::optional<NightSpan> parse_night_span(std::string_view text);
std::optional<int> parse_clock(std::string_view text);  // "HH:MM" -> minutes

struct BlackoutWindow {
  Instant start;
  Instant end;
  std::string reason;
};

// A blackout either recurs nightly ("HH:MM-HH:MM") or is a fixed interval
// ("<instant>/<instant>").
struct BlackoutRule {
  std::optional<NightSpan> recurring;  // clock times of the recurring window
  std::optional<BlackoutWindow> fixed;
  std::string reason;
};
std::optional<BlackoutRule> parse_blackout(std::string_view text, std::string reason);

// Concrete windows for the night starting on `date`. Recurring rules are
// instantiated on both the trigger date and the following day so that any
// crossing of midnight is covered.
std::vector<BlackoutWindow> blackouts_for_night(std::span<const BlackoutRule> rules,
                                                const std::string& date);

struct OverflowEntry {
  std::string main_line;
  int demand_minutes = 0;
  int capacity_minutes = 0;
  int scheduled_minutes = 0;
};

struct Schedule {
  std::vector<Proposal> proposals;  // input order
  std::vector<OverflowEntry> overflow;
};

// Serializes zones per main line into the free parts of the night span
// (first fit, zones in zone_id order). When a line's demand exceeds its free
// time every zone on it is scaled down proportionally; a zone that still has
// no contiguous room is cut to the largest free interval left. Reduced zones
// are flagged truncated and the line is reported in `overflow`. Proposals
// with zero minutes get no window.
Schedule sequence_zones(std::vector<Proposal> proposals, std::span<const BlackoutWindow> blackouts,
                        const NightSpan& night, const std::string& date);

// Precipitation forecast CSV: date,precip_mm_24h. Throws on malformed rows.
std::map<std::string, double> read_precip_csv(std::istream& in);
std::map<std::string, double> read_precip_csv_file(const std::string& path);

// One JSON object per line. Lines holding a "meta" object are skipped on
// read.
std::string proposal_to_json(const Proposal& proposal);
Proposal proposal_from_json(std::string_view line);
std::vector<Proposal> read_proposals(std::string_view text);

// Operator decisions applied before commit.
struct CommitOptions {
  bool accept_all = false;  // proposed -> accepted
  std::map<std::string, int> overrides;
  std::map<std::string, std::string> skips;  // zone -> reason
  std::string committed_at;                  // default: date + "T16:00:00"
};

struct ExecutedRun {
  std::string zone_id;
  std::string date;
  int executed_minutes = 0;
  std::string status;
  std::string committed_at;
};

struct CommitResult {
  std::vector<Proposal> proposals;  // with decisions applied
  std::vector<ExecutedRun> executed;
  std::vector<std::string> unreviewed;  // zones still "proposed"
};

// Applies `options`, validates overrides against the zone caps, and returns
// the executed-runtime records for accepted, overridden and skipped zones.
CommitResult commit_proposals(std::vector<Proposal> proposals,
                              std::span<const ZoneConfig> zones, const CommitOptions& options);

std::string executed_to_json(const ExecutedRun& run);
std::vector<ExecutedRun> read_executed_log(std::string_view text);

// Latest executed minutes per zone among runs dated strictly before `date`.
std::map<std::string, int> last_accepted_runtimes(std::span<const ExecutedRun> log,
                                                  const std::string& date);

}  // namespace soilcast

#endif  // SOILCAST_SCHEDULER_HPP_
