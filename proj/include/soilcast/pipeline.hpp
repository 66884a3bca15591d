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

// The 16:00 daily run.
//
// Stages, in order: ingest, screen-rules, screen-detectors, virtual-sensors,
// forecast, deficit, rain-credit, minutes, sequence, write. Every artifact of
// a day goes to <out_dir>/<date>/ and is written atomically, so re-running a
// day replaces its outputs. Nothing depends on the wall clock; the trigger
// instant stamps every artifact.

#ifndef SOILCAST_PIPELINE_HPP_
#define SOILCAST_PIPELINE_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soilcast/config.hpp"
#include "soilcast/dataset.hpp"
#include "soilcast/neighbourhood.hpp"
#include "soilcast/rules.hpp"
#include "soilcast/scheduler.hpp"
#include "soilcast/virtual_sensor.hpp"

namespace soilcast {

inline constexpr const char* kStageNames[] = {
    "ingest",   "screen-rules", "screen-detectors", "virtual-sensors", "forecast",
    "deficit",  "rain-credit",  "minutes",          "sequence",        "write"};
inline constexpr std::size_t kStageCount = std::size(kStageNames);

// Hides `hours` slots of `sensor_id` starting at `start` before screening.
struct InjectedOutage {
  std::string sensor_id;
  Instant start;
  std::size_t hours = 0;
};

// "SENSOR:START:HOURS" with START an instant, e.g.
// "SENS0021:2023-01-02T16:00:00:96".
std::optional<InjectedOutage> parse_injection(const std::string& text);

struct DailyOptions {
  std::vector<InjectedOutage> injections;
};

struct StageStatus {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct DailyResult {
  std::string date;
  std::string directory;
  std::vector<StageStatus> stages;  // in execution order
  std::vector<std::string> trace;
  std::vector<Proposal> proposals;
  std::vector<FaultVerdict> faults;
  std::vector<VirtualEvent> events;
  std::map<std::string, VirtualSensorState> virtual_states;
  bool partial = false;

  // 0 when every stage succeeded; otherwise 10 + index of the first failed
  // stage.
  int exit_code() const;
};

DailyResult run_daily(const PipelineConfig& config, const std::string& date,
                      const DailyOptions& options = {});

// Shared JSON renderers (one object per line).
std::string meta_line(const PipelineConfig& config, const std::string& kind,
                      const std::string& date, Instant generated_at);
std::string verdict_lines(const FaultVerdict& verdict, const TimeGrid& window_grid,
                          const std::string& date);
std::string event_line(const VirtualEvent& event, const TimeGrid& grid, const std::string& date);

// Virtual sensor state persisted between days. Slots are stored as
// instants so the file survives a dataset that has grown.
std::string virtual_states_to_json(const std::map<std::string, VirtualSensorState>& states,
                                   const TimeGrid& grid, const std::string& date);
std::map<std::string, VirtualSensorState> virtual_states_from_json(const std::string& text,
                                                                   const TimeGrid& grid);

// Latest <out_dir>/<YYYY-MM-DD>/virtual_state.json strictly before `date`.
std::optional<std::string> previous_state_file(const std::string& out_dir,
                                               const std::string& date);

}  // namespace soilcast

#endif  // SOILCAST_PIPELINE_HPP_
