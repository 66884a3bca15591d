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

#include "soilcast/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "soilcast/detectors.hpp"
#include "soilcast/error.hpp"
#include "soilcast/file_io.hpp"
#include "soilcast/knn_forecaster.hpp"
#include "soilcast/random.hpp"

namespace soilcast {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool is_date(const std::string& s) {
  return s.size() == 10 && s[4] == '-' && s[7] == '-' && parse_instant(s).has_value() &&
         format_date(*parse_instant(s)) == s;
}

// Per-run bookkeeping shared by the stages.
struct Run {
  const PipelineConfig& config;
  DailyResult& result;
  std::size_t stage = 0;

  void note(const std::string& text) {
    result.trace.push_back("[" + std::to_string(stage + 1) + "] " + kStageNames[stage] + ": " +
                           text);
  }

  // Runs one stage; an exception marks it failed and the run partial.
  template <typename Fn>
  void stage_run(std::size_t index, Fn&& fn) {
    stage = index;
    StageStatus status{kStageNames[index], true, ""};
    try {
      status.detail = fn();
      note("ok" + (status.detail.empty() ? std::string() : " (" + status.detail + ")"));
    } catch (const std::exception& e) {
      status.ok = false;
      status.detail = e.what();
      result.partial = true;
      note(std::string("FAILED: ") + e.what());
    }
    result.stages.push_back(status);
  }
};

Json stats_json(const Evidence& evidence) {
  Json j = Json::object();
  for (const auto& [k, v] : evidence.stats) j[k] = v;
  return j;
}

std::size_t earliest_evidence(const FaultVerdict& verdict, std::size_t window_begin,
                              std::size_t fallback) {
  std::size_t first = fallback;
  for (const auto& o : verdict.fired) {
    for (const auto& r : o.evidence.ranges) first = std::min(first, window_begin + r.begin);
  }
  return first;
}

}  // namespace

std::optional<InjectedOutage> parse_injection(const std::string& text) {
  // The instant itself contains colons, so split on its fixed width.
  constexpr std::size_t kInstantWidth = 19;
  const auto first = text.find(':');
  if (first == std::string::npos || first == 0) return std::nullopt;
  const std::size_t sep = first + 1 + kInstantWidth;
  if (text.size() <= sep + 1 || text[sep] != ':') return std::nullopt;
  const auto start = parse_instant(text.substr(first + 1, kInstantWidth));
  if (!start) return std::nullopt;
  InjectedOutage out;
  out.sensor_id = text.substr(0, first);
  out.start = *start;
  try {
    std::size_t used = 0;
    const std::string hours = text.substr(sep + 1);
    const long long h = std::stoll(hours, &used);
    if (used != hours.size() || h < 0) return std::nullopt;
    out.hours = static_cast<std::size_t>(h);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return out;
}

int DailyResult::exit_code() const {
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (!stages[i].ok) {
      for (std::size_t s = 0; s < kStageCount; ++s) {
        if (stages[i].name == kStageNames[s]) return 10 + static_cast<int>(s);
      }
      return 10;
    }
  }
  return 0;
}

std::string meta_line(const PipelineConfig& config, const std::string& kind,
                      const std::string& date, Instant generated_at) {
  Json meta;
  meta["kind"] = kind;
  meta["date"] = date;
  meta["generated_at"] = format_instant(generated_at);
  meta["config_hash"] = config_hash(config);
  meta["seed"] = config.seed;
  Json j;
  j["meta"] = meta;
  return j.dump() + "\n";
}

std::string verdict_lines(const FaultVerdict& verdict, const TimeGrid& window_grid,
                          const std::string& date) {
  std::string out;
  for (const auto& o : verdict.fired) {
    Json j;
    j["sensor_id"] = verdict.sensor_id;
    j["date"] = date;
    j["detector"] = std::string(detector_name(o.rule));
    j["window_start"] = format_instant(window_grid.start());
    j["window_end"] = format_instant(window_grid.end());
    Json ranges = Json::array();
    for (const auto& r : o.evidence.ranges) {
      ranges.push_back(Json::array({format_instant(window_grid.time_of(r.begin)),
                                    format_instant(window_grid.time_of(r.end))}));
    }
    j["ranges"] = ranges;
    j["stats"] = stats_json(o.evidence);
    out += j.dump() + "\n";
  }
  return out;
}

std::string event_line(const VirtualEvent& event, const TimeGrid& grid, const std::string& date) {
  Json j;
  j["event"] = std::string(event_name(event.kind));
  j["date"] = date;
  j["target_id"] = event.target_id;
  j["neighbour_id"] = event.neighbour_id;
  j["at"] = format_instant(grid.time_of(event.slot));
  j["detail"] = event.detail;
  return j.dump() + "\n";
}

std::string virtual_states_to_json(const std::map<std::string, VirtualSensorState>& states,
                                   const TimeGrid& grid, const std::string& date) {
  Json j;
  j["date"] = date;
  Json arr = Json::array();
  for (const auto& [target, s] : states) {
    Json e;
    e["target_id"] = s.target_id;
    e["neighbour_id"] = s.neighbour_id;
    e["active"] = s.active;
    e["unbacked"] = s.unbacked;
    e["activated_at"] = format_instant(grid.time_of(s.activated_at));
    e["last_refresh"] = format_instant(grid.time_of(s.last_refresh));
    if (s.model) e["training_mae"] = s.model->training_mae;
    arr.push_back(e);
  }
  j["states"] = arr;
  return j.dump(2) + "\n";
}

std::map<std::string, VirtualSensorState> virtual_states_from_json(const std::string& text,
                                                                   const TimeGrid& grid) {
  std::map<std::string, VirtualSensorState> out;
  try {
    const Json j = Json::parse(text);
    for (const auto& e : j.at("states")) {
      VirtualSensorState s;
      s.target_id = e.at("target_id").get<std::string>();
      s.neighbour_id = e.at("neighbour_id").get<std::string>();
      s.active = e.at("active").get<bool>();
      s.unbacked = e.at("unbacked").get<bool>();
      for (auto [key, field] : {std::pair{"activated_at", &s.activated_at},
                                std::pair{"last_refresh", &s.last_refresh}}) {
        const auto t = parse_instant(e.at(key).get<std::string>());
        if (!t || *t < grid.start()) throw Error(Errc::kParse, std::string("bad ") + key);
        *field = static_cast<std::size_t>((*t - grid.start()) / kSlotDuration);
      }
      out[s.target_id] = s;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParse, std::string("virtual state: ") + e.what());
  }
  return out;
}

std::optional<std::string> previous_state_file(const std::string& out_dir,
                                               const std::string& date) {
  std::error_code ec;
  if (!fs::is_directory(out_dir, ec)) return std::nullopt;
  std::string best;
  for (const auto& entry : fs::directory_iterator(out_dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_directory() || !is_date(name) || name >= date) continue;
    if (!fs::is_regular_file(entry.path() / "virtual_state.json")) continue;
    best = std::max(best, name);
  }
  if (best.empty()) return std::nullopt;
  return (fs::path(out_dir) / best / "virtual_state.json").string();
}

DailyResult run_daily(const PipelineConfig& config, const std::string& date,
                      const DailyOptions& options) {
  if (!is_date(date)) throw Error(Errc::kInvalidArgument, "run-daily: date must be YYYY-MM-DD");
  if (const auto problems = validate_config(config, true); !problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(Errc::kInvalidArgument, msg);
  }
  DailyResult result;
  result.date = date;
  result.directory = (fs::path(config.paths.out_dir) / date).string();
  Run run{config, result};
  const Instant trigger = *parse_instant(date) + std::chrono::minutes(config.pipeline.trigger_minute);

  std::optional<Dataset> data;
  std::size_t day_slot = 0;
  std::size_t window_len = 0;
  std::string dataset_fingerprint;
  std::map<std::string, double> precip;
  bool have_precip = false;
  std::vector<ExecutedRun> executed;
  std::map<std::string, FaultVerdict> verdicts;
  std::map<std::string, std::vector<double>> effective;  // series used downstream
  std::vector<std::string> provenance;
  std::map<std::string, std::optional<std::vector<double>>> forecasts;
  std::map<std::string, std::string> forecast_input;

  run.stage_run(0, [&]() -> std::string {
    const std::string raw = read_file(config.paths.dataset);
    dataset_fingerprint = hex64(fnv1a64(raw));
    Dataset full = load_dataset_file(config.paths.dataset);
    const TimeGrid& g = full.grid();
    if (trigger < g.start() || trigger > g.end()) {
      throw Error(Errc::kInvalidArgument, "trigger " + format_instant(trigger) +
                                              " lies outside the dataset");
    }
    day_slot = static_cast<std::size_t>((trigger - g.start()) / kSlotDuration);
    if (day_slot < WindowSpec::kMinHours) {
      throw Error(Errc::kInsufficientData, "fewer than 200 h of history before the trigger");
    }
    Dataset current = full.truncated(day_slot);
    for (const auto& inj : options.injections) {
      const SensorSeries* s = current.find(inj.sensor_id);
      if (s == nullptr) throw Error(Errc::kInvalidArgument, "injection for unknown " + inj.sensor_id);
      std::vector<double> v(s->values().begin(), s->values().end());
      for (std::size_t t = 0; t < v.size(); ++t) {
        const Instant at = g.time_of(t);
        if (at >= inj.start && at < inj.start + kSlotDuration * static_cast<long>(inj.hours)) {
          v[t] = kMissing;
        }
      }
      current = current.with_series(SensorSeries(inj.sensor_id, s->grid(), std::move(v)));
      run.note("injected outage " + inj.sensor_id + " from " + format_instant(inj.start) + " for " +
               std::to_string(inj.hours) + " h");
    }
    data = std::move(current);
    window_len = std::min(config.pipeline.screen_window_hours, day_slot);
    for (const auto& s : data->series()) {
      effective[s.sensor_id()].assign(s.values().begin(), s.values().end());
    }
    if (!config.paths.precip.empty()) {
      precip = read_precip_csv_file(config.paths.precip);
      have_precip = true;
    }
    const std::string log_path = config.executed_log_path();
    if (fs::is_regular_file(log_path)) executed = read_executed_log(read_file(log_path));
    return std::to_string(data->size()) + " sensors, " + std::to_string(day_slot) +
           " slots before " + format_instant(trigger);
  });

  auto window_of = [&](const SensorSeries& s) {
    return slice_window(s, WindowSpec{window_len, day_slot});
  };

  run.stage_run(1, [&]() -> std::string {
    if (!data) throw Error(Errc::kInsufficientData, "no dataset");
    std::size_t faulty = 0;
    for (const auto& s : data->series()) {
      FaultVerdict v = screen(window_of(s), config.rules, WindowSpec{window_len, day_slot});
      v.sensor_id = s.sensor_id();
      if (v.faulty()) {
        ++faulty;
        std::string names;
        for (const auto& o : v.fired) names += (names.empty() ? "" : ",") + std::string(detector_name(o.rule));
        run.note(s.sensor_id() + " fired " + names);
      }
      verdicts[s.sensor_id()] = std::move(v);
    }
    return std::to_string(faulty) + " sensors failed a rule";
  });

  run.stage_run(2, [&]() -> std::string {
    if (!data) throw Error(Errc::kInsufficientData, "no dataset");
    std::size_t flagged = 0, index = 0;
    for (const auto& s : data->series()) {
      FaultVerdict& v = verdicts[s.sensor_id()];
      const std::size_t i = index++;
      if (v.faulty()) continue;
      Rng rng = make_stream(config.seed, "iforest", i);
      DetectorRun det = run_detectors(window_of(s), config.detectors, rng);
      for (const auto& n : det.notes) run.note(s.sensor_id() + ": " + n);
      for (auto& o : det.outcomes) v.add(std::move(o));
      if (v.faulty()) {
        ++flagged;
        std::string names;
        for (const auto& o : v.fired) names += (names.empty() ? "" : ",") + std::string(detector_name(o.rule));
        run.note(s.sensor_id() + " flagged by " + names);
      }
    }
    return std::to_string(flagged) + " sensors flagged by detectors";
  });

  std::set<std::string> faulty;
  for (const auto& [id, v] : verdicts) {
    if (v.faulty()) faulty.insert(id);
  }

  provenance.assign(window_len, "observed");
  run.stage_run(3, [&]() -> std::string {
    if (!data) throw Error(Errc::kInsufficientData, "no dataset");
    const TimeGrid& g = data->grid();
    std::map<std::string, VirtualSensorState> states;
    if (const auto prev = previous_state_file(config.paths.out_dir, date)) {
      states = virtual_states_from_json(read_file(*prev), g);
      run.note("state carried over from " + fs::path(*prev).parent_path().filename().string());
    }
    for (auto it = states.begin(); it != states.end();) {
      if (!it->second.active || !data->find(it->first)) {
        it = states.erase(it);
      } else {
        ++it;
      }
    }
    NeighbourMap neighbours;
    bool have_neighbours = false;
    auto ensure_neighbours = [&] {
      if (have_neighbours) return;
      have_neighbours = true;
      if (!config.paths.mi_matrix.empty() && fs::is_regular_file(config.paths.mi_matrix)) {
        std::ifstream in(config.paths.mi_matrix);
        neighbours = top1_neighbours(read_mi_matrix_csv(in));
        run.note("neighbours from " + config.paths.mi_matrix);
      } else {
        KsgConfig ksg = config.ksg;
        ksg.seed = config.seed;
        neighbours = top1_neighbours(mi_matrix(*data, ksg));
        run.note("neighbours from MI over " + std::to_string(day_slot) + " h of history");
      }
    };

    auto unavailable_for = [&](const std::string& target) {
      std::set<std::string> out;
      for (const auto& f : faulty) {
        if (f != target) out.insert(f);
      }
      for (const auto& [t, s] : states) {
        if (t != target && s.active) out.insert(t);
      }
      return out;
    };

    for (auto& [target, state] : states) {
      auto update = refresh_daily(state, *data, day_slot, unavailable_for(target), config.rules,
                                  config.seed, config.mlp);
      state = update.state;
      result.events.insert(result.events.end(), update.events.begin(), update.events.end());
    }
    for (const auto& target : faulty) {
      if (states.count(target) && states[target].active) continue;
      ensure_neighbours();
      const Neighbour* nb = neighbours.find(target);
      const std::size_t begin = day_slot - window_len;
      const std::size_t at = earliest_evidence(verdicts[target], begin, day_slot - 24);
      auto update = activate_virtual_sensor(*data, target, nb ? nb->sensor_id : std::string(), at,
                                            day_slot, unavailable_for(target), config.seed,
                                            config.mlp);
      states[target] = update.state;
      result.events.insert(result.events.end(), update.events.begin(), update.events.end());
    }

    std::size_t backed = 0;
    for (auto& [target, state] : states) {
      if (!state.active) continue;
      auto& values = effective[target];
      if (state.unbacked || !state.model) {
        // Nothing trustworthy to forecast from.
        std::fill(values.begin() + static_cast<std::ptrdiff_t>(std::min(state.activated_at, day_slot)),
                  values.end(), kMissing);
        continue;
      }
      ++backed;
      const auto virt = predict_series(*state.model, data->at(state.neighbour_id),
                                       state.activated_at, day_slot);
      for (std::size_t t = state.activated_at; t < day_slot; ++t) {
        values[t] = virt[t - state.activated_at];
        if (t >= day_slot - window_len) {
          std::string& p = provenance[t - (day_slot - window_len)];
          p = (p == "observed" ? "virtual:" : p + ";") + target;
        }
      }
    }
    for (const auto& [t, s] : states) {
      if (s.active || std::any_of(result.events.begin(), result.events.end(),
                                  [&](const VirtualEvent& e) { return e.target_id == t; })) {
        result.virtual_states[t] = s;
      }
    }
    return std::to_string(backed) + " virtual sensors serving";
  });

  run.stage_run(4, [&]() -> std::string {
    if (!data) throw Error(Errc::kInsufficientData, "no dataset");
    std::size_t produced = 0;
    const std::size_t len = std::min(config.knn.window_hours, day_slot);
    for (const auto& s : data->series()) {
      const std::string& id = s.sensor_id();
      const auto vs = result.virtual_states.find(id);
      const bool virtual_input = vs != result.virtual_states.end() && vs->second.active &&
                                 !vs->second.unbacked;
      if (faulty.count(id) && !virtual_input) {
        forecasts[id] = std::nullopt;
        run.note(id + ": no forecast (faulty, no backup)");
        continue;
      }
      if (vs != result.virtual_states.end() && vs->second.active && vs->second.unbacked) {
        forecasts[id] = std::nullopt;
        run.note(id + ": no forecast (virtual sensor unbacked)");
        continue;
      }
      try {
        const SensorSeries series(id, data->grid(), effective[id]);
        const auto model = fit_knn(series, WindowSpec{len, day_slot}, config.knn);
        forecasts[id] = model.forecast(config.knn.horizon_hours);
        forecast_input[id] = virtual_input ? "virtual" : "observed";
        ++produced;
      } catch (const Error& e) {
        forecasts[id] = std::nullopt;
        run.note(id + ": no forecast (" + e.what() + ")");
      }
    }
    return std::to_string(produced) + " of " + std::to_string(data->size()) + " sensors forecast";
  });

  std::vector<std::optional<double>> deficits(config.zones.size());
  run.stage_run(5, [&]() -> std::string {
    std::size_t with_data = 0;
    for (std::size_t z = 0; z < config.zones.size(); ++z) {
      const ZoneConfig& zone = config.zones[z];
      std::vector<std::optional<std::vector<double>>> members;
      for (const auto& m : zone.members) {
        const auto it = forecasts.find(m);
        if (it == forecasts.end()) {
          run.note(zone.zone_id + ": member " + m + " has no forecast");
          members.push_back(std::nullopt);
        } else {
          members.push_back(it->second);
        }
      }
      deficits[z] = compute_deficit(zone, members);
      if (deficits[z]) {
        ++with_data;
        run.note(zone.zone_id + " deficit " + format_value(*deficits[z]) + " mm");
      } else {
        run.note(zone.zone_id + ": no member forecasts");
      }
    }
    return std::to_string(with_data) + " of " + std::to_string(config.zones.size()) +
           " zones with data";
  });

  std::vector<double> nets(config.zones.size(), 0.0);
  double rain_mm = 0.0;
  run.stage_run(6, [&]() -> std::string {
    if (have_precip) {
      const auto it = precip.find(date);
      if (it != precip.end()) {
        rain_mm = it->second;
      } else {
        run.note("no precipitation forecast for " + date + "; assuming 0 mm");
      }
    } else {
      run.note("no precipitation file configured; assuming 0 mm");
    }
    for (std::size_t z = 0; z < config.zones.size(); ++z) {
      if (deficits[z]) nets[z] = rain_credit(*deficits[z], rain_mm);
    }
    return "forecast rain " + format_value(rain_mm) + " mm";
  });

  std::vector<Proposal> proposals;
  run.stage_run(7, [&]() -> std::string {
    const auto last = last_accepted_runtimes(executed, date);
    for (std::size_t z = 0; z < config.zones.size(); ++z) {
      const ZoneConfig& zone = config.zones[z];
      const auto it = last.find(zone.zone_id);
      Proposal p = propose_zone(zone, date, deficits[z], rain_mm,
                                it == last.end() ? std::nullopt : std::optional<int>(it->second));
      if (p.fallback) {
        run.note(zone.zone_id + ": falling back to last accepted runtime " +
                 std::to_string(p.runtime_minutes) + " min");
      }
      proposals.push_back(std::move(p));
    }
    int total = 0;
    for (const auto& p : proposals) total += p.runtime_minutes;
    return std::to_string(total) + " min requested";
  });

  run.stage_run(8, [&]() -> std::string {
    const auto windows = blackouts_for_night(config.blackouts, date);
    Schedule schedule = sequence_zones(proposals, windows, config.night, date);
    for (const auto& o : schedule.overflow) {
      run.note("overflow on line " + o.main_line + ": demand " + std::to_string(o.demand_minutes) +
               " min, free " + std::to_string(o.capacity_minutes) + " min, scheduled " +
               std::to_string(o.scheduled_minutes) + " min");
    }
    proposals = std::move(schedule.proposals);
    return std::to_string(proposals.size()) + " zones sequenced";
  });
  result.proposals = proposals;

  run.stage_run(9, [&]() -> std::string {
    const fs::path dir(result.directory);
    std::map<std::string, std::string> files;

    std::string text = meta_line(config, "proposals", date, trigger);
    for (const auto& p : proposals) text += proposal_to_json(p) + "\n";
    files["proposals.jsonl"] = text;

    text = meta_line(config, "faults", date, trigger);
    for (const auto& [id, v] : verdicts) {
      if (!v.faulty()) continue;
      result.faults.push_back(v);
      text += verdict_lines(v, data->grid().sub_grid(day_slot - window_len, window_len), date);
    }
    if (data) {
      for (const auto& e : result.events) text += event_line(e, data->grid(), date);
    }
    files["faults.jsonl"] = text;

    std::ostringstream csv;
    csv << "# kind=forecasts date=" << date << " generated_at=" << format_instant(trigger)
        << " config_hash=" << config_hash(config) << " seed=" << config.seed << " model=knn\n";
    csv << "sensor_id,timestamp,forecast_vwc,input\n";
    for (const auto& [id, f] : forecasts) {
      if (!f) continue;
      for (std::size_t h = 0; h < f->size(); ++h) {
        csv << id << ',' << format_instant(trigger + kSlotDuration * static_cast<long>(h)) << ','
            << format_value((*f)[h]) << ',' << forecast_input[id] << '\n';
      }
    }
    files["forecasts.csv"] = csv.str();

    if (data) {
      std::vector<SensorSeries> cols;
      const TimeGrid wg = data->grid().sub_grid(day_slot - window_len, window_len);
      for (const auto& s : data->series()) {
        const auto& v = effective[s.sensor_id()];
        cols.emplace_back(s.sensor_id(), wg,
                          std::vector<double>(v.end() - static_cast<std::ptrdiff_t>(window_len), v.end()));
      }
      std::ostringstream m;
      const std::vector<std::string> comments{
          "kind=matrix date=" + date + " generated_at=" + format_instant(trigger) +
          " config_hash=" + config_hash(config) + " seed=" + std::to_string(config.seed)};
      write_hourly_csv(m, Dataset(wg, std::move(cols)), comments, provenance);
      files["matrix.csv"] = m.str();
      files["virtual_state.json"] = virtual_states_to_json(result.virtual_states, data->grid(), date);
    }
    run.note("writing " + std::to_string(files.size() + 2) + " files to " + date + "/");

    for (const auto& [name, content] : files) write_file_atomic((dir / name).string(), content);

    Json manifest;
    manifest["date"] = date;
    manifest["generated_at"] = format_instant(trigger);
    manifest["config_hash"] = config_hash(config);
    manifest["seed"] = config.seed;
    manifest["dataset_fingerprint"] = dataset_fingerprint;
    Json stages = Json::array();
    for (const auto& s : result.stages) {
      stages.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    }
    stages.push_back({{"name", "write"}, {"ok", true}, {"detail", ""}});
    manifest["stages"] = stages;
    manifest["partial"] = result.partial;
    Json hashes = Json::object();
    for (const auto& [name, content] : files) hashes[name] = hex64(fnv1a64(content));
    manifest["files"] = hashes;
    files.clear();

    std::string trace;
    for (const auto& line : result.trace) trace += line + "\n";
    trace += "[10] write: ok\n";
    write_file_atomic((dir / "trace.log").string(), trace);
    write_file_atomic((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    return "";
  });
  return result;
}

}  // namespace soilcast
