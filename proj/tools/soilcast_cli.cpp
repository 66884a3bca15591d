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

// soilcast: command-line front end for the irrigation pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "soilcast/config.hpp"
#include "soilcast/dataset.hpp"
#include "soilcast/error.hpp"
#include "soilcast/evaluation.hpp"
#include "soilcast/file_io.hpp"
#include "soilcast/knn_forecaster.hpp"
#include "soilcast/neighbourhood.hpp"
#include "soilcast/pipeline.hpp"
#include "soilcast/random.hpp"
#include "soilcast/sarima.hpp"
#include "soilcast/scheduler.hpp"
#include "soilcast/synthetic.hpp"
#include "soilcast/virtual_sensor.hpp"

namespace fs = std::filesystem;
using namespace soilcast;
using Json = nlohmann::ordered_json;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kBadInput = 3,
  kNoData = 4,
  kIoFailure = 5,
};

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::kInvalidArgument: return kUsage;
    case Errc::kParse: return kBadInput;
    case Errc::kInsufficientData:
    case Errc::kDegenerate: return kNoData;
    case Errc::kIo: return kIoFailure;
  }
  return kUsage;
}

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::vector<std::string> sets;
};

PipelineConfig effective_config(const Globals& g) {
  std::vector<std::string> overrides = g.sets;
  if (g.seed) overrides.push_back("seed=" + std::to_string(*g.seed));
  if (!g.out_dir.empty()) overrides.push_back("paths.out_dir=" + g.out_dir);
  return load_config(g.config_path, overrides);
}

std::string header_comment(const PipelineConfig& c, const std::string& kind) {
  return "kind=" + kind + " config_hash=" + config_hash(c) + " seed=" + std::to_string(c.seed);
}

std::string out_path(const PipelineConfig& c, const std::string& name) {
  return (fs::path(c.paths.out_dir) / name).string();
}

Json meta_json(const PipelineConfig& c, const std::string& kind) {
  return Json{{"meta", {{"kind", kind}, {"config_hash", config_hash(c)}, {"seed", c.seed}}}};
}

void require_dataset(const PipelineConfig& c) {
  if (c.paths.dataset.empty()) {
    throw Error(Errc::kInvalidArgument, "no dataset: set paths.dataset or pass --dataset");
  }
}

void check_valid(const PipelineConfig& c, bool paths) {
  const auto problems = validate_config(c, paths);
  if (problems.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw Error(Errc::kInvalidArgument, msg);
}

Instant require_instant(const std::string& text, const char* what) {
  const auto t = parse_instant(text);
  if (!t) throw Error(Errc::kInvalidArgument, std::string(what) + ": cannot parse '" + text + "'");
  return *t;
}

std::size_t slot_at(const TimeGrid& g, Instant t, const char* what) {
  if (t < g.start() || t > g.end()) {
    throw Error(Errc::kInvalidArgument, std::string(what) + " lies outside the dataset");
  }
  return static_cast<std::size_t>((t - g.start()) / kSlotDuration);
}

// --- subcommands -----------------------------------------------------------

int cmd_ingest(const PipelineConfig& c, const std::string& input, const std::string& agg) {
  const RawCsv raw = read_raw_csv_file(input);
  for (const auto& r : raw.rejected) {
    std::cerr << input << ":" << r.line << ": rejected: " << r.reason << "\n";
  }
  if (raw.readings.empty()) {
    std::cerr << "ingest: no valid rows in " << input << "\n";
    return kNoData;
  }
  const Aggregation a = agg == "median" ? Aggregation::kMedian : Aggregation::kMean;
  const Dataset ds = resample_hourly(raw.readings, grid_for(raw.readings), a);
  std::size_t filled = 0;
  for (const auto& s : ds.series()) filled += s.size() - s.missing_count();
  std::ostringstream csv;
  write_hourly_csv(csv, ds, std::vector<std::string>{header_comment(c, "hourly")});
  write_file_atomic(out_path(c, "hourly.csv"), csv.str());
  Json report = meta_json(c, "ingest");
  report["input"] = input;
  report["rows_read"] = raw.rows_read;
  report["readings"] = raw.readings.size();
  report["rejected"] = raw.rejected.size();
  Json rej = Json::array();
  for (const auto& r : raw.rejected) rej.push_back({{"line", r.line}, {"reason", r.reason}});
  report["rejections"] = rej;
  report["sensors"] = ds.size();
  report["slots"] = ds.grid().n_slots();
  report["slots_filled"] = filled;
  report["first_slot"] = format_instant(ds.grid().start());
  write_file_atomic(out_path(c, "ingest_report.json"), report.dump(2) + "\n");
  std::cout << "ingest: " << raw.readings.size() << " readings, " << raw.rejected.size()
            << " rejected, " << ds.size() << " sensors x " << ds.grid().n_slots() << " slots\n";
  return kOk;
}

int cmd_screen(const PipelineConfig& c, const std::string& end_text) {
  require_dataset(c);
  const Dataset ds = load_dataset_file(c.paths.dataset);
  const std::size_t end =
      end_text.empty() ? ds.grid().n_slots() : slot_at(ds.grid(), require_instant(end_text, "--end"), "--end");
  const std::size_t len = std::min(c.pipeline.screen_window_hours, end);
  const WindowSpec spec{len, end};
  spec.validate(ds.grid().n_slots());
  const TimeGrid wg = ds.grid().sub_grid(spec.begin_slot(), len);
  const std::string date = format_date(wg.end());
  std::string text = meta_json(c, "faults").dump() + "\n";
  std::size_t index = 0, faulty = 0;
  for (const auto& s : ds.series()) {
    Rng rng = make_stream(c.seed, "iforest", index++);
    std::vector<std::string> notes;
    FaultVerdict v = screen_with_detectors(slice_window(s, spec), c.rules, c.detectors, rng, spec, &notes);
    v.sensor_id = s.sensor_id();
    for (const auto& n : notes) std::cerr << s.sensor_id() << ": " << n << "\n";
    if (v.faulty()) ++faulty;
    text += verdict_lines(v, wg, date);
  }
  write_file_atomic(out_path(c, "faults.jsonl"), text);
  std::cout << "screen: " << faulty << " of " << ds.size() << " sensors faulty over "
            << format_instant(wg.start()) << " .. " << format_instant(wg.end()) << "\n";
  return kOk;
}

int cmd_mi_graph(const PipelineConfig& c) {
  require_dataset(c);
  const Dataset ds = load_dataset_file(c.paths.dataset);
  KsgConfig ksg = c.ksg;
  ksg.seed = c.seed;
  const MIMatrix m = mi_matrix(ds, ksg);
  const NeighbourMap nb = top1_neighbours(m);
  std::ostringstream csv;
  write_mi_matrix_csv(csv, m, {header_comment(c, "mi_matrix")});
  write_file_atomic(out_path(c, "mi_matrix.csv"), csv.str());
  export_graph(m, nb, out_path(c, "mi_graph"));
  for (const auto& id : m.sensor_ids()) {
    if (const Neighbour* n = nb.find(id)) {
      std::cout << id << " -> " << n->sensor_id << " (" << format_value(n->mi) << " nats)\n";
    }
  }
  for (const auto& id : nb.unbacked) std::cout << id << " -> unbacked\n";
  return kOk;
}

int cmd_backup_sim(const PipelineConfig& c, const std::string& target, std::string neighbour,
                   const std::string& start_text, std::size_t hours) {
  require_dataset(c);
  const Dataset ds = load_dataset_file(c.paths.dataset);
  if (!ds.find(target)) throw Error(Errc::kInvalidArgument, "unknown target " + target);
  if (neighbour.empty()) {
    KsgConfig ksg = c.ksg;
    ksg.seed = c.seed;
    const NeighbourMap nb = top1_neighbours(mi_matrix(ds, ksg));
    const Neighbour* n = nb.find(target);
    if (!n) throw Error(Errc::kInsufficientData, target + " has no MI neighbour");
    neighbour = n->sensor_id;
  }
  if (neighbour == target) {
    throw Error(Errc::kInvalidArgument, "backup-sim: neighbour must differ from target");
  }
  if (!ds.find(neighbour)) throw Error(Errc::kInvalidArgument, "unknown neighbour " + neighbour);
  const std::size_t start = slot_at(ds.grid(), require_instant(start_text, "--outage-start"), "--outage-start");
  const OutageReport r = simulate_outage(ds, target, neighbour, start, hours, c.seed, c.mlp);

  // Series file: the training window, then the outage.
  std::ostringstream csv;
  csv << "# " << header_comment(c, "backup_sim") << " target=" << target << " neighbour=" << neighbour
      << " cutover=" << format_instant(ds.grid().time_of(start)) << "\n";
  csv << "timestamp,neighbour,target_truth,backup,persistence,phase\n";
  const SensorSeries& nb_series = ds.at(neighbour);
  const SensorSeries& truth = ds.at(target);
  for (std::size_t t = r.trained_on.begin_slot(); t < start; ++t) {
    csv << format_instant(ds.grid().time_of(t)) << ',' << format_value(nb_series[t]) << ','
        << format_value(truth[t]) << ",,,train\n";
  }
  for (const auto& row : r.rows) {
    csv << format_instant(ds.grid().time_of(row.slot)) << ',' << format_value(row.neighbour) << ','
        << format_value(row.truth) << ',' << format_value(row.backup) << ','
        << format_value(row.persistence) << ",outage\n";
  }
  write_file_atomic(out_path(c, "backup_sim.csv"), csv.str());

  Json report = meta_json(c, "backup_sim");
  report["target"] = target;
  report["neighbour"] = neighbour;
  report["outage_start"] = format_instant(ds.grid().time_of(start));
  report["outage_hours"] = hours;
  report["trained_on"] = {format_instant(ds.grid().time_of(r.trained_on.begin_slot())),
                          format_instant(ds.grid().time_of(r.trained_on.end_slot))};
  report["training_mae"] = hours == 0 ? Json("n/a") : Json(r.training_mae);  // no model for an empty outage
  report["backup_mae"] = r.backup_mae ? Json(*r.backup_mae) : Json("n/a");
  report["persistence_mae"] = r.persistence_mae ? Json(*r.persistence_mae) : Json("n/a");
  write_file_atomic(out_path(c, "backup_report.json"), report.dump(2) + "\n");
  std::cout << "backup-sim " << target << " <- " << neighbour << ": backup MAE "
            << (r.backup_mae ? format_value(*r.backup_mae) : "n/a") << ", persistence MAE "
            << (r.persistence_mae ? format_value(*r.persistence_mae) : "n/a") << "\n";
  return kOk;
}

int cmd_forecast(const PipelineConfig& c, const std::string& model, const std::string& end_text,
                 const std::vector<std::string>& sensors) {
  require_dataset(c);
  const Dataset ds = load_dataset_file(c.paths.dataset);
  const std::size_t end =
      end_text.empty() ? ds.grid().n_slots() : slot_at(ds.grid(), require_instant(end_text, "--end"), "--end");
  const std::size_t horizon = c.knn.horizon_hours;
  const std::size_t len = std::min(model == "sarima" ? c.eval.window_hours : c.knn.window_hours, end);
  std::ostringstream csv;
  csv << "# " << header_comment(c, "forecasts") << " model=" << model << "\n";
  csv << "sensor_id,timestamp,forecast_vwc\n";
  int failures = 0;
  for (const auto& s : ds.series()) {
    if (!sensors.empty() && std::find(sensors.begin(), sensors.end(), s.sensor_id()) == sensors.end()) {
      continue;
    }
    try {
      std::vector<double> f;
      const WindowSpec spec{len, end};
      if (model == "sarima") {
        spec.validate(ds.grid().n_slots());
        const auto fit = fit_forecast_sarima(slice_window(s, spec), c.sarima, horizon);
        if (fit.fit.fallback) std::cerr << s.sensor_id() << ": " << fit.fit.warning << "\n";
        f = fit.values;
      } else {
        f = fit_knn(s, spec, c.knn).forecast(horizon);
      }
      for (std::size_t h = 0; h < f.size(); ++h) {
        csv << s.sensor_id() << ','
            << format_instant(ds.grid().time_of(end) + kSlotDuration * static_cast<long>(h)) << ','
            << format_value(f[h]) << '\n';
      }
    } catch (const Error& e) {
      ++failures;
      std::cerr << s.sensor_id() << ": no forecast: " << e.what() << "\n";
    }
  }
  write_file_atomic(out_path(c, "forecasts.csv"), csv.str());
  return failures == 0 ? kOk : kNoData;
}

int cmd_evaluate(const PipelineConfig& c) {
  require_dataset(c);
  const Dataset ds = load_dataset_file(c.paths.dataset);
  KnnConfig knn = c.knn;
  knn.window_hours = c.eval.window_hours;
  const EvalReport r =
      rolling_origin_evaluate(ds, {knn_model(knn), sarima_model(c.sarima)}, c.eval);
  const std::vector<std::string> comments{header_comment(c, "eval"),
                                          "origins=" + std::to_string(r.candidate_origins) +
                                              " window_hours=" + std::to_string(c.eval.window_hours) +
                                              " horizon_hours=" + std::to_string(c.eval.horizon_hours)};
  std::ostringstream report, summary;
  write_eval_report_csv(report, r, comments);
  write_eval_summary_csv(summary, r, comments);
  write_file_atomic(out_path(c, "eval_report.csv"), report.str());
  write_file_atomic(out_path(c, "eval_summary.csv"), summary.str());
  std::cout << "model   mean_MAE  P75_MAE  sensors\n";
  for (const auto& s : r.summaries) {
    char line[128];
    std::snprintf(line, sizeof line, "%-7s %8.3f %8.3f %8zu\n", s.model.c_str(), s.mean_mae,
                  s.p75_mae, s.sensors);
    std::cout << line;
  }
  for (const auto& e : r.excluded) std::cout << "excluded " << e.sensor_id << " (" << e.model << "): " << e.reason << "\n";
  return kOk;
}

// Reads forecasts.csv (sensor_id,timestamp,forecast_vwc[,...]).
std::map<std::string, std::vector<double>> read_forecasts(const std::string& path) {
  std::map<std::string, std::vector<double>> out;
  std::istringstream in(read_file(path));
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) throw Error(Errc::kParse, "forecasts: short row");
    out[cells[0]].push_back(cells[2].empty() ? kMissing : std::stod(cells[2]));
  }
  return out;
}

int cmd_schedule(const PipelineConfig& c, const std::string& forecasts_path, const std::string& date) {
  if (c.zones.empty()) throw Error(Errc::kInvalidArgument, "schedule: no [zone.*] sections configured");
  const auto forecasts = read_forecasts(forecasts_path);
  double rain = 0.0;
  if (!c.paths.precip.empty()) {
    const auto precip = read_precip_csv_file(c.paths.precip);
    if (const auto it = precip.find(date); it != precip.end()) rain = it->second;
  }
  std::map<std::string, int> last;
  if (fs::is_regular_file(c.executed_log_path())) {
    last = last_accepted_runtimes(read_executed_log(read_file(c.executed_log_path())), date);
  }
  std::vector<Proposal> proposals;
  for (const auto& zone : c.zones) {
    std::vector<std::optional<std::vector<double>>> members;
    for (const auto& m : zone.members) {
      const auto it = forecasts.find(m);
      members.push_back(it == forecasts.end() ? std::nullopt
                                              : std::optional<std::vector<double>>(it->second));
    }
    const auto it = last.find(zone.zone_id);
    proposals.push_back(propose_zone(zone, date, compute_deficit(zone, members), rain,
                                     it == last.end() ? std::nullopt : std::optional<int>(it->second)));
  }
  const Schedule s = sequence_zones(proposals, blackouts_for_night(c.blackouts, date), c.night, date);
  std::string text = meta_json(c, "proposals").dump() + "\n";
  for (const auto& p : s.proposals) text += proposal_to_json(p) + "\n";
  write_file_atomic(out_path(c, "proposals.jsonl"), text);
  for (const auto& o : s.overflow) {
    std::cerr << "overflow on line " << o.main_line << ": demand " << o.demand_minutes
              << " min, free " << o.capacity_minutes << " min\n";
  }
  return kOk;
}

int cmd_run_daily(const PipelineConfig& c, const std::string& date,
                  const std::vector<std::string>& injections) {
  DailyOptions options;
  for (const auto& text : injections) {
    const auto inj = parse_injection(text);
    if (!inj) throw Error(Errc::kInvalidArgument, "--inject expects SENSOR:START:HOURS, got " + text);
    options.injections.push_back(*inj);
  }
  const DailyResult r = run_daily(c, date, options);
  for (const auto& line : r.trace) std::cout << line << "\n";
  std::cout << "run-daily " << date << ": " << r.proposals.size() << " proposals, "
            << r.faults.size() << " faulty sensors" << (r.partial ? ", PARTIAL" : "") << " -> "
            << r.directory << "\n";
  return r.exit_code();
}

int cmd_commit(const PipelineConfig& c, const std::string& date, const std::string& proposals_path,
               bool accept_all, const std::vector<std::string>& overrides,
               const std::vector<std::string>& skips, const std::string& committed_at) {
  const std::string path = proposals_path.empty()
                               ? (fs::path(c.paths.out_dir) / date / "proposals.jsonl").string()
                               : proposals_path;
  const std::string original = read_file(path);
  CommitOptions options;
  options.accept_all = accept_all;
  options.committed_at = committed_at;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw Error(Errc::kInvalidArgument, "--override expects ZONE=MINUTES");
    try {
      options.overrides[o.substr(0, eq)] = std::stoi(o.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(Errc::kInvalidArgument, "--override minutes must be an integer: " + o);
    }
  }
  for (const auto& s : skips) {
    const auto eq = s.find('=');
    options.skips[s.substr(0, eq)] = eq == std::string::npos ? "operator" : s.substr(eq + 1);
  }
  const CommitResult result = commit_proposals(read_proposals(original), c.zones, options);

  // Keep the original meta line, rewrite the decisions.
  std::string text;
  {
    std::istringstream in(original);
    std::string first;
    if (std::getline(in, first) && first.find("\"meta\"") != std::string::npos) text = first + "\n";
  }
  for (const auto& p : result.proposals) text += proposal_to_json(p) + "\n";
  write_file_atomic(path, text);

  std::string log = meta_json(c, "executed").dump() + "\n";
  for (const auto& e : result.executed) log += executed_to_json(e) + "\n";
  append_file(c.executed_log_path(), log);
  for (const auto& z : result.unreviewed) std::cerr << "commit: " << z << " left unreviewed\n";
  std::cout << "commit: " << result.executed.size() << " runs logged to " << c.executed_log_path() << "\n";
  return kOk;
}

int cmd_synth_corpus(const PipelineConfig& c, std::uint64_t corpus_seed) {
  const SyntheticCorpus corpus = generate_corpus(corpus_seed);
  std::ostringstream raw, hourly, precip;
  write_raw_csv(raw, corpus.readings);
  const Dataset ds = resample_hourly(corpus.readings, corpus.grid);
  write_hourly_csv(hourly, ds, std::vector<std::string>{"kind=hourly synthetic corpus seed=" + std::to_string(corpus_seed)});
  write_precip_csv(precip, corpus);
  write_file_atomic(out_path(c, "raw.csv"), raw.str());
  write_file_atomic(out_path(c, "hourly.csv"), hourly.str());
  write_file_atomic(out_path(c, "precip.csv"), precip.str());
  std::cout << "synth-corpus: " << corpus.readings.size() << " readings, " << ds.size()
            << " sensors x " << ds.grid().n_slots() << " slots -> " << c.paths.out_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soilcast: soil-moisture forecasting and overnight irrigation proposals"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "Pipeline configuration file");
  app.add_option("--seed", g.seed, "Master seed (overrides the config)");
  app.add_option("--out-dir", g.out_dir, "Output directory (overrides paths.out_dir)");
  app.add_option("--set", g.sets, "Override a config key, e.g. knn.k=7")->take_all();
  std::string dataset;
  app.add_option("--dataset", dataset, "Dataset file (overrides paths.dataset)");

  auto* ingest = app.add_subcommand("ingest", "Aggregate raw readings to an hourly matrix");
  std::string ingest_input, aggregation = "mean";
  ingest->add_option("input", ingest_input, "Raw long-format CSV")->required();
  ingest->add_option("--aggregation", aggregation, "mean or median")
      ->check(CLI::IsMember({"mean", "median"}));

  auto* screen_cmd = app.add_subcommand("screen", "Run rule and detector screening");
  std::string screen_end;
  screen_cmd->add_option("--end", screen_end, "Window end instant (default: end of data)");

  auto* mi = app.add_subcommand("mi-graph", "MI matrix, top-1 neighbours and graph export");

  auto* backup = app.add_subcommand("backup-sim", "Simulate an outage served by a virtual sensor");
  std::string target, neighbour, outage_start;
  std::size_t outage_hours = 0;
  backup->add_option("--target", target)->required();
  backup->add_option("--neighbour", neighbour, "Default: top-1 MI neighbour");
  backup->add_option("--outage-start", outage_start)->required();
  backup->add_option("--outage-hours", outage_hours)->required();

  auto* forecast = app.add_subcommand("forecast", "Forecast every sensor from a window end");
  std::string model = "knn", forecast_end;
  std::vector<std::string> sensors;
  forecast->add_option("--model", model)->check(CLI::IsMember({"knn", "sarima"}));
  forecast->add_option("--end", forecast_end, "Forecast origin (default: end of data)");
  forecast->add_option("--sensor", sensors, "Restrict to these sensors");

  auto* evaluate = app.add_subcommand("evaluate", "Rolling-origin kNN vs SARIMA evaluation");

  auto* schedule = app.add_subcommand("schedule", "Turn forecasts into sequenced proposals");
  std::string forecasts_path, schedule_date;
  schedule->add_option("--forecasts", forecasts_path)->required();
  schedule->add_option("--date", schedule_date)->required();

  auto* daily = app.add_subcommand("run-daily", "The 16:00 daily run for one date");
  std::string daily_date;
  std::vector<std::string> injections;
  daily->add_option("--date", daily_date)->required();
  daily->add_option("--inject", injections, "Hide SENSOR:START:HOURS before screening");

  auto* commit = app.add_subcommand("commit", "Apply operator decisions and log executed runtimes");
  std::string commit_date, commit_file, committed_at;
  bool accept_all = false;
  std::vector<std::string> overrides, skips;
  commit->add_option("--date", commit_date)->required();
  commit->add_option("--proposals", commit_file, "Default: <out-dir>/<date>/proposals.jsonl");
  commit->add_flag("--accept-all", accept_all, "Accept every proposal still pending");
  commit->add_option("--override", overrides, "ZONE=MINUTES");
  commit->add_option("--skip", skips, "ZONE[=REASON]");
  commit->add_option("--committed-at", committed_at, "Decision timestamp (default <date>T16:00:00)");

  auto* synth = app.add_subcommand("synth-corpus", "Write the synthetic 13-sensor corpus");
  std::uint64_t corpus_seed = kCorpusSeed;
  synth->add_option("--corpus-seed", corpus_seed);

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every other command-line mistake is a usage error.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (!dataset.empty()) g.sets.push_back("paths.dataset=" + dataset);
    const PipelineConfig c = effective_config(g);
    check_valid(c, false);
    if (*ingest) return cmd_ingest(c, ingest_input, aggregation);
    if (*screen_cmd) return cmd_screen(c, screen_end);
    if (*mi) return cmd_mi_graph(c);
    if (*backup) return cmd_backup_sim(c, target, neighbour, outage_start, outage_hours);
    if (*forecast) return cmd_forecast(c, model, forecast_end, sensors);
    if (*evaluate) return cmd_evaluate(c);
    if (*schedule) return cmd_schedule(c, forecasts_path, schedule_date);
    if (*daily) return cmd_run_daily(c, daily_date, injections);
    if (*commit) return cmd_commit(c, commit_date, commit_file, accept_all, overrides, skips, committed_at);
    if (*synth) return cmd_synth_corpus(c, corpus_seed);
  } catch (const Error& e) {
    std::cerr << "soilcast: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "soilcast: " << e.what() << "\n";
    return kIoFailure;
  }
  return kUsage;
}
