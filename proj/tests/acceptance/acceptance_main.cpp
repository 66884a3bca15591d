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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Set SOILCAST_CORPUS to a raw or hourly
// CSV of the 13-sensor park to replay it; otherwise the bundled synthetic
// stand-in is used and corpus lines are labelled as such.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "soilcast/detectors.hpp"
#include "soilcast/error.hpp"
#include "soilcast/evaluation.hpp"
#include "soilcast/file_io.hpp"
#include "soilcast/ksg.hpp"
#include "soilcast/pipeline.hpp"
#include "soilcast/random.hpp"
#include "soilcast/rules.hpp"
#include "soilcast/scheduler.hpp"
#include "soilcast/virtual_sensor.hpp"

namespace fs = std::filesystem;
using namespace soilcast;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double limit_seconds;
  bool uses_corpus;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Shared corpus state, built lazily.
struct Corpus {
  std::string root;
  PipelineConfig config;
  bool real = false;
  std::optional<Dataset> data;

  const Dataset& dataset() {
    if (!data) data = load_dataset_file(config.paths.dataset);
    return *data;
  }
};

Corpus& corpus() {
  static Corpus c = [] {
    Corpus out;
    out.root = (fs::temp_directory_path() / ("soilcast_acceptance_" + std::to_string(::getpid()))).string();
    out.config = fixtures::corpus_workspace(out.root);
    if (const char* env = std::getenv("SOILCAST_CORPUS"); env != nullptr && *env != '\0') {
      out.real = true;
      out.config.paths.dataset = env;
      out.config.paths.precip.clear();
    }
    return out;
  }();
  return c;
}

Outcome ksg_oracle() {
  KsgConfig cfg;
  std::ostringstream d;
  bool ok = true;
  for (double rho : {0.0, 0.5, 0.9}) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      std::vector<double> x, y;
      fixtures::gaussian_pair(2000, rho, seed, x, y);
      sum += ksg_mi(x, y, cfg);
    }
    const double mean = sum / 20.0;
    const double truth = -0.5 * std::log(1.0 - rho * rho);
    ok = ok && std::fabs(mean - truth) <= 0.05;
    d << "rho=" << rho << " mean=" << fmt("%.4f", mean) << " truth=" << fmt("%.4f", truth) << (rho < 0.9 ? "; " : "");
  }
  return {ok, d.str()};
}

Outcome rule_suite() {
  const RuleConfig cfg;
  std::size_t exact = 0;
  std::string misses;
  const auto suite = fixtures::rule_injection_suite();
  for (const auto& f : suite) {
    if (screen(f.series, cfg).fired_rules() == f.expected) {
      ++exact;
    } else {
      misses += " " + f.name;
    }
  }
  return {exact == suite.size() && suite.size() == 9,
          std::to_string(exact) + "/" + std::to_string(suite.size()) +
              " fixtures fire exactly their injected rules" + (misses.empty() ? "" : ", wrong:" + misses)};
}

// A 336 h sensor window: diurnal signal with unit noise. Detectors train on
// the first 168 h and score the last 168 h.
std::vector<double> noisy_window(std::uint64_t seed) {
  return fixtures::diurnal(336, 25.0, 3.0, 1.0, seed);
}

Outcome iforest_acceptance() {
  const DetectorConfig cfg;
  std::size_t hit = 0, quiet = 0;
  double min_frac = 1.0, max_control = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto clean = noisy_window(seed);
    auto displaced = clean;
    std::vector<std::size_t> idx(cfg.score_window_hours);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = clean.size() - idx.size() + i;
    Rng pick = make_stream(seed, "acceptance-displace");
    std::shuffle(idx.begin(), idx.end(), pick);
    for (std::size_t i = 0; i < idx.size() * 4 / 10; ++i) displaced[idx[i]] += 10.0;

    auto iforest_of = [&](const std::vector<double>& v) {
      Rng rng = make_stream(seed, "acceptance-iforest");
      const auto run = run_detectors(fixtures::series("S", v), cfg, rng);
      for (const auto& o : run.outcomes) {
        if (o.rule == Detector::kIForest) return o;
      }
      return RuleOutcome{Detector::kIForest, false, {}};
    };
    const auto a = iforest_of(displaced);
    const auto b = iforest_of(clean);
    if (a.fired && a.evidence.stat("anomalous_fraction") > 0.3) ++hit;
    if (!b.fired) ++quiet;
    min_frac = std::min(min_frac, a.fired ? a.evidence.stat("anomalous_fraction") : 0.0);
    max_control = std::max(max_control, b.evidence.stats.empty() ? 0.0 : b.evidence.stat("anomalous_fraction"));
  }
  return {hit == 20 && quiet == 20,
          "displaced flagged " + std::to_string(hit) + "/20 (min fraction " + fmt("%.3f", min_frac) +
              "), control quiet " + std::to_string(quiet) + "/20 (max fraction " +
              fmt("%.3f", max_control) + ")"};
}

Outcome ar_acceptance() {
  const DetectorConfig cfg;
  std::size_t hit = 0, quiet = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto v = fixtures::ar1(800, 0.8, seed);
    const auto model = fit_ar(fixtures::series("S", std::vector<double>(v.begin(), v.end() - 24)), 1);
    const std::vector<double> control(v.end() - 24, v.end());
    auto shifted = control;
    const auto sig = model.forecast_sigma(24);
    for (std::size_t h = 12; h < 24; ++h) shifted[h] += 5.0 * sig[h];
    if (detect_ar_residuals(model, shifted, cfg).fired) ++hit;
    if (!detect_ar_residuals(model, control, cfg).fired) ++quiet;
  }
  return {hit == 20 && quiet == 20, "shifted fired " + std::to_string(hit) + "/20, control quiet " +
                                        std::to_string(quiet) + "/20"};
}

Outcome virtual_sensor_acceptance() {
  const Dataset& ds = corpus().dataset();
  const std::size_t start = static_cast<std::size_t>(std::lround(0.6 * static_cast<double>(ds.grid().n_slots())));
  const std::size_t hours = std::min<std::size_t>(500, ds.grid().n_slots() - start);
  const auto r = simulate_outage(ds, "SENS0021", "SENS0012", start, hours, corpus().config.seed);
  if (!r.backup_mae || !r.persistence_mae) return {false, "outage produced no comparable rows"};
  const bool ok = hours == 500 && *r.backup_mae <= *r.persistence_mae && *r.backup_mae <= 3.0;
  return {ok, "outage " + format_instant(ds.grid().time_of(start)) + " for " + std::to_string(hours) +
                  " h: backup MAE " + fmt("%.4f", *r.backup_mae) + " vs persistence " +
                  fmt("%.4f", *r.persistence_mae)};
}

Outcome corpus_evaluation() {
  const PipelineConfig& c = corpus().config;
  KnnConfig knn = c.knn;
  knn.window_hours = c.eval.window_hours;
  const EvalReport r =
      rolling_origin_evaluate(corpus().dataset(), {knn_model(knn), sarima_model(c.sarima)}, c.eval);
  const auto* k = r.summary("knn");
  const auto* s = r.summary("sarima");
  if (k == nullptr || s == nullptr) return {false, "a model produced no scored sensors"};
  std::ostringstream d;
  d << "origins=" << r.candidate_origins << " | kNN mean " << fmt("%.3f", k->mean_mae) << " P75 "
    << fmt("%.3f", k->p75_mae) << " (" << k->sensors << " sensors) | SARIMA mean "
    << fmt("%.3f", s->mean_mae) << " P75 " << fmt("%.3f", s->p75_mae) << " (" << s->sensors
    << " sensors)";
  return {k->mean_mae <= 2.0, d.str()};
}

Outcome scheduler_invariants() {
  std::size_t violations = 0, rain_bad = 0, mono_bad = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto in = fixtures::random_schedule_instance(seed);
    const auto base = fixtures::plan(in);
    const auto bad = fixtures::schedule_violations(in, base);
    violations += bad.size();
    if (!bad.empty() && first.empty()) first = "seed " + std::to_string(seed) + ": " + bad.front();

    auto soaked = in;
    double worst = 0.0;
    for (std::size_t z = 0; z < in.zones.size(); ++z) {
      if (const auto d = compute_deficit(in.zones[z], in.forecasts[z])) worst = std::max(worst, *d);
    }
    soaked.precip_mm = std::max(in.precip_mm, worst);
    for (const auto& p : fixtures::plan(soaked).proposals) {
      if (!p.fallback && p.runtime_minutes != 0) ++rain_bad;
    }

    for (std::size_t z = 0; z < in.zones.size(); ++z) {
      auto drier = in;
      for (auto& f : drier.forecasts[z]) {
        if (f) {
          for (auto& v : *f) v -= 1.0;
        }
      }
      const auto after = fixtures::plan(drier);
      if (after.proposals[z].requested_minutes < base.proposals[z].requested_minutes) ++mono_bad;
    }
  }
  return {violations == 0 && rain_bad == 0 && mono_bad == 0,
          "1000 instances: " + std::to_string(violations) + " violations, " + std::to_string(rain_bad) +
              " rain-dominance breaks, " + std::to_string(mono_bad) + " monotonicity breaks" +
              (first.empty() ? "" : " (" + first + ")")};
}

std::map<std::string, std::string> read_tree(const std::string& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_file(e.path().string());
  }
  return files;
}

Outcome determinism() {
  PipelineConfig c = corpus().config;
  const Dataset& ds = corpus().dataset();
  const std::string date =
      format_date(ds.grid().time_of(static_cast<std::size_t>(0.6 * static_cast<double>(ds.grid().n_slots()))));
  std::vector<std::map<std::string, std::string>> trees;
  for (const char* name : {"det-a", "det-b"}) {
    c.paths.out_dir = (fs::path(corpus().root) / name).string();
    const DailyResult r = run_daily(c, date);
    if (r.exit_code() != 0) return {false, "run-daily " + date + " exited " + std::to_string(r.exit_code())};
    trees.push_back(read_tree(c.paths.out_dir));
  }
  std::size_t differing = 0;
  for (const auto& [name, content] : trees[0]) {
    const auto it = trees[1].find(name);
    if (it == trees[1].end() || it->second != content) ++differing;
  }
  const bool ok = trees[0].size() == trees[1].size() && differing == 0 && !trees[0].empty();
  return {ok, "run-daily " + date + " twice: " + std::to_string(trees[0].size()) + " files, " +
                  std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"ksg-gaussian-oracle", 30, false, ksg_oracle},
      {"rule-injection-suite", 5, false, rule_suite},
      {"iforest-displacement", 60, false, iforest_acceptance},
      {"ar-residual-level-shift", 30, false, ar_acceptance},
      {"virtual-sensor-outage", 120, true, virtual_sensor_acceptance},
      {"corpus-replay-evaluation", 600, true, corpus_evaluation},
      {"scheduler-invariants", 60, false, scheduler_invariants},
      {"run-daily-determinism", 0, true, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::string timing = fmt("%.2f s", secs);
    if (c.limit_seconds > 0) timing += fmt(" < %.0f s", c.limit_seconds);
    if (!in_time) timing += " EXCEEDED";
    const std::string label = c.uses_corpus && !corpus().real ? " [synthetic corpus]" : "";
    std::printf("%s %s (%s)%s: %s\n", pass ? "PASS" : "FAIL", c.name.c_str(), timing.c_str(),
                label.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::error_code ec;
  fs::remove_all(corpus().root, ec);
  return failures == 0 ? 0 : 1;
}
