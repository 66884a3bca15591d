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

#include "soilcast/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "soilcast/dataset.hpp"
#include "soilcast/error.hpp"
#include "soilcast/file_io.hpp"
#include "soilcast/random.hpp"
#include "text_util.hpp"

namespace soilcast {
namespace {

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::optional<std::string> parse_quoted(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != '"') return std::nullopt;
  std::string out;
  for (++pos; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '"') {
      ++pos;
      return out;
    }
    if (c == '\\' && pos + 1 < text.size()) {
      const char e = text[++pos];
      out.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
    } else {
      out.push_back(c);
    }
  }
  return std::nullopt;
}

// Whitespace only; quotes are significant here.
std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && quoted) {
      ++i;
    } else if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::optional<ConfigValue> parse_value(std::string_view text) {
  text = trim_ws(text);
  if (text.empty()) return std::nullopt;
  if (text == "true") return ConfigValue{true};
  if (text == "false") return ConfigValue{false};
  if (text.front() == '"') {
    std::size_t pos = 0;
    auto s = parse_quoted(text, pos);
    if (!s || !trim_ws(text.substr(pos)).empty()) return std::nullopt;
    return ConfigValue{*s};
  }
  if (text.front() == '[') {
    if (text.back() != ']') return std::nullopt;
    std::vector<std::string> items;
    std::string_view body = trim_ws(text.substr(1, text.size() - 2));
    std::size_t pos = 0;
    while (pos < body.size()) {
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos >= body.size()) break;
      auto s = parse_quoted(body, pos);
      if (!s) return std::nullopt;
      items.push_back(*s);
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos < body.size()) {
        if (body[pos] != ',') return std::nullopt;
        ++pos;
      }
    }
    return ConfigValue{items};
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return ConfigValue{v};
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

// Typed accessors that record a problem instead of throwing.
class Reader {
 public:
  Reader(std::string section, std::vector<std::string>& problems)
      : section_(std::move(section)), problems_(problems) {}

  void number(const ConfigEntry& e, const std::string& key, double& out) {
    if (const double* v = std::get_if<double>(&e.value)) {
      out = *v;
    } else {
      bad(e, key, "a number");
    }
  }
  void count(const ConfigEntry& e, const std::string& key, std::size_t& out) {
    const double* v = std::get_if<double>(&e.value);
    if (v && *v >= 0 && std::floor(*v) == *v && *v < 1e15) {
      out = static_cast<std::size_t>(*v);
    } else {
      bad(e, key, "a non-negative integer");
    }
  }
  void integer(const ConfigEntry& e, const std::string& key, int& out) {
    const double* v = std::get_if<double>(&e.value);
    if (v && std::floor(*v) == *v && std::fabs(*v) < 1e9) {
      out = static_cast<int>(*v);
    } else {
      bad(e, key, "an integer");
    }
  }
  void boolean(const ConfigEntry& e, const std::string& key, bool& out) {
    if (const bool* v = std::get_if<bool>(&e.value)) {
      out = *v;
    } else {
      bad(e, key, "true or false");
    }
  }
  void string(const ConfigEntry& e, const std::string& key, std::string& out) {
    if (const std::string* v = std::get_if<std::string>(&e.value)) {
      out = *v;
    } else {
      bad(e, key, "a quoted string");
    }
  }
  void strings(const ConfigEntry& e, const std::string& key, std::vector<std::string>& out) {
    if (const auto* v = std::get_if<std::vector<std::string>>(&e.value)) {
      out = *v;
    } else {
      bad(e, key, "an array of strings");
    }
  }
  void unknown(const ConfigEntry& e, const std::string& key) {
    problems_.push_back(where(e.line) + "unknown key " + qualified(key));
  }
  void problem(const ConfigEntry& e, const std::string& key, const std::string& msg) {
    problems_.push_back(where(e.line) + qualified(key) + ": " + msg);
  }

 private:
  std::string qualified(const std::string& key) const {
    return section_.empty() ? key : section_ + "." + key;
  }
  void bad(const ConfigEntry& e, const std::string& key, const char* expected) {
    problems_.push_back(where(e.line) + qualified(key) + " must be " + expected);
  }

  std::string section_;
  std::vector<std::string>& problems_;
};

using Setter = std::function<void(Reader&, const ConfigEntry&)>;
using KeyMap = std::map<std::string, Setter>;

void apply_keys(const std::string& section, const std::map<std::string, ConfigEntry>& keys,
                const KeyMap& setters, std::vector<std::string>& problems) {
  Reader r(section, problems);
  for (const auto& [key, entry] : keys) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      r.unknown(entry, key);
    } else {
      it->second(r, entry);
    }
  }
}

KeyMap section_setters(const std::string& section, PipelineConfig& c, bool& known) {
  known = true;
  KeyMap m;
  auto add_num = [&](const char* key, double& out) {
    m[key] = [&out, key](Reader& r, const ConfigEntry& e) { r.number(e, key, out); };
  };
  auto add_count = [&](const char* key, std::size_t& out) {
    m[key] = [&out, key](Reader& r, const ConfigEntry& e) { r.count(e, key, out); };
  };
  auto add_int = [&](const char* key, int& out) {
    m[key] = [&out, key](Reader& r, const ConfigEntry& e) { r.integer(e, key, out); };
  };
  auto add_str = [&](const char* key, std::string& out) {
    m[key] = [&out, key](Reader& r, const ConfigEntry& e) { r.string(e, key, out); };
  };
  auto add_bool = [&](const char* key, bool& out) {
    m[key] = [&out, key](Reader& r, const ConfigEntry& e) { r.boolean(e, key, out); };
  };

  if (section.empty()) {
    m["seed"] = [&c](Reader& r, const ConfigEntry& e) {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(e.raw.data(), e.raw.data() + e.raw.size(), v);
      if (ec != std::errc() || ptr != e.raw.data() + e.raw.size()) {
        r.problem(e, "seed", "must be a non-negative integer");
      } else {
        c.seed = v;
      }
    };
  } else if (section == "paths") {
    add_str("dataset", c.paths.dataset);
    add_str("zones", c.paths.zones);
    add_str("precip", c.paths.precip);
    add_str("mi_matrix", c.paths.mi_matrix);
    add_str("out_dir", c.paths.out_dir);
    add_str("executed_log", c.paths.executed_log);
  } else if (section == "rules") {
    add_num("missing_frac_max", c.rules.missing_frac_max);
    add_count("gap_hours_max", c.rules.gap_hours_max);
    add_num("stuck_delta_pct", c.rules.stuck_delta_pct);
    add_count("stuck_span_hours", c.rules.stuck_span_hours);
    add_num("min_vwc", c.rules.valid_range.min_vwc);
    add_num("max_vwc", c.rules.valid_range.max_vwc);
    add_count("spike_window_hours", c.rules.spike_median_window_hours);
    add_num("spike_threshold_pct", c.rules.spike_threshold_pct);
  } else if (section.rfind("rules.range.", 0) == 0) {
    ValidRange& range = c.rules.valid_range_overrides[section.substr(12)];
    add_num("min_vwc", range.min_vwc);
    add_num("max_vwc", range.max_vwc);
  } else if (section == "detectors") {
    add_num("flag_fraction", c.detectors.flag_fraction);
    add_num("sigma_mult", c.detectors.arima_sigma_mult);
    add_count("seasonal_lag", c.detectors.seasonal_lag);
    add_count("ar_order", c.detectors.ar_order);
    add_count("score_window_hours", c.detectors.score_window_hours);
    add_count("ar_horizon_hours", c.detectors.ar_horizon_hours);
    add_count("iforest_trees", c.detectors.iforest.n_trees);
    add_count("iforest_subsample", c.detectors.iforest.subsample_size);
    add_count("iforest_min_samples", c.detectors.iforest.min_samples);
    add_num("contamination", c.detectors.iforest.contamination);
  } else if (section == "mi") {
    add_count("k", c.ksg.k_neighbours);
    add_num("noise", c.ksg.noise_amplitude);
  } else if (section == "virtual") {
    add_count("epochs", c.mlp.epochs);
    add_num("learning_rate", c.mlp.learning_rate);
    add_num("momentum", c.mlp.momentum);
    add_num("init_range", c.mlp.init_range);
    add_num("min_coverage", c.mlp.min_target_coverage);
    add_count("min_pairs", c.mlp.min_pairs);
    add_count("input_lags", c.mlp.input_lags);
    add_count("train_hours", c.mlp.train_hours);
  } else if (section == "knn") {
    add_count("k", c.knn.k);
    add_count("lags", c.knn.n_lags);
    add_bool("hour_of_day", c.knn.hour_of_day);
    add_count("window_hours", c.knn.window_hours);
    add_count("horizon_hours", c.knn.horizon_hours);
  } else if (section == "sarima") {
    add_count("seasonal_lag", c.sarima.seasonal_lag);
    add_count("ar_order", c.sarima.ar_order);
    add_count("seasonal_ma_order", c.sarima.seasonal_ma_order);
  } else if (section == "eval") {
    add_count("window_hours", c.eval.window_hours);
    add_count("horizon_hours", c.eval.horizon_hours);
    add_int("origin_hour", c.eval.origin_hour);
    add_count("step_hours", c.eval.step_hours);
  } else if (section == "schedule") {
    m["night_span"] = [&c](Reader& r, const ConfigEntry& e) {
      std::string text;
      r.string(e, "night_span", text);
      if (const auto span = parse_night_span(text)) {
        c.night = *span;
      } else if (std::holds_alternative<std::string>(e.value)) {
        r.problem(e, "night_span", "expected \"HH:MM-HH:MM\"");
      }
    };
    m["trigger"] = [&c](Reader& r, const ConfigEntry& e) {
      std::string text;
      r.string(e, "trigger", text);
      if (const auto t = parse_clock(text)) {
        c.pipeline.trigger_minute = *t;
      } else if (std::holds_alternative<std::string>(e.value)) {
        r.problem(e, "trigger", "expected \"HH:MM\"");
      }
    };
    add_count("screen_window_hours", c.pipeline.screen_window_hours);
    m["blackouts"] = [&c](Reader& r, const ConfigEntry& e) {
      std::vector<std::string> items;
      r.strings(e, "blackouts", items);
      for (const auto& item : items) {
        if (auto rule = parse_blackout(item, "blackout")) {
          c.blackouts.push_back(*rule);
          c.blackout_texts.push_back(item + "|blackout");
        } else {
          r.problem(e, "blackouts", "cannot parse \"" + item + "\"");
        }
      }
    };
  } else if (section.rfind("blackout.", 0) == 0) {
    // Resolved by the caller once both keys are known.
    m["window"] = [](Reader&, const ConfigEntry&) {};
    m["reason"] = [](Reader&, const ConfigEntry&) {};
  } else if (section.rfind("zone.", 0) == 0) {
    const std::string id = section.substr(5);
    auto it = std::find_if(c.zones.begin(), c.zones.end(),
                           [&](const ZoneConfig& z) { return z.zone_id == id; });
    if (it == c.zones.end()) {
      c.zones.push_back(ZoneConfig{});
      c.zones.back().zone_id = id;
      it = c.zones.end() - 1;
    }
    const std::size_t index = static_cast<std::size_t>(it - c.zones.begin());
    // Index, not reference: later sections may grow the vector.
    m["members"] = [&c, index](Reader& r, const ConfigEntry& e) {
      r.strings(e, "members", c.zones[index].members);
    };
    m["application_rate"] = [&c, index](Reader& r, const ConfigEntry& e) {
      r.number(e, "application_rate", c.zones[index].application_rate);
    };
    m["target_vwc"] = [&c, index](Reader& r, const ConfigEntry& e) {
      r.number(e, "target_vwc", c.zones[index].target_vwc);
    };
    m["vwc_to_mm"] = [&c, index](Reader& r, const ConfigEntry& e) {
      r.number(e, "vwc_to_mm", c.zones[index].vwc_to_mm);
    };
    m["main_line"] = [&c, index](Reader& r, const ConfigEntry& e) {
      r.string(e, "main_line", c.zones[index].main_line);
    };
    m["max_runtime"] = [&c, index](Reader& r, const ConfigEntry& e) {
      r.integer(e, "max_runtime", c.zones[index].max_runtime);
    };
  } else {
    known = false;
  }
  return m;
}

}  // namespace

ConfigTable parse_config_text(std::string_view text) {
  ConfigTable table;
  table[""];
  std::vector<std::string> problems;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::string_view line = trim_ws(strip_comment(raw_line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || !valid_name(trim_ws(line.substr(1, line.size() - 2)))) {
        problems.push_back(where(line_no) + "malformed section header");
        continue;
      }
      section = std::string(trim_ws(line.substr(1, line.size() - 2)));
      table[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(where(line_no) + "expected key = value");
      continue;
    }
    const std::string key(trim_ws(line.substr(0, eq)));
    const std::string_view value_text = trim_ws(line.substr(eq + 1));
    if (!valid_name(key)) {
      problems.push_back(where(line_no) + "invalid key");
      continue;
    }
    auto value = parse_value(value_text);
    if (!value) {
      problems.push_back(where(line_no) + "cannot parse value for " + key);
      continue;
    }
    if (table[section].count(key)) {
      problems.push_back(where(line_no) + "duplicate key " + key);
      continue;
    }
    table[section][key] = ConfigEntry{*value, std::string(value_text), line_no};
  }
  if (!problems.empty()) {
    std::string msg = "config parse errors:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(Errc::kParse, msg);
  }
  return table;
}

void apply_config_table(const ConfigTable& table, PipelineConfig& config,
                        std::vector<std::string>& problems) {
  for (const auto& [section, keys] : table) {
    bool known = false;
    const KeyMap setters = section_setters(section, config, known);
    if (!known) {
      std::size_t line = keys.empty() ? 0 : keys.begin()->second.line;
      problems.push_back(where(line) + "unknown section [" + section + "]");
      continue;
    }
    apply_keys(section, keys, setters, problems);
    if (section.rfind("blackout.", 0) == 0) {
      std::string window, reason = section.substr(9);
      Reader r(section, problems);
      const auto w = keys.find("window");
      if (w == keys.end()) {
        problems.push_back("[" + section + "] needs a window");
        continue;
      }
      r.string(w->second, "window", window);
      if (const auto rs = keys.find("reason"); rs != keys.end()) r.string(rs->second, "reason", reason);
      if (auto rule = parse_blackout(window, reason)) {
        config.blackouts.push_back(*rule);
        config.blackout_texts.push_back(window + "|" + reason);
      } else {
        r.problem(w->second, "window", "cannot parse \"" + window + "\"");
      }
    }
  }
}

void apply_override(std::string_view assignment, PipelineConfig& config,
                    std::vector<std::string>& problems) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    problems.push_back("override \"" + std::string(assignment) + "\": expected key=value");
    return;
  }
  std::string key(trim_ws(assignment.substr(0, eq)));
  std::string value(trim_ws(assignment.substr(eq + 1)));
  std::string section;
  if (const auto dot = key.rfind('.'); dot != std::string::npos) {
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
  }
  // Bare words are taken as strings so paths need no quoting on a shell.
  if (!parse_value(value)) value = "\"" + value + "\"";
  std::string text = "[" + section + "]\n" + key + " = " + value + "\n";
  if (section.empty()) text = key + " = " + value + "\n";
  try {
    ConfigTable table = parse_config_text(text);
    apply_config_table(table, config, problems);
  } catch (const Error& e) {
    problems.push_back("override \"" + std::string(assignment) + "\": " + e.what());
  }
}

std::string PipelineConfig::executed_log_path() const {
  if (!paths.executed_log.empty()) return paths.executed_log;
  return (std::filesystem::path(paths.out_dir) / "executed_runtimes.jsonl").string();
}

std::vector<std::string> validate_config(const PipelineConfig& c, bool check_paths) {
  std::vector<std::string> problems;
  auto check = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      problems.push_back(std::string(what) + ": " + e.what());
    }
  };
  check("rules", [&] { c.rules.validate(); });
  check("detectors", [&] { c.detectors.validate(); });
  check("mi", [&] { c.ksg.validate(); });
  check("virtual", [&] { c.mlp.validate(); });
  check("knn", [&] { c.knn.validate(); });
  check("sarima", [&] { c.sarima.validate(); });
  check("eval", [&] { c.eval.validate(); });
  check("schedule", [&] { c.night.validate(); });
  if (c.pipeline.screen_window_hours < WindowSpec::kMinHours ||
      c.pipeline.screen_window_hours > WindowSpec::kMaxHours) {
    problems.push_back("schedule.screen_window_hours must be in [200, 900]");
  }
  std::set<std::string> ids;
  for (const auto& z : c.zones) {
    check("zone", [&] { z.validate(); });
    if (z.members.empty()) problems.push_back("zone " + z.zone_id + ": members is empty");
    if (!ids.insert(z.zone_id).second) problems.push_back("zone " + z.zone_id + " defined twice");
  }
  if (check_paths) {
    namespace fs = std::filesystem;
    if (c.paths.dataset.empty()) {
      problems.push_back("paths.dataset is not set");
    } else if (!fs::is_regular_file(c.paths.dataset)) {
      problems.push_back("paths.dataset not found: " + c.paths.dataset);
    }
    if (!c.paths.precip.empty() && !fs::is_regular_file(c.paths.precip)) {
      problems.push_back("paths.precip not found: " + c.paths.precip);
    }
  }
  return problems;
}

PipelineConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  PipelineConfig config;
  std::vector<std::string> problems;
  auto apply_file = [&](const std::string& file) {
    try {
      apply_config_table(parse_config_text(read_file(file)), config, problems);
    } catch (const Error& e) {
      problems.push_back(file + ": " + e.what());
    }
  };
  if (!path.empty()) apply_file(path);
  for (const auto& o : overrides) apply_override(o, config, problems);
  if (!config.paths.zones.empty()) {
    std::filesystem::path zones(config.paths.zones);
    if (zones.is_relative() && !path.empty()) {
      zones = std::filesystem::path(path).parent_path() / zones;
    }
    apply_file(zones.string());
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(Errc::kInvalidArgument, msg);
  }
  return config;
}

std::string canonical_config(const PipelineConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const auto& v) {
    o << k << '=';
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
      o << format_value(v);
    } else {
      o << v;
    }
    o << '\n';
  };
  kv("seed", c.seed);
  kv("rules.missing_frac_max", c.rules.missing_frac_max);
  kv("rules.gap_hours_max", c.rules.gap_hours_max);
  kv("rules.stuck_delta_pct", c.rules.stuck_delta_pct);
  kv("rules.stuck_span_hours", c.rules.stuck_span_hours);
  kv("rules.min_vwc", c.rules.valid_range.min_vwc);
  kv("rules.max_vwc", c.rules.valid_range.max_vwc);
  kv("rules.spike_window_hours", c.rules.spike_median_window_hours);
  kv("rules.spike_threshold_pct", c.rules.spike_threshold_pct);
  for (const auto& [id, r] : c.rules.valid_range_overrides) {
    kv("rules.range." + id + ".min_vwc", r.min_vwc);
    kv("rules.range." + id + ".max_vwc", r.max_vwc);
  }
  kv("detectors.flag_fraction", c.detectors.flag_fraction);
  kv("detectors.sigma_mult", c.detectors.arima_sigma_mult);
  kv("detectors.seasonal_lag", c.detectors.seasonal_lag);
  kv("detectors.ar_order", c.detectors.ar_order);
  kv("detectors.score_window_hours", c.detectors.score_window_hours);
  kv("detectors.ar_horizon_hours", c.detectors.ar_horizon_hours);
  kv("detectors.iforest_trees", c.detectors.iforest.n_trees);
  kv("detectors.iforest_subsample", c.detectors.iforest.subsample_size);
  kv("detectors.iforest_min_samples", c.detectors.iforest.min_samples);
  kv("detectors.contamination", c.detectors.iforest.contamination);
  kv("mi.k", c.ksg.k_neighbours);
  kv("mi.noise", c.ksg.noise_amplitude);
  kv("virtual.epochs", c.mlp.epochs);
  kv("virtual.learning_rate", c.mlp.learning_rate);
  kv("virtual.momentum", c.mlp.momentum);
  kv("virtual.init_range", c.mlp.init_range);
  kv("virtual.min_coverage", c.mlp.min_target_coverage);
  kv("virtual.min_pairs", c.mlp.min_pairs);
  kv("virtual.input_lags", c.mlp.input_lags);
  kv("virtual.train_hours", c.mlp.train_hours);
  kv("knn.k", c.knn.k);
  kv("knn.lags", c.knn.n_lags);
  kv("knn.hour_of_day", c.knn.hour_of_day ? "true" : "false");
  kv("knn.window_hours", c.knn.window_hours);
  kv("knn.horizon_hours", c.knn.horizon_hours);
  kv("sarima.seasonal_lag", c.sarima.seasonal_lag);
  kv("sarima.ar_order", c.sarima.ar_order);
  kv("sarima.seasonal_ma_order", c.sarima.seasonal_ma_order);
  kv("eval.window_hours", c.eval.window_hours);
  kv("eval.horizon_hours", c.eval.horizon_hours);
  kv("eval.origin_hour", c.eval.origin_hour);
  kv("eval.step_hours", c.eval.step_hours);
  kv("schedule.night_span", std::to_string(c.night.start_minute) + "-" + std::to_string(c.night.end_minute));
  kv("schedule.trigger", c.pipeline.trigger_minute);
  kv("schedule.screen_window_hours", c.pipeline.screen_window_hours);
  for (const auto& b : c.blackout_texts) kv("schedule.blackout", b);
  for (const auto& z : c.zones) {
    const std::string p = "zone." + z.zone_id + ".";
    std::string members;
    for (const auto& m : z.members) members += (members.empty() ? "" : ",") + m;
    kv(p + "members", members);
    kv(p + "application_rate", z.application_rate);
    kv(p + "target_vwc", z.target_vwc);
    kv(p + "vwc_to_mm", z.vwc_to_mm);
    kv(p + "main_line", z.main_line);
    kv(p + "max_runtime", z.max_runtime);
  }
  return o.str();
}

std::string config_hash(const PipelineConfig& config) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config(config))));
  return buf;
}

}  // namespace soilcast
