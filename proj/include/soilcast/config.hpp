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

// Pipeline configuration.
//
// The file is a small TOML subset: `[section]` headers (dotted names allowed),
// `key = value` lines with quoted strings, numbers, booleans or arrays of
// strings, and `#` comments. Precedence is defaults < file < command-line
// overrides. Every problem found is reported in one error.

#ifndef SOILCAST_CONFIG_HPP_
#define SOILCAST_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soilcast/detectors.hpp"
#include "soilcast/evaluation.hpp"
#include "soilcast/knn_forecaster.hpp"
#include "soilcast/ksg.hpp"
#include "soilcast/rules.hpp"
#include "soilcast/sarima.hpp"
#include "soilcast/scheduler.hpp"
#include "soilcast/virtual_sensor.hpp"

namespace soilcast {

using ConfigValue = std::variant<bool, double, std::string, std::vector<std::string>>;

struct ConfigEntry {
  ConfigValue value;
  std::string raw;  // source text of the value
  std::size_t line = 0;
};

// section -> key -> entry. Top-level keys live in section "".
using ConfigTable = std::map<std::string, std::map<std::string, ConfigEntry>>;

// Throws Errc::kParse listing every malformed line.
ConfigTable parse_config_text(std::string_view text);

struct PathsConfig {
  std::string dataset;
  std::string zones;  // optional file holding [zone.*] sections
  std::string precip;
  std::string mi_matrix;  // optional; computed in-run when absent
  std::string out_dir = "out";
  std::string executed_log;  // default <out_dir>/executed_runtimes.jsonl
};

struct PipelineSettings {
  int trigger_minute = 16 * 60;
  std::size_t screen_window_hours = 336;
};

struct PipelineConfig {
  std::uint64_t seed = 42;
  PathsConfig paths;
  RuleConfig rules;
  DetectorConfig detectors;
  KsgConfig ksg;
  MlpTrainingConfig mlp;
  KnnConfig knn;
  SarimaConfig sarima;
  EvalConfig eval;
  PipelineSettings pipeline;
  NightSpan night;
  std::vector<BlackoutRule> blackouts;
  std::vector<std::string> blackout_texts;  // as written, for hashing
  std::vector<ZoneConfig> zones;

  std::string executed_log_path() const;
};

// Applies a parsed table on top of `config`. Unknown sections or keys and
// wrongly typed values are errors.
void apply_config_table(const ConfigTable& table, PipelineConfig& config,
                        std::vector<std::string>& problems);

// "section.key=value" assignments from the command line.
void apply_override(std::string_view assignment, PipelineConfig& config,
                    std::vector<std::string>& problems);

// Cross-field validation, including component configs and, when
// `check_paths` is set, that referenced input files exist.
std::vector<std::string> validate_config(const PipelineConfig& config, bool check_paths);

// Reads `path` (empty: defaults only), then the zones file if named, then the
// overrides. Throws Errc::kInvalidArgument listing all problems.
PipelineConfig load_config(const std::string& path,
                           const std::vector<std::string>& overrides = {});

// Canonical "section.key=value" listing of the settings that affect outputs
// (paths excluded).
std::string canonical_config(const PipelineConfig& config);
// 16 hex digits of FNV-1a over canonical_config().
std::string config_hash(const PipelineConfig& config);

}  // namespace soilcast

#endif  // SOILCAST_CONFIG_HPP_
