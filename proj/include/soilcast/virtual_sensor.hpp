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

// Virtual sensor: a one-hidden-layer ReLU network mapping the top-1 MI
// neighbour's reading to the failed target's reading.

#ifndef SOILCAST_VIRTUAL_SENSOR_HPP_
#define SOILCAST_VIRTUAL_SENSOR_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "soilcast/dataset.hpp"
#include "soilcast/rules.hpp"
#include "soilcast/series.hpp"
#include "soilcast/simd/kernels.hpp"

namespace soilcast {

inline constexpr std::size_t kHiddenUnits = 10;

struct ScalerParams {
  double in_min = 0.0;
  double in_max = 1.0;
  double out_min = 0.0;
  double out_max = 1.0;

  double scale_in(double v) const { return (v - in_min) / (in_max - in_min); }
  double unscale_out(double v) const { return out_min + v * (out_max - out_min); }
};

struct MlpTrainingConfig {
  std::size_t epochs = 2000;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double init_range = 0.5;
  double min_target_coverage = 0.8;
  std::size_t min_pairs = 50;
  // 0 feeds only the instantaneous neighbour value; n > 0 also feeds the
  // previous n neighbour values.
  std::size_t input_lags = 0;
  std::size_t train_hours = 900;

  void validate() const;
};

struct MlpBackup {
  std::string target_id;
  std::string neighbour_id;
  WindowSpec trained_on;
  std::size_t n_inputs = 1;
  // hidden_weights[h * n_inputs + d]
  std::vector<double> hidden_weights;
  std::array<double, kHiddenUnits> hidden_bias{};
  std::array<double, kHiddenUnits> output_weights{};
  double output_bias = 0.0;
  ScalerParams scaler;
  double training_mae = 0.0;  // vwc percent, in-sample

  // Scaled-space forward pass for one input vector.
  double forward_scaled(std::span<const double> scaled_inputs) const;
};

// Fits the backup on jointly present (neighbour, target) pairs of `window`.
// Full-batch gradient descent with momentum on MSE over min-max-scaled data.
// Deterministic for a given seed. Throws Errc::kDegenerate for a constant
// neighbour or target and Errc::kInsufficientData when the target covers less
// than min_target_coverage of the window or too few pairs remain.
MlpBackup train_backup(const SensorSeries& neighbour, const SensorSeries& target,
                       const WindowSpec& window, std::uint64_t seed,
                       const MlpTrainingConfig& config = {},
                       const simd::KernelTable& kernels = simd::kernels());

// Scale, forward, inverse-scale, clamp to [0, 100]. `inputs` holds the
// current neighbour value followed by `input_lags` previous values; any
// missing input yields kMissing.
double predict_backup(const MlpBackup& model, std::span<const double> inputs);
double predict_backup(const MlpBackup& model, double neighbour_value);

// Backup output for every slot in [first, last) of the neighbour stream.
std::vector<double> predict_series(const MlpBackup& model,
                                   const SensorSeries& neighbour,
                                   std::size_t first, std::size_t last);

enum class VirtualEventKind { kActivated, kRefreshed, kDeactivated, kUnbacked };

struct VirtualEvent {
  VirtualEventKind kind = VirtualEventKind::kActivated;
  std::string target_id;
  std::string neighbour_id;
  std::size_t slot = 0;
  std::string detail;
};

std::string_view event_name(VirtualEventKind kind);

struct VirtualSensorState {
  std::string target_id;
  std::string neighbour_id;
  bool active = false;
  bool unbacked = false;
  std::size_t activated_at = 0;  // first faulty slot; training ends here
  std::size_t last_refresh = 0;
  std::optional<MlpBackup> model;
};

struct VirtualSensorUpdate {
  VirtualSensorState state;
  std::vector<VirtualEvent> events;
};

// Starts a virtual sensor for `target` fed by `neighbour`. Training uses the
// most recent target history ending at `activated_at`. A neighbour that is
// the target itself, is in `unavailable` (faulty or virtual), or cannot
// support training leaves the state unbacked with an escalation event.
VirtualSensorUpdate activate_virtual_sensor(const Dataset& dataset,
                                            const std::string& target,
                                            const std::string& neighbour,
                                            std::size_t activated_at,
                                            std::size_t day_slot,
                                            const std::set<std::string>& unavailable,
                                            std::uint64_t seed,
                                            const MlpTrainingConfig& config = {});

// Daily refresh. Deactivates when the target's last stuck_span_hours (all
// after activation) are present and pass the rule screen; marks the state
// unbacked when the neighbour is in `unavailable`; otherwise retrains on the
// frozen pre-fault target window and advances last_refresh to `day_slot`.
VirtualSensorUpdate refresh_daily(const VirtualSensorState& state,
                                  const Dataset& dataset, std::size_t day_slot,
                                  const std::set<std::string>& unavailable,
                                  const RuleConfig& rules, std::uint64_t seed,
                                  const MlpTrainingConfig& config = {});

struct OutageRow {
  std::size_t slot = 0;
  double neighbour = kMissing;
  double truth = kMissing;
  double backup = kMissing;
  double persistence = kMissing;
};

struct OutageReport {
  std::string target_id;
  std::string neighbour_id;
  std::size_t outage_start = 0;
  std::size_t outage_hours = 0;
  WindowSpec trained_on;
  std::vector<OutageRow> rows;  // one per outage slot
  std::optional<double> backup_mae;       // none for an empty outage
  std::optional<double> persistence_mae;  // last observed pre-outage value
  double training_mae = 0.0;
};

// Hides the target over [outage_start, outage_start + outage_hours), trains
// on the window ending at outage_start and compares the backup with the
// hidden truth and with last-observation persistence.
OutageReport simulate_outage(const Dataset& dataset, const std::string& target,
                             const std::string& neighbour, std::size_t outage_start,
                             std::size_t outage_hours, std::uint64_t seed,
                             const MlpTrainingConfig& config = {});

}  // namespace soilcast

#endif  // SOILCAST_VIRTUAL_SENSOR_HPP_
