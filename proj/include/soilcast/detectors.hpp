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

// Model-based detectors run after the rules on a seasonally differenced
// window, and the combined rule-first screen.

#ifndef SOILCAST_DETECTORS_HPP_
#define SOILCAST_DETECTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soilcast/ar_model.hpp"
#include "soilcast/iforest.hpp"
#include "soilcast/rules.hpp"
#include "soilcast/series.hpp"

namespace soilcast {

struct DetectorConfig {
  double flag_fraction = 0.30;
  double arima_sigma_mult = 2.0;
  IForestConfig iforest;
  std::size_t seasonal_lag = 24;     // 168 for weekly differencing
  std::size_t ar_order = 24;
  std::size_t score_window_hours = 168;
  std::size_t ar_horizon_hours = 24;

  void validate() const;
};

IForestModel fit_iforest(const SensorSeries& differenced_training,
                         const DetectorConfig& config, Rng& rng);

// Fires iff the fraction of embedded window samples scoring above the model
// threshold exceeds config.flag_fraction.
RuleOutcome detect_iforest(const IForestModel& model,
                           const SensorSeries& differenced_window,
                           const DetectorConfig& config);

ArModel fit_ar(const SensorSeries& differenced_training,
               const DetectorConfig& config);

// Compares `actual` with the model's recursive forecast of the same length.
// A point h steps ahead exceeds when |actual - forecast| >
// arima_sigma_mult * sigma_h (strict), sigma_h being the model's h-step
// forecast standard error; missing actuals never exceed. Fires iff
// exceedances / actual.size() > flag_fraction.
RuleOutcome detect_ar_residuals(const ArModel& model,
                                std::span<const double> actual,
                                const DetectorConfig& config);

struct DetectorRun {
  std::vector<RuleOutcome> outcomes;  // IForest and/or Arima, fired or not
  std::vector<std::string> notes;     // detectors disabled for this window
};

// Seasonally differences `window`, fits each detector on the leading part and
// scores the trailing part (score_window_hours for the forest,
// ar_horizon_hours for the AR check). A detector that cannot be fitted is
// disabled for the window and noted.
DetectorRun run_detectors(const SensorSeries& window, const DetectorConfig& config,
                          Rng& rng);

// Rules first; detectors only when no rule fired.
FaultVerdict screen_with_detectors(const SensorSeries& window,
                                   const RuleConfig& rules,
                                   const DetectorConfig& detectors, Rng& rng,
                                   std::optional<WindowSpec> spec = std::nullopt,
                                   std::vector<std::string>* notes = nullptr);

}  // namespace soilcast

#endif  // SOILCAST_DETECTORS_HPP_
