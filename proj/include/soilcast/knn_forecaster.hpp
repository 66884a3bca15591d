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

// Per-sensor k-nearest-neighbour forecaster.
//
// Each stored row embeds the previous `n_lags` hourly values and the
// hour-of-day (as a sin/cos pair) of the slot being predicted; its target is
// that slot's value. Features are standardized per column over the window.
// Multi-step forecasts are recursive: each prediction is the uniform mean of
// the k nearest stored targets and is fed back as lag 1 of the next step.

#ifndef SOILCAST_KNN_FORECASTER_HPP_
#define SOILCAST_KNN_FORECASTER_HPP_

#include <cstddef>
#include <vector>

#include "soilcast/series.hpp"
#include "soilcast/simd/kernels.hpp"

namespace soilcast {

struct KnnConfig {
  std::size_t k = 5;
  std::size_t n_lags = 24;  // lags 1..n_lags hours
  bool hour_of_day = true;
  std::size_t window_hours = 336;
  std::size_t horizon_hours = 24;

  void validate() const;
};

class KnnForecaster {
 public:
  // Fits on every complete embedding row of `window`. Throws
  // Errc::kInsufficientData when fewer than n_lags + k complete rows exist.
  static KnnForecaster fit(const SensorSeries& window, const KnnConfig& config);

  // Recursive forecast continuing the window. Throws Errc::kInsufficientData
  // when the last n_lags values of the window are not all present.
  std::vector<double> forecast(std::size_t horizon_hours) const;

  std::size_t n_rows() const { return targets_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<double>& targets() const { return targets_; }

  // Uses an explicit kernel table; forecast() uses the dispatched one.
  std::vector<double> forecast(std::size_t horizon_hours,
                               const simd::KernelTable& kernels) const;

 private:
  KnnConfig config_;
  std::size_t dim_ = 0;
  std::vector<double> columns_;  // standardized, column-major n_rows x dim
  std::vector<double> targets_;
  std::vector<double> col_mean_;
  std::vector<double> col_scale_;
  std::vector<double> history_;  // raw window values
  int next_hour_ = 0;            // hour of day of the first forecast slot
};

// Validates the window against [200, 900] and fits on slice_window(series, spec).
KnnForecaster fit_knn(const SensorSeries& series, const WindowSpec& spec,
                      const KnnConfig& config);

}  // namespace soilcast

#endif  // SOILCAST_KNN_FORECASTER_HPP_
