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

// Seasonal ARIMA baseline (p, 0, 0) x (0, 1, Q)_s.
//
// The window is seasonally differenced at lag s. AR and seasonal MA terms are
// estimated by the two-stage Hannan-Rissanen regression: a long AR fit
// supplies innovation estimates, then the differenced series is regressed on
// its own lags and the lagged innovations. Innovations are then rebuilt by
// recursion for forecasting, and the forecast is integrated back.

#ifndef SOILCAST_SARIMA_HPP_
#define SOILCAST_SARIMA_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "soilcast/series.hpp"

namespace soilcast {

struct SarimaConfig {
  std::size_t seasonal_lag = 24;
  std::size_t ar_order = 2;
  std::size_t seasonal_ma_order = 1;

  void validate() const;
};

struct SarimaFit {
  double intercept = 0.0;
  std::vector<double> ar;           // ar[i] weights w_{t-1-i}
  std::vector<double> seasonal_ma;  // seasonal_ma[j] weights e_{t-(j+1)s}
  double sigma = 0.0;
  bool fallback = false;  // seasonal-naive forecast used
  std::string warning;
};

struct SarimaForecast {
  std::vector<double> values;
  SarimaFit fit;
};

// Needs at least two seasonal cycles of present data. A window whose
// differenced values are constant (e.g. a constant or exactly periodic series)
// cannot be fitted; the forecast then falls back to seasonal naive, which is
// plain persistence for a constant series, and a warning is set.
SarimaForecast fit_forecast_sarima(const SensorSeries& window,
                                   const SarimaConfig& config,
                                   std::size_t horizon_hours);

}  // namespace soilcast

#endif  // SOILCAST_SARIMA_HPP_
