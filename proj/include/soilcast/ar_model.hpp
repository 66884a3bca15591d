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

#ifndef SOILCAST_AR_MODEL_HPP_
#define SOILCAST_AR_MODEL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "soilcast/series.hpp"

namespace soilcast {

// Ordinary least squares with column-pivoted QR. Throws Errc::kDegenerate when
// the design is rank deficient. `design` is row-major with `n_cols` columns.
std::vector<double> least_squares(std::span<const double> design,
                                  std::size_t n_cols,
                                  std::span<const double> response);

// AR(p) with intercept, fitted on an already (seasonally) differenced series.
struct ArModel {
  std::size_t seasonal_lag = 24;
  double intercept = 0.0;
  std::vector<double> coefficients;  // coefficients[i] weights x_{t-1-i}
  double sigma = 0.0;                // std of in-sample one-step residuals
  std::vector<double> tail;          // last p training values, oldest first
  std::size_t n_rows = 0;            // design rows used by the fit

  std::size_t order() const { return coefficients.size(); }

  // Recursive multi-step forecast continuing from `tail`.
  std::vector<double> forecast(std::size_t horizon) const;

  // Standard error of the h-step forecast, h = 1..horizon:
  // sigma * sqrt(psi_0^2 + ... + psi_{h-1}^2). Equals sigma at h = 1.
  std::vector<double> forecast_sigma(std::size_t horizon) const;
};

// Recursive AR forecast from an explicit history (oldest first, at least p
// values).
std::vector<double> ar_recursive_forecast(double intercept,
                                          std::span<const double> coefficients,
                                          std::span<const double> history,
                                          std::size_t horizon);

// Least-squares AR(order) fit on rows whose target and all lags are present.
// Requires a contiguous present run of at least order + 24 samples ending the
// series so that the forecast tail is defined. Throws Errc::kInsufficientData
// or Errc::kDegenerate (constant input).
ArModel fit_ar(const SensorSeries& differenced, std::size_t order,
               std::size_t seasonal_lag = 24);

}  // namespace soilcast

#endif  // SOILCAST_AR_MODEL_HPP_
