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

// Rolling-origin evaluation of point forecasters.
//
// Origins sit at a fixed hour of day and step by 24 h. At origin o a model
// sees the trailing window [o - L, o) and forecasts [o, o + h). The error for
// that origin is the MAE over the present actual values; a sensor's MAE is the
// mean over its valid origins. Across sensors the report gives the mean and
// the 75th percentile (linear interpolation between closest ranks).

#ifndef SOILCAST_EVALUATION_HPP_
#define SOILCAST_EVALUATION_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "soilcast/dataset.hpp"
#include "soilcast/knn_forecaster.hpp"
#include "soilcast/sarima.hpp"

namespace soilcast {

struct NamedForecaster {
  std::string name;
  // Forecast of `horizon` slots continuing `window`. May throw soilcast::Error;
  // the origin is then invalid for this model.
  std::function<std::vector<double>(const SensorSeries& window, std::size_t horizon)>
      forecast;
};

NamedForecaster knn_model(const KnnConfig& config);
NamedForecaster sarima_model(const SarimaConfig& config);

struct EvalConfig {
  std::size_t window_hours = 336;
  std::size_t horizon_hours = 24;
  int origin_hour = 16;
  std::size_t step_hours = 24;

  void validate() const;
};

struct SensorScore {
  std::string sensor_id;
  std::string model;
  double mae = 0.0;
  std::size_t origins = 0;
};

struct ModelSummary {
  std::string model;
  double mean_mae = 0.0;
  double median_mae = 0.0;
  double p75_mae = 0.0;
  std::size_t sensors = 0;
};

struct ExcludedSensor {
  std::string sensor_id;
  std::string model;
  std::string reason;
};

struct EvalReport {
  std::vector<SensorScore> scores;      // sensor-major, models in input order
  std::vector<ModelSummary> summaries;  // one per model with >= 1 sensor
  std::vector<ExcludedSensor> excluded;
  std::size_t candidate_origins = 0;

  const ModelSummary* summary(const std::string& model) const;
};

// Slots usable as origins: at `origin_hour`, with a full window before and a
// full horizon after inside the grid.
std::vector<std::size_t> evaluation_origins(const TimeGrid& grid, const EvalConfig& config);

// Summary statistics of a set of per-sensor MAEs.
ModelSummary summarize(const std::string& model, const std::vector<double>& maes);

EvalReport rolling_origin_evaluate(const Dataset& dataset,
                                   const std::vector<NamedForecaster>& models,
                                   const EvalConfig& config);

// sensor_id,model,mae,origins
void write_eval_report_csv(std::ostream& out, const EvalReport& report,
                           const std::vector<std::string>& comments = {});
// model,mean_mae,p75_mae,median_mae,sensors
void write_eval_summary_csv(std::ostream& out, const EvalReport& report,
                            const std::vector<std::string>& comments = {});

}  // namespace soilcast

#endif  // SOILCAST_EVALUATION_HPP_
