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

#include "soilcast/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "soilcast/error.hpp"
#include "soilcast/stats.hpp"

namespace soilcast {

NamedForecaster knn_model(const KnnConfig& config) {
  config.validate();
  return {"knn", [config](const SensorSeries& window, std::size_t horizon) {
            return KnnForecaster::fit(window, config).forecast(horizon);
          }};
}

NamedForecaster sarima_model(const SarimaConfig& config) {
  config.validate();
  return {"sarima", [config](const SensorSeries& window, std::size_t horizon) {
            return fit_forecast_sarima(window, config, horizon).values;
          }};
}

void EvalConfig::validate() const {
  if (window_hours < WindowSpec::kMinHours || window_hours > WindowSpec::kMaxHours) {
    throw Error(Errc::kInvalidArgument, "eval: window_hours must be in [200, 900]");
  }
  if (horizon_hours < 24 || horizon_hours > 72) {
    throw Error(Errc::kInvalidArgument, "eval: horizon_hours must be in [24, 72]");
  }
  if (origin_hour < 0 || origin_hour > 23) {
    throw Error(Errc::kInvalidArgument, "eval: origin_hour must be in [0, 23]");
  }
  if (step_hours == 0 || step_hours % 24 != 0) {
    throw Error(Errc::kInvalidArgument, "eval: step_hours must be a positive multiple of 24");
  }
}

const ModelSummary* EvalReport::summary(const std::string& model) const {
  for (const auto& s : summaries) {
    if (s.model == model) return &s;
  }
  return nullptr;
}

std::vector<std::size_t> evaluation_origins(const TimeGrid& grid, const EvalConfig& config) {
  config.validate();
  std::vector<std::size_t> out;
  const std::size_t n = grid.n_slots();
  std::size_t first = config.window_hours;
  while (first < n && grid.hour_of_day(first) != config.origin_hour) ++first;
  for (std::size_t o = first; o + config.horizon_hours <= n; o += config.step_hours) {
    out.push_back(o);
  }
  return out;
}

ModelSummary summarize(const std::string& model, const std::vector<double>& maes) {
  ModelSummary s;
  s.model = model;
  s.sensors = maes.size();
  if (maes.empty()) return s;
  s.mean_mae = mean(maes);
  s.median_mae = quantile_linear(maes, 0.5);
  s.p75_mae = quantile_linear(maes, 0.75);
  return s;
}

EvalReport rolling_origin_evaluate(const Dataset& dataset,
                                   const std::vector<NamedForecaster>& models,
                                   const EvalConfig& config) {
  config.validate();
  if (models.empty()) throw Error(Errc::kInvalidArgument, "eval: no models given");
  EvalReport report;
  const auto origins = evaluation_origins(dataset.grid(), config);
  report.candidate_origins = origins.size();
  if (origins.empty()) {
    throw Error(Errc::kInsufficientData,
                "eval: dataset too short for one window plus horizon");
  }

  std::vector<std::vector<double>> per_model(models.size());
  for (const SensorSeries& series : dataset.series()) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      double total = 0.0;
      std::size_t valid = 0;
      for (std::size_t o : origins) {
        std::size_t present = 0;
        for (std::size_t h = 0; h < config.horizon_hours; ++h) {
          if (!series.missing(o + h)) ++present;
        }
        if (present == 0) continue;
        const SensorSeries window =
            slice_window(series, WindowSpec{config.window_hours, o});
        std::vector<double> forecast;
        try {
          forecast = models[m].forecast(window, config.horizon_hours);
        } catch (const Error&) {
          continue;
        }
        if (forecast.size() != config.horizon_hours) continue;
        double abs_err = 0.0;
        bool finite = true;
        for (std::size_t h = 0; h < config.horizon_hours; ++h) {
          if (series.missing(o + h)) continue;
          if (!std::isfinite(forecast[h])) finite = false;
          abs_err += std::fabs(forecast[h] - series[o + h]);
        }
        if (!finite) continue;
        total += abs_err / static_cast<double>(present);
        ++valid;
      }
      if (valid == 0) {
        report.excluded.push_back({series.sensor_id(), models[m].name, "no valid origins"});
        continue;
      }
      const double mae = total / static_cast<double>(valid);
      report.scores.push_back({series.sensor_id(), models[m].name, mae, valid});
      per_model[m].push_back(mae);
    }
  }
  for (std::size_t m = 0; m < models.size(); ++m) {
    if (!per_model[m].empty()) report.summaries.push_back(summarize(models[m].name, per_model[m]));
  }
  return report;
}

namespace {

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_eval_report_csv(std::ostream& out, const EvalReport& report,
                           const std::vector<std::string>& comments) {
  write_comments(out, comments);
  out << "sensor_id,model,mae,origins\n";
  for (const auto& s : report.scores) {
    out << s.sensor_id << ',' << s.model << ',' << fixed6(s.mae) << ',' << s.origins << '\n';
  }
  for (const auto& e : report.excluded) {
    out << e.sensor_id << ',' << e.model << ",,0\n";
  }
}

void write_eval_summary_csv(std::ostream& out, const EvalReport& report,
                            const std::vector<std::string>& comments) {
  write_comments(out, comments);
  out << "# percentile: linear interpolation between closest ranks\n";
  out << "model,mean_mae,p75_mae,median_mae,sensors\n";
  for (const auto& s : report.summaries) {
    out << s.model << ',' << fixed6(s.mean_mae) << ',' << fixed6(s.p75_mae) << ','
        << fixed6(s.median_mae) << ',' << s.sensors << '\n';
  }
}

}  // namespace soilcast
