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

#include "soilcast/detectors.hpp"

#include <cmath>

#include "soilcast/error.hpp"

namespace soilcast {

void DetectorConfig::validate() const {
  if (!(flag_fraction > 0.0 && flag_fraction < 1.0)) {
    throw Error(Errc::kInvalidArgument, "detectors: flag_fraction must be in (0, 1)");
  }
  if (!(arima_sigma_mult > 0.0)) {
    throw Error(Errc::kInvalidArgument, "detectors: arima_sigma_mult must be positive");
  }
  if (seasonal_lag == 0 || ar_order == 0 || score_window_hours == 0 ||
      ar_horizon_hours == 0) {
    throw Error(Errc::kInvalidArgument, "detectors: lags, orders and horizons must be >= 1");
  }
  iforest.validate();
}

IForestModel fit_iforest(const SensorSeries& differenced_training,
                         const DetectorConfig& config, Rng& rng) {
  const auto points = embed_level_jump(differenced_training);
  return IForestModel::fit(points, config.iforest, rng);
}

RuleOutcome detect_iforest(const IForestModel& model,
                           const SensorSeries& differenced_window,
                           const DetectorConfig& config) {
  RuleOutcome out{Detector::kIForest, false, {}};
  const auto points = embed_level_jump(differenced_window);
  if (points.empty()) return out;
  std::size_t flagged = 0;
  std::vector<SlotRange> ranges;
  for (const auto& p : points) {
    if (model.score(p) > model.score_threshold()) {
      ++flagged;
      if (!ranges.empty() && ranges.back().end == p.slot) {
        ranges.back().end = p.slot + 1;
      } else {
        ranges.push_back({p.slot, p.slot + 1});
      }
    }
  }
  const double frac = static_cast<double>(flagged) / static_cast<double>(points.size());
  out.fired = frac > config.flag_fraction;
  out.evidence.stats = {{"anomalous_fraction", frac},
                        {"score_threshold", model.score_threshold()},
                        {"samples", static_cast<double>(points.size())}};
  if (out.fired) out.evidence.ranges = std::move(ranges);
  return out;
}

ArModel fit_ar(const SensorSeries& differenced_training, const DetectorConfig& config) {
  return fit_ar(differenced_training, config.ar_order, config.seasonal_lag);
}

RuleOutcome detect_ar_residuals(const ArModel& model, std::span<const double> actual,
                                const DetectorConfig& config) {
  RuleOutcome out{Detector::kArima, false, {}};
  if (actual.empty()) return out;
  const auto forecast = model.forecast(actual.size());
  // Each point is held to its own lead time's forecast standard error.
  const auto sigma_h = model.forecast_sigma(actual.size());
  std::size_t exceed = 0;
  std::vector<SlotRange> ranges;
  for (std::size_t h = 0; h < actual.size(); ++h) {
    if (is_missing(actual[h])) continue;
    if (std::fabs(actual[h] - forecast[h]) > config.arima_sigma_mult * sigma_h[h]) {
      ++exceed;
      if (!ranges.empty() && ranges.back().end == h) {
        ranges.back().end = h + 1;
      } else {
        ranges.push_back({h, h + 1});
      }
    }
  }
  const double frac = static_cast<double>(exceed) / static_cast<double>(actual.size());
  out.fired = frac > config.flag_fraction;
  out.evidence.stats = {{"exceedances", static_cast<double>(exceed)},
                        {"points", static_cast<double>(actual.size())},
                        {"sigma", model.sigma},
                        {"sigma_last", sigma_h.back()}};
  if (out.fired) out.evidence.ranges = std::move(ranges);
  return out;
}

DetectorRun run_detectors(const SensorSeries& window, const DetectorConfig& config,
                          Rng& rng) {
  DetectorRun run;
  const std::size_t n = window.size();
  if (n <= config.seasonal_lag) {
    run.notes.push_back("detectors disabled: window shorter than seasonal lag");
    return run;
  }
  const SensorSeries diff = seasonal_difference(window, config.seasonal_lag);

  if (n > config.score_window_hours) {
    const std::size_t split = n - config.score_window_hours;
    try {
      const auto model = fit_iforest(slice_slots(diff, 0, split), config, rng);
      auto outcome = detect_iforest(model, slice_slots(diff, split, n - split), config);
      for (auto& r : outcome.evidence.ranges) {
        r.begin += split;
        r.end += split;
      }
      run.outcomes.push_back(std::move(outcome));
    } catch (const Error& e) {
      run.notes.push_back(std::string("IForest disabled: ") + e.what());
    }
  } else {
    run.notes.push_back("IForest disabled: window shorter than scoring window");
  }

  if (n > config.ar_horizon_hours) {
    const std::size_t split = n - config.ar_horizon_hours;
    try {
      const auto model = fit_ar(slice_slots(diff, 0, split), config);
      auto outcome = detect_ar_residuals(model, diff.values().subspan(split), config);
      for (auto& r : outcome.evidence.ranges) {
        r.begin += split;
        r.end += split;
      }
      run.outcomes.push_back(std::move(outcome));
    } catch (const Error& e) {
      run.notes.push_back(std::string("Arima disabled: ") + e.what());
    }
  }
  return run;
}

FaultVerdict screen_with_detectors(const SensorSeries& window, const RuleConfig& rules,
                                   const DetectorConfig& detectors, Rng& rng,
                                   std::optional<WindowSpec> spec,
                                   std::vector<std::string>* notes) {
  FaultVerdict verdict = screen(window, rules, spec);
  if (verdict.faulty()) return verdict;
  DetectorRun run = run_detectors(window, detectors, rng);
  for (auto& o : run.outcomes) verdict.add(std::move(o));
  if (notes != nullptr) {
    notes->insert(notes->end(), run.notes.begin(), run.notes.end());
  }
  return verdict;
}

}  // namespace soilcast
