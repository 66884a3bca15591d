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

#include "soilcast/knn_forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "soilcast/error.hpp"

namespace soilcast {
namespace {

void hour_features(int hour, double& s, double& c) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(hour) / 24.0;
  s = std::sin(angle);
  c = std::cos(angle);
}

}  // namespace

void KnnConfig::validate() const {
  if (k < 1) throw Error(Errc::kInvalidArgument, "knn: k must be >= 1");
  if (n_lags < 1) throw Error(Errc::kInvalidArgument, "knn: need at least one lag");
  if (horizon_hours < 24 || horizon_hours > 72) {
    throw Error(Errc::kInvalidArgument, "knn: horizon must be in [24, 72] h");
  }
  if (window_hours < WindowSpec::kMinHours || window_hours > WindowSpec::kMaxHours) {
    throw Error(Errc::kInvalidArgument, "knn: window must be in [200, 900] h");
  }
}

KnnForecaster KnnForecaster::fit(const SensorSeries& window, const KnnConfig& config) {
  if (config.k < 1 || config.n_lags < 1) {
    throw Error(Errc::kInvalidArgument, "knn: k and n_lags must be >= 1");
  }
  KnnForecaster model;
  model.config_ = config;
  const std::size_t lags = config.n_lags;
  model.dim_ = lags + (config.hour_of_day ? 2 : 0);

  std::vector<std::size_t> rows;
  for (std::size_t t = lags; t < window.size(); ++t) {
    bool complete = !window.missing(t);
    for (std::size_t l = 1; complete && l <= lags; ++l) complete = !window.missing(t - l);
    if (complete) rows.push_back(t);
  }
  if (rows.size() < lags + config.k) {
    throw Error(Errc::kInsufficientData,
                "knn: " + std::to_string(rows.size()) +
                    " complete embedding rows; widen the window within [200, 900] h");
  }

  const std::size_t n = rows.size();
  model.columns_.assign(n * model.dim_, 0.0);
  model.targets_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t t = rows[r];
    for (std::size_t l = 1; l <= lags; ++l) model.columns_[(l - 1) * n + r] = window[t - l];
    if (config.hour_of_day) {
      hour_features(window.grid().hour_of_day(t), model.columns_[lags * n + r],
                    model.columns_[(lags + 1) * n + r]);
    }
    model.targets_[r] = window[t];
  }

  model.col_mean_.assign(model.dim_, 0.0);
  model.col_scale_.assign(model.dim_, 1.0);
  for (std::size_t d = 0; d < model.dim_; ++d) {
    double* col = model.columns_.data() + d * n;
    double m = 0.0;
    for (std::size_t r = 0; r < n; ++r) m += col[r];
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) ss += (col[r] - m) * (col[r] - m);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    model.col_mean_[d] = m;
    model.col_scale_[d] = sd > 0.0 ? sd : 1.0;
    for (std::size_t r = 0; r < n; ++r) col[r] = (col[r] - m) / model.col_scale_[d];
  }

  model.history_.assign(window.values().begin(), window.values().end());
  model.next_hour_ = (window.grid().hour_of_day(window.size() - 1) + 1) % 24;
  return model;
}

std::vector<double> KnnForecaster::forecast(std::size_t horizon_hours) const {
  return forecast(horizon_hours, simd::kernels());
}

std::vector<double> KnnForecaster::forecast(std::size_t horizon_hours,
                                            const simd::KernelTable& kernels) const {
  const std::size_t lags = config_.n_lags;
  const std::size_t n = targets_.size();
  std::vector<double> history(history_.end() - static_cast<std::ptrdiff_t>(lags),
                              history_.end());
  for (double v : history) {
    if (is_missing(v)) {
      throw Error(Errc::kInsufficientData, "knn: forecast origin has missing lags");
    }
  }
  const std::size_t k = std::min(config_.k, n);
  std::vector<double> query(dim_), dist(n), out;
  std::vector<std::pair<double, std::size_t>> ranked(n);
  out.reserve(horizon_hours);
  for (std::size_t step = 0; step < horizon_hours; ++step) {
    for (std::size_t l = 1; l <= lags; ++l) {
      query[l - 1] = (history[history.size() - l] - col_mean_[l - 1]) / col_scale_[l - 1];
    }
    if (config_.hour_of_day) {
      double s = 0.0, c = 0.0;
      hour_features((next_hour_ + static_cast<int>(step)) % 24, s, c);
      query[lags] = (s - col_mean_[lags]) / col_scale_[lags];
      query[lags + 1] = (c - col_mean_[lags + 1]) / col_scale_[lags + 1];
    }
    simd::squared_distances(columns_, n, query, dist, kernels);
    for (std::size_t r = 0; r < n; ++r) ranked[r] = {dist[r], r};
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end());
    std::vector<std::size_t> chosen(k);
    for (std::size_t i = 0; i < k; ++i) chosen[i] = ranked[i].second;
    std::sort(chosen.begin(), chosen.end());
    double sum = 0.0;
    double lo = targets_[chosen.front()], hi = lo;
    for (std::size_t r : chosen) {
      sum += targets_[r];
      lo = std::min(lo, targets_[r]);
      hi = std::max(hi, targets_[r]);
    }
    // Rounding in the mean must not leave the hull of the neighbours.
    const double prediction = std::clamp(sum / static_cast<double>(k), lo, hi);
    out.push_back(prediction);
    history.push_back(prediction);
  }
  return out;
}

KnnForecaster fit_knn(const SensorSeries& series, const WindowSpec& spec,
                      const KnnConfig& config) {
  config.validate();
  return KnnForecaster::fit(slice_window(series, spec), config);
}

}  // namespace soilcast
