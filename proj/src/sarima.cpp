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

#include "soilcast/sarima.hpp"

#include <algorithm>
#include <cmath>

#include "soilcast/ar_model.hpp"
#include "soilcast/error.hpp"

namespace soilcast {
namespace {

constexpr double kMaxMa = 0.99;

struct Regression {
  std::vector<double> beta;
  double sigma = 0.0;
};

// Regresses w_t on [1, w_{t-1..t-p}, e_{t-s..t-Qs}] over rows where every term
// is present. `innov` may be empty when Q == 0.
Regression regress(const std::vector<double>& w, const std::vector<double>& innov,
                   std::size_t p, std::size_t q, std::size_t s) {
  const std::size_t start = std::max(p, q * s);
  const std::size_t cols = 1 + p + q;
  std::vector<double> design, response;
  for (std::size_t t = start; t < w.size(); ++t) {
    if (is_missing(w[t])) continue;
    bool ok = true;
    for (std::size_t i = 1; ok && i <= p; ++i) ok = !is_missing(w[t - i]);
    for (std::size_t j = 1; ok && j <= q; ++j) ok = !is_missing(innov[t - j * s]);
    if (!ok) continue;
    design.push_back(1.0);
    for (std::size_t i = 1; i <= p; ++i) design.push_back(w[t - i]);
    for (std::size_t j = 1; j <= q; ++j) design.push_back(innov[t - j * s]);
    response.push_back(w[t]);
  }
  if (response.size() < cols + 8) {
    throw Error(Errc::kInsufficientData, "sarima: too few complete regression rows");
  }
  Regression out;
  out.beta = least_squares(design, cols, response);
  double ss = 0.0;
  for (std::size_t r = 0; r < response.size(); ++r) {
    double fitted = 0.0;
    for (std::size_t c = 0; c < cols; ++c) fitted += design[r * cols + c] * out.beta[c];
    ss += (response[r] - fitted) * (response[r] - fitted);
  }
  out.sigma = std::sqrt(ss / static_cast<double>(response.size() - cols));
  return out;
}

std::vector<double> residuals_of(const std::vector<double>& w, const Regression& reg,
                                 std::size_t p) {
  std::vector<double> e(w.size(), kMissing);
  for (std::size_t t = p; t < w.size(); ++t) {
    double v = w[t] - reg.beta[0];
    for (std::size_t i = 1; i <= p && !is_missing(v); ++i) v -= reg.beta[i] * w[t - i];
    e[t] = v;  // NaN when any term is missing
  }
  return e;
}

SarimaForecast seasonal_naive(const SensorSeries& window, std::size_t s,
                              std::size_t horizon, std::string warning) {
  SarimaForecast out;
  out.fit.fallback = true;
  out.fit.warning = std::move(warning);
  std::vector<double> x(window.values().begin(), window.values().end());
  const std::size_t n = x.size();
  for (std::size_t h = 0; h < horizon; ++h) {
    const double v = x[n + h - s];
    if (is_missing(v)) {
      throw Error(Errc::kInsufficientData, "sarima: missing value one season back");
    }
    x.push_back(v);
    out.values.push_back(v);
  }
  return out;
}

}  // namespace

void SarimaConfig::validate() const {
  if (seasonal_lag == 0) throw Error(Errc::kInvalidArgument, "sarima: seasonal_lag must be >= 1");
  if (ar_order == 0 && seasonal_ma_order == 0) {
    throw Error(Errc::kInvalidArgument, "sarima: orders must not all be zero");
  }
}

SarimaForecast fit_forecast_sarima(const SensorSeries& window, const SarimaConfig& config,
                                   std::size_t horizon_hours) {
  config.validate();
  const std::size_t s = config.seasonal_lag;
  const std::size_t p = config.ar_order;
  const std::size_t q = config.seasonal_ma_order;
  const std::size_t n = window.size();
  if (n - window.missing_count() < 2 * s || n <= s) {
    throw Error(Errc::kInsufficientData, "sarima: needs two seasonal cycles of data");
  }

  std::vector<double> w(n, kMissing);
  for (std::size_t t = s; t < n; ++t) w[t] = window[t] - window[t - s];
  double lo = INFINITY, hi = -INFINITY, scale = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (!window.missing(t)) scale = std::max(scale, std::fabs(window[t]));
    if (is_missing(w[t])) continue;
    lo = std::min(lo, w[t]);
    hi = std::max(hi, w[t]);
  }
  // Rounding residue of an exact period counts as constant.
  if (!(hi - lo > 1e-12 * scale)) {
    return seasonal_naive(window, s, horizon_hours,
                          "constant seasonal difference; seasonal-naive persistence used");
  }

  Regression reg;
  std::vector<double> innov;
  try {
    if (q > 0) {
      // Stage 1: long AR spanning the seasonal MA lags.
      const std::size_t long_order = q * s + std::max<std::size_t>(p, 2);
      const Regression long_ar = regress(w, {}, long_order, 0, s);
      innov = residuals_of(w, long_ar, long_order);
    }
    reg = regress(w, innov, p, q, s);
  } catch (const Error& e) {
    if (e.code() == Errc::kInvalidArgument) throw;
    return seasonal_naive(window, s, horizon_hours,
                          std::string("sarima fit failed (") + e.what() +
                              "); seasonal-naive used");
  }

  SarimaForecast out;
  out.fit.intercept = reg.beta[0];
  out.fit.ar.assign(reg.beta.begin() + 1, reg.beta.begin() + 1 + static_cast<std::ptrdiff_t>(p));
  out.fit.seasonal_ma.assign(reg.beta.begin() + 1 + static_cast<std::ptrdiff_t>(p), reg.beta.end());
  for (double& theta : out.fit.seasonal_ma) theta = std::clamp(theta, -kMaxMa, kMaxMa);
  out.fit.sigma = reg.sigma;

  // Innovation recursion over the window; unknown terms count as zero.
  std::vector<double> e(n, 0.0);
  for (std::size_t t = s; t < n; ++t) {
    if (is_missing(w[t])) continue;
    double v = w[t] - out.fit.intercept;
    bool ok = true;
    for (std::size_t i = 1; i <= p; ++i) {
      if (t < i || is_missing(w[t - i])) {
        ok = false;
        break;
      }
      v -= out.fit.ar[i - 1] * w[t - i];
    }
    if (!ok) continue;
    for (std::size_t j = 1; j <= q; ++j) {
      if (t >= j * s) v -= out.fit.seasonal_ma[j - 1] * e[t - j * s];
    }
    e[t] = v;
  }

  std::vector<double> wf(w);
  std::vector<double> xf(window.values().begin(), window.values().end());
  for (std::size_t i = 1; i <= p; ++i) {
    if (is_missing(wf[n - i])) {
      throw Error(Errc::kInsufficientData, "sarima: forecast origin has missing lags");
    }
  }
  e.resize(n + horizon_hours, 0.0);
  for (std::size_t h = 0; h < horizon_hours; ++h) {
    const std::size_t t = n + h;
    double v = out.fit.intercept;
    for (std::size_t i = 1; i <= p; ++i) v += out.fit.ar[i - 1] * wf[t - i];
    for (std::size_t j = 1; j <= q; ++j) {
      if (t >= j * s) v += out.fit.seasonal_ma[j - 1] * e[t - j * s];
    }
    wf.push_back(v);
    const double base = xf[t - s];
    if (is_missing(base)) {
      throw Error(Errc::kInsufficientData, "sarima: missing value one season back");
    }
    xf.push_back(v + base);
    out.values.push_back(v + base);
  }
  return out;
}

}  // namespace soilcast
