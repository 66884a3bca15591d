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

#include "soilcast/ar_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "soilcast/error.hpp"

namespace soilcast {

std::vector<double> least_squares(std::span<const double> design,
                                  std::size_t n_cols,
                                  std::span<const double> response) {
  const auto n_rows = static_cast<Eigen::Index>(response.size());
  if (n_cols == 0 || design.size() != response.size() * n_cols) {
    throw Error(Errc::kInvalidArgument, "least_squares: shape mismatch");
  }
  if (n_rows < static_cast<Eigen::Index>(n_cols)) {
    throw Error(Errc::kInsufficientData, "least_squares: fewer rows than unknowns");
  }
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> x(design.data(), n_rows, static_cast<Eigen::Index>(n_cols));
  Eigen::Map<const Eigen::VectorXd> y(response.data(), n_rows);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  // Relative pivot threshold well above machine noise: a lag column that is
  // a constant multiple of the intercept column must count as dependent.
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(n_cols)) {
    throw Error(Errc::kDegenerate, "least_squares: singular design matrix");
  }
  const Eigen::VectorXd beta = qr.solve(y);
  return {beta.data(), beta.data() + beta.size()};
}

std::vector<double> ar_recursive_forecast(double intercept,
                                          std::span<const double> coefficients,
                                          std::span<const double> history,
                                          std::size_t horizon) {
  const std::size_t p = coefficients.size();
  if (history.size() < p) {
    throw Error(Errc::kInsufficientData, "AR forecast needs p history values");
  }
  std::vector<double> buf(history.end() - static_cast<std::ptrdiff_t>(p), history.end());
  std::vector<double> out;
  out.reserve(horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    double v = intercept;
    for (std::size_t i = 0; i < p; ++i) v += coefficients[i] * buf[buf.size() - 1 - i];
    out.push_back(v);
    buf.push_back(v);
  }
  return out;
}

std::vector<double> ArModel::forecast(std::size_t horizon) const {
  return ar_recursive_forecast(intercept, coefficients, tail, horizon);
}

std::vector<double> ArModel::forecast_sigma(std::size_t horizon) const {
  // psi weights of the MA(infinity) form: psi_0 = 1,
  // psi_j = sum_i phi_i psi_{j-i}.
  std::vector<double> psi(horizon, 0.0), out(horizon, 0.0);
  double acc = 0.0;
  for (std::size_t j = 0; j < horizon; ++j) {
    if (j == 0) {
      psi[j] = 1.0;
    } else {
      for (std::size_t i = 1; i <= std::min(j, order()); ++i) {
        psi[j] += coefficients[i - 1] * psi[j - i];
      }
    }
    acc += psi[j] * psi[j];
    out[j] = sigma * std::sqrt(acc);
  }
  return out;
}

ArModel fit_ar(const SensorSeries& differenced, std::size_t order,
               std::size_t seasonal_lag) {
  if (order == 0) throw Error(Errc::kInvalidArgument, "AR order must be >= 1");
  const std::size_t n = differenced.size();

  std::size_t longest = 0, run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    run = differenced.missing(i) ? 0 : run + 1;
    longest = std::max(longest, run);
  }
  if (longest < order + 24) {
    throw Error(Errc::kInsufficientData,
                "AR(" + std::to_string(order) + ") needs " +
                    std::to_string(order + 24) + " contiguous samples, longest run is " +
                    std::to_string(longest));
  }
  for (std::size_t i = n - order; i < n; ++i) {
    if (differenced.missing(i)) {
      throw Error(Errc::kInsufficientData, "AR forecast origin has missing lags");
    }
  }

  const std::size_t cols = order + 1;
  std::vector<double> design, response;
  for (std::size_t t = order; t < n; ++t) {
    bool complete = !differenced.missing(t);
    for (std::size_t i = 1; complete && i <= order; ++i) complete = !differenced.missing(t - i);
    if (!complete) continue;
    design.push_back(1.0);
    for (std::size_t i = 1; i <= order; ++i) design.push_back(differenced[t - i]);
    response.push_back(differenced[t]);
  }
  const std::size_t rows = response.size();
  double lo = response.front(), hi = response.front();
  for (double v : response) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) {
    throw Error(Errc::kDegenerate, "AR fit on constant input; detector disabled");
  }
  const auto beta = least_squares(design, cols, response);

  ArModel model;
  model.seasonal_lag = seasonal_lag;
  model.intercept = beta[0];
  model.coefficients.assign(beta.begin() + 1, beta.end());
  model.n_rows = rows;
  double ss = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    double fitted = 0.0;
    for (std::size_t c = 0; c < cols; ++c) fitted += design[r * cols + c] * beta[c];
    const double e = response[r] - fitted;
    ss += e * e;
  }
  const double dof = rows > cols ? static_cast<double>(rows - cols) : 1.0;
  model.sigma = std::sqrt(ss / dof);
  if (!(model.sigma > 0.0)) {
    throw Error(Errc::kDegenerate, "AR fit has zero residual variance");
  }
  auto values = differenced.values();
  model.tail.assign(values.end() - static_cast<std::ptrdiff_t>(order), values.end());
  return model;
}

}  // namespace soilcast
