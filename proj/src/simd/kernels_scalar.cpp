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

#include <cmath>

#include "soilcast/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace soilcast::simd::scalar {

void chebyshev_2d(const double* xs, const double* ys, std::size_t n, double qx,
                  double qy, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const double dx = std::fabs(xs[j] - qx);
    const double dy = std::fabs(ys[j] - qy);
    out[j] = dx > dy ? dx : dy;
  }
}

std::size_t count_within(const double* values, std::size_t n, double center,
                         double radius) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::fabs(values[j] - center) < radius) ++count;
  }
  return count;
}

void accumulate_squared_diff(const double* column, std::size_t n, double q,
                             double* acc) {
  for (std::size_t j = 0; j < n; ++j) {
    const double d = column[j] - q;
    acc[j] = acc[j] + d * d;
  }
}

void relu_affine(const double* x, std::size_t n, double w, double b,
                 double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const double z = w * x[j] + b;
    out[j] = z > 0.0 ? z : 0.0;
  }
}

void axpy(double a, const double* x, std::size_t n, double* acc) {
  for (std::size_t j = 0; j < n; ++j) acc[j] = acc[j] + a * x[j];
}

}  // namespace soilcast::simd::scalar
