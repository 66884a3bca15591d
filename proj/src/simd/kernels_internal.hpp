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

#ifndef SOILCAST_SRC_SIMD_KERNELS_INTERNAL_HPP_
#define SOILCAST_SRC_SIMD_KERNELS_INTERNAL_HPP_

#include <cstddef>

namespace soilcast::simd {

namespace scalar {
void chebyshev_2d(const double* xs, const double* ys, std::size_t n, double qx,
                  double qy, double* out);
std::size_t count_within(const double* values, std::size_t n, double center,
                         double radius);
void accumulate_squared_diff(const double* column, std::size_t n, double q,
                             double* acc);
void relu_affine(const double* x, std::size_t n, double w, double b,
                 double* out);
void axpy(double a, const double* x, std::size_t n, double* acc);
}  // namespace scalar

#if defined(SOILCAST_HAVE_AVX2)
namespace avx2 {
void chebyshev_2d(const double* xs, const double* ys, std::size_t n, double qx,
                  double qy, double* out);
std::size_t count_within(const double* values, std::size_t n, double center,
                         double radius);
void accumulate_squared_diff(const double* column, std::size_t n, double q,
                             double* acc);
void relu_affine(const double* x, std::size_t n, double w, double b,
                 double* out);
void axpy(double a, const double* x, std::size_t n, double* acc);
}  // namespace avx2
#endif

}  // namespace soilcast::simd

#endif  // SOILCAST_SRC_SIMD_KERNELS_INTERNAL_HPP_
