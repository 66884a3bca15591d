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

// Data-parallel inner loops used by the estimators and learners.
//
// Every kernel has a scalar reference implementation and, where the CPU
// supports it, an AVX2 variant. Variants are selected once at runtime. All
// kernels are element-wise (no cross-lane reductions over floating point), so
// each variant performs the same IEEE operations in the same order and the
// results are bit-identical to the scalar reference. The build disables FMA
// contraction to keep that guarantee.
//
// Setting the environment variable SOILCAST_SIMD=scalar forces the scalar
// table.

#ifndef SOILCAST_SIMD_KERNELS_HPP_
#define SOILCAST_SIMD_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

namespace soilcast::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  // out[j] = max(|xs[j] - qx|, |ys[j] - qy|)
  void (*chebyshev_2d)(const double* xs, const double* ys, std::size_t n,
                       double qx, double qy, double* out);

  // Number of j with |values[j] - center| < radius (strict).
  std::size_t (*count_within)(const double* values, std::size_t n,
                              double center, double radius);

  // acc[j] += (column[j] - q) * (column[j] - q)
  void (*accumulate_squared_diff)(const double* column, std::size_t n,
                                  double q, double* acc);

  // out[j] = max(0, w * x[j] + b)
  void (*relu_affine)(const double* x, std::size_t n, double w, double b,
                      double* out);

  // acc[j] += a * x[j]
  void (*axpy)(double a, const double* x, std::size_t n, double* acc);
};

const KernelTable& scalar_kernels();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_kernels();

// The table chosen for this process.
const KernelTable& kernels();

// Squared Euclidean distance from `query` to every row of a column-major
// matrix. `columns` holds `query.size()` contiguous columns of `n_rows`
// entries each; `out` must have `n_rows` entries.
void squared_distances(std::span<const double> columns, std::size_t n_rows,
                       std::span<const double> query, std::span<double> out,
                       const KernelTable& table = kernels());

}  // namespace soilcast::simd

#endif  // SOILCAST_SIMD_KERNELS_HPP_
