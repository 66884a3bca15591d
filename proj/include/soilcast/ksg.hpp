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

// Kraskov-Stoegbauer-Grassberger mutual information (algorithm 1).
//
// For each joint sample i, eps_i is the max-norm distance to its k-th nearest
// neighbour in (x, y); n_x(i) and n_y(i) count the other samples strictly
// closer than eps_i in each marginal. The estimate, in nats, is
//
//   psi(k) + psi(n) - < psi(n_x + 1) + psi(n_y + 1) >.
//
// Inputs are standardized to unit variance and a seeded uniform jitter of
// relative amplitude `noise_amplitude` breaks ties from quantized readings.
// The estimate can be slightly negative and is not clamped.

#ifndef SOILCAST_KSG_HPP_
#define SOILCAST_KSG_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

#include "soilcast/simd/kernels.hpp"

namespace soilcast {

struct KsgConfig {
  std::size_t k_neighbours = 4;
  double noise_amplitude = 1e-8;
  std::uint64_t seed = 0;

  static constexpr std::size_t kMinSamples = 50;

  void validate() const;
};

// `x` and `y` hold jointly present pairs only. The pair order is
// canonicalized internally, so ksg_mi(x, y) == ksg_mi(y, x) bit for bit.
// Throws Errc::kInsufficientData for n < 50 and Errc::kDegenerate for a
// constant input.
double ksg_mi(std::span<const double> x, std::span<const double> y,
              const KsgConfig& config,
              const simd::KernelTable& kernels = simd::kernels());

}  // namespace soilcast

#endif  // SOILCAST_KSG_HPP_
