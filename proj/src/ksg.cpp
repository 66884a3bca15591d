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

#include "soilcast/ksg.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "soilcast/error.hpp"
#include "soilcast/random.hpp"
#include "soilcast/series.hpp"
#include "soilcast/stats.hpp"

namespace soilcast {
namespace {

std::vector<double> standardize_with_jitter(std::span<const double> v,
                                            double amplitude, Rng& rng) {
  const double m = mean(v);
  const double s = stddev(v);
  if (!(s > 0.0)) {
    throw Error(Errc::kDegenerate, "KSG: constant input series");
  }
  std::uniform_real_distribution<double> jitter(-amplitude, amplitude);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (v[i] - m) / s;
    if (amplitude > 0.0) out[i] += jitter(rng);
  }
  return out;
}

}  // namespace

void KsgConfig::validate() const {
  if (k_neighbours < 1) throw Error(Errc::kInvalidArgument, "KSG: k must be >= 1");
  if (!(noise_amplitude >= 0.0)) {
    throw Error(Errc::kInvalidArgument, "KSG: noise_amplitude must be >= 0");
  }
}

double ksg_mi(std::span<const double> x, std::span<const double> y,
              const KsgConfig& config, const simd::KernelTable& kernels) {
  config.validate();
  if (x.size() != y.size()) {
    throw Error(Errc::kInvalidArgument, "KSG: x and y lengths differ");
  }
  const std::size_t n = x.size();
  if (n < KsgConfig::kMinSamples) {
    throw Error(Errc::kInsufficientData,
                "KSG needs >= 50 joint samples, got " + std::to_string(n));
  }
  if (config.k_neighbours >= n) {
    throw Error(Errc::kInvalidArgument, "KSG: k must be smaller than n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_missing(x[i]) || is_missing(y[i])) {
      throw Error(Errc::kInvalidArgument, "KSG: inputs must be jointly present");
    }
  }
  if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) {
    std::swap(x, y);
  }

  Rng rng = make_stream(config.seed, "jitter");
  const auto xs = standardize_with_jitter(x, config.noise_amplitude, rng);
  const auto ys = standardize_with_jitter(y, config.noise_amplitude, rng);

  const std::size_t k = config.k_neighbours;
  std::vector<double> psi(n + 1, 0.0);
  for (std::size_t m = 1; m <= n; ++m) psi[m] = boost::math::digamma(static_cast<double>(m));

  std::vector<double> dist(n);
  double marginal_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kernels.chebyshev_2d(xs.data(), ys.data(), n, xs[i], ys[i], dist.data());
    dist[i] = std::numeric_limits<double>::infinity();
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     dist.end());
    const double eps = dist[k - 1];
    // Counts include sample i itself whenever eps > 0.
    const std::size_t cx = kernels.count_within(xs.data(), n, xs[i], eps);
    const std::size_t cy = kernels.count_within(ys.data(), n, ys[i], eps);
    const std::size_t nx = cx > 0 ? cx - 1 : 0;
    const std::size_t ny = cy > 0 ? cy - 1 : 0;
    marginal_sum += psi[nx + 1] + psi[ny + 1];
  }
  return psi[k] + psi[n] - marginal_sum / static_cast<double>(n);
}

}  // namespace soilcast
