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

#include "soilcast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "soilcast/error.hpp"

namespace soilcast {

double quantile_linear(std::span<const double> sample, double q) {
  if (sample.empty()) throw Error(Errc::kInsufficientData, "quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(Errc::kInvalidArgument, "quantile outside [0, 1]");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double mean(std::span<const double> sample) {
  if (sample.empty()) return 0.0;
  double s = 0.0;
  for (double v : sample) s += v;
  return s / static_cast<double>(sample.size());
}

double stddev(std::span<const double> sample) {
  if (sample.size() < 2) return 0.0;
  const double m = mean(sample);
  double ss = 0.0;
  for (double v : sample) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(sample.size() - 1));
}

}  // namespace soilcast
