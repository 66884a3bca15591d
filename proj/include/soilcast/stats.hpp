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

#ifndef SOILCAST_STATS_HPP_
#define SOILCAST_STATS_HPP_

#include <span>

namespace soilcast {

// Quantile with linear interpolation between closest ranks: position
// q * (n - 1) in the sorted sample. Throws on an empty sample.
double quantile_linear(std::span<const double> sample, double q);

double mean(std::span<const double> sample);

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> sample);

}  // namespace soilcast

#endif  // SOILCAST_STATS_HPP_
