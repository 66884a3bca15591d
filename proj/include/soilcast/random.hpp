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

#ifndef SOILCAST_RANDOM_HPP_
#define SOILCAST_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace soilcast {

using Rng = std::mt19937_64;

// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent generator for a named purpose ("iforest", "mlp", "jitter")
// derived from the single pipeline seed. `index` separates repeated uses of
// one purpose, e.g. one stream per sensor.
inline Rng make_stream(std::uint64_t seed, std::string_view name,
                       std::uint64_t index = 0) {
  return Rng(splitmix64(splitmix64(seed ^ fnv1a64(name)) + index));
}

}  // namespace soilcast

#endif  // SOILCAST_RANDOM_HPP_
