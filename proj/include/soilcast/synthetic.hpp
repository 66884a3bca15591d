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

// Deterministic stand-in for the 13-sensor park corpus.
//
// Same shape as the published data: 13 soil-moisture sensors logging about
// every 10 minutes from 2022-11-15 00:00, 118,024 readings that aggregate to
// 1,528 hourly slots. Moisture follows a daytime drydown driven by a shared
// weather signal, nightly zone irrigation and a handful of shared storms.
// SENS0021 is a close, slightly rescaled companion of SENS0012.

#ifndef SOILCAST_SYNTHETIC_HPP_
#define SOILCAST_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "soilcast/dataset.hpp"

namespace soilcast {

inline constexpr std::size_t kCorpusSensors = 13;
inline constexpr std::size_t kCorpusSlots = 1528;
inline constexpr std::size_t kCorpusReadings = 118024;
inline constexpr std::uint64_t kCorpusSeed = 20221115;

struct SyntheticCorpus {
  std::vector<RawReading> readings;  // ordered by timestamp, then sensor_id
  TimeGrid grid;
  std::vector<double> precip_mm;  // rain over [date 16:00, next day 16:00)
  std::vector<std::string> dates;
};

SyntheticCorpus generate_corpus(std::uint64_t seed = kCorpusSeed);

// timestamp,sensor_id,vwc
void write_raw_csv(std::ostream& out, const std::vector<RawReading>& readings);
// date,precip_mm_24h
void write_precip_csv(std::ostream& out, const SyntheticCorpus& corpus);

}  // namespace soilcast

#endif  // SOILCAST_SYNTHETIC_HPP_
