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

#ifndef SOILCAST_NEIGHBOURHOOD_HPP_
#define SOILCAST_NEIGHBOURHOOD_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soilcast/dataset.hpp"
#include "soilcast/ksg.hpp"

namespace soilcast {

// Symmetric pairwise MI (nats). Absent entries (diagonal, pairs with too
// little overlap or a degenerate series) are NaN.
class MIMatrix {
 public:
  explicit MIMatrix(std::vector<std::string> sensor_ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& sensor_ids() const { return ids_; }
  std::optional<std::size_t> index_of(const std::string& sensor_id) const;

  double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  bool present(std::size_t i, std::size_t j) const;
  std::size_t samples(std::size_t i, std::size_t j) const { return samples_[i * size() + j]; }

  // Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double mi, std::size_t n_samples);

  // Every present entry multiplied by `factor`.
  MIMatrix scaled(double factor) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::vector<std::size_t> samples_;
};

// Estimates every unordered pair once on jointly present slots of the raw
// (undifferenced) series. Pair p (in row-major upper-triangle order) uses the
// jitter seed derived from config.seed and p.
MIMatrix mi_matrix(const Dataset& dataset, const KsgConfig& config);

struct Neighbour {
  std::string sensor_id;
  double mi = 0.0;
};

struct NeighbourMap {
  std::map<std::string, Neighbour> backup;
  std::vector<std::string> unbacked;

  const Neighbour* find(const std::string& target) const;
};

// Row argmax over present off-diagonal entries; exact ties go to the
// lexicographically smallest sensor_id.
NeighbourMap top1_neighbours(const MIMatrix& matrix);

void write_mi_matrix_csv(std::ostream& out, const MIMatrix& matrix,
                         const std::vector<std::string>& comments = {});
MIMatrix read_mi_matrix_csv(std::istream& in);

// DOT text: one node per sensor, one undirected edge per present pair with
// penwidth scaled by MI; edges that are some sensor's top-1 choice are drawn
// bold and list the choosing sensors in a `top1` attribute. Ordering is
// deterministic.
std::string graph_dot(const MIMatrix& matrix, const NeighbourMap& neighbours);

// JSON sidecar with the same content: nodes (with backup choice), edges (with
// MI, sample count and top1_for list) and the unbacked set.
std::string graph_json(const MIMatrix& matrix, const NeighbourMap& neighbours);

// Writes `<base>.dot` and `<base>.json`.
void export_graph(const MIMatrix& matrix, const NeighbourMap& neighbours,
                  const std::string& base_path);

}  // namespace soilcast

#endif  // SOILCAST_NEIGHBOURHOOD_HPP_
