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

#include "soilcast/neighbourhood.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "soilcast/error.hpp"
#include "soilcast/file_io.hpp"
#include "soilcast/random.hpp"
#include "text_util.hpp"

namespace soilcast {

MIMatrix::MIMatrix(std::vector<std::string> sensor_ids)
    : ids_(std::move(sensor_ids)),
      values_(ids_.size() * ids_.size(), kMissing),
      samples_(ids_.size() * ids_.size(), 0) {}

std::optional<std::size_t> MIMatrix::index_of(const std::string& sensor_id) const {
  auto it = std::find(ids_.begin(), ids_.end(), sensor_id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

bool MIMatrix::present(std::size_t i, std::size_t j) const {
  return i != j && !is_missing(at(i, j));
}

void MIMatrix::set(std::size_t i, std::size_t j, double mi, std::size_t n_samples) {
  if (i == j) throw Error(Errc::kInvalidArgument, "MI diagonal is not stored");
  values_[i * size() + j] = values_[j * size() + i] = mi;
  samples_[i * size() + j] = samples_[j * size() + i] = n_samples;
}

MIMatrix MIMatrix::scaled(double factor) const {
  MIMatrix out = *this;
  for (double& v : out.values_) v *= factor;  // NaN stays NaN
  return out;
}

MIMatrix mi_matrix(const Dataset& dataset, const KsgConfig& config) {
  if (dataset.size() < 2) {
    throw Error(Errc::kInsufficientData, "MI matrix needs at least two sensors");
  }
  config.validate();
  MIMatrix matrix(dataset.sensor_ids());
  const auto series = dataset.series();
  std::uint64_t pair = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j, ++pair) {
      xs.clear();
      ys.clear();
      for (std::size_t t = 0; t < dataset.grid().n_slots(); ++t) {
        if (series[i].missing(t) || series[j].missing(t)) continue;
        xs.push_back(series[i][t]);
        ys.push_back(series[j][t]);
      }
      if (xs.size() < KsgConfig::kMinSamples) continue;
      KsgConfig pair_config = config;
      pair_config.seed = splitmix64(config.seed + pair);
      try {
        matrix.set(i, j, ksg_mi(xs, ys, pair_config), xs.size());
      } catch (const Error& e) {
        if (e.code() != Errc::kDegenerate) throw;
      }
    }
  }
  return matrix;
}

const Neighbour* NeighbourMap::find(const std::string& target) const {
  auto it = backup.find(target);
  return it == backup.end() ? nullptr : &it->second;
}

NeighbourMap top1_neighbours(const MIMatrix& matrix) {
  NeighbourMap map;
  const auto& ids = matrix.sensor_ids();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (!matrix.present(i, j)) continue;
      if (!best || matrix.at(i, j) > matrix.at(i, *best) ||
          (matrix.at(i, j) == matrix.at(i, *best) && ids[j] < ids[*best])) {
        best = j;
      }
    }
    if (best) {
      map.backup[ids[i]] = Neighbour{ids[*best], matrix.at(i, *best)};
    } else {
      map.unbacked.push_back(ids[i]);
    }
  }
  std::sort(map.unbacked.begin(), map.unbacked.end());
  return map;
}

void write_mi_matrix_csv(std::ostream& out, const MIMatrix& matrix,
                         const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "sensor_id";
  for (const auto& id : matrix.sensor_ids()) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.sensor_ids()[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out << ',' << (matrix.present(i, j) ? format_value(matrix.at(i, j)) : "");
    }
    out << '\n';
  }
}

MIMatrix read_mi_matrix_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty() || line.front() == '#') continue;
    header = detail::split_csv(line);
    break;
  }
  if (header.size() < 3) throw Error(Errc::kParse, "MI matrix CSV needs >= 2 sensors");
  MIMatrix matrix(std::vector<std::string>(header.begin() + 1, header.end()));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto cells = detail::split_csv(line);
    if (row >= matrix.size() || cells.size() != header.size() ||
        cells[0] != matrix.sensor_ids()[row]) {
      throw Error(Errc::kParse, "MI matrix CSV: malformed row " + std::to_string(row + 1));
    }
    for (std::size_t j = row + 1; j < matrix.size(); ++j) {
      if (cells[j + 1].empty()) continue;
      try {
        matrix.set(row, j, std::stod(cells[j + 1]), 0);
      } catch (const std::exception&) {
        throw Error(Errc::kParse, "MI matrix CSV: bad value '" + cells[j + 1] + "'");
      }
    }
    ++row;
  }
  if (row != matrix.size()) throw Error(Errc::kParse, "MI matrix CSV: missing rows");
  return matrix;
}

namespace {

struct Edge {
  std::size_t i, j;
  std::vector<std::string> top1_for;
};

std::vector<Edge> collect_edges(const MIMatrix& matrix, const NeighbourMap& neighbours) {
  std::vector<Edge> edges;
  const auto& ids = matrix.sensor_ids();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.size(); ++j) {
      if (!matrix.present(i, j)) continue;
      Edge e{i, j, {}};
      for (const std::string* who : {&ids[i], &ids[j]}) {
        const std::string& other = who == &ids[i] ? ids[j] : ids[i];
        const Neighbour* n = neighbours.find(*who);
        if (n != nullptr && n->sensor_id == other) e.top1_for.push_back(*who);
      }
      edges.push_back(std::move(e));
    }
  }
  return edges;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string graph_dot(const MIMatrix& matrix, const NeighbourMap& neighbours) {
  const auto edges = collect_edges(matrix, neighbours);
  double max_mi = 0.0;
  for (const auto& e : edges) max_mi = std::max(max_mi, matrix.at(e.i, e.j));
  const auto& ids = matrix.sensor_ids();
  std::ostringstream out;
  out << "graph mi_neighbourhood {\n";
  out << "  node [shape=ellipse];\n";
  for (const auto& id : ids) {
    out << "  \"" << id << '"';
    if (std::find(neighbours.unbacked.begin(), neighbours.unbacked.end(), id) !=
        neighbours.unbacked.end()) {
      out << " [style=dashed]";
    }
    out << ";\n";
  }
  for (const auto& e : edges) {
    const double mi = matrix.at(e.i, e.j);
    const double width = max_mi > 0.0 ? 0.25 + 4.75 * std::max(0.0, mi) / max_mi : 1.0;
    out << "  \"" << ids[e.i] << "\" -- \"" << ids[e.j] << "\" [weight="
        << fixed(mi) << ", penwidth=" << fixed(width, 3) << ", label=\""
        << fixed(mi, 3) << '"';
    if (!e.top1_for.empty()) {
      out << ", style=bold, color=\"#d95f02\", top1=\"";
      for (std::size_t k = 0; k < e.top1_for.size(); ++k) {
        out << (k ? "," : "") << e.top1_for[k];
      }
      out << '"';
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graph_json(const MIMatrix& matrix, const NeighbourMap& neighbours) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const auto& id : matrix.sensor_ids()) {
    ordered_json node{{"id", id}};
    if (const Neighbour* n = neighbours.find(id)) {
      node["backup"] = n->sensor_id;
      node["backup_mi"] = n->mi;
    } else {
      node["backup"] = nullptr;
    }
    doc["nodes"].push_back(std::move(node));
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : collect_edges(matrix, neighbours)) {
    doc["edges"].push_back(ordered_json{{"source", matrix.sensor_ids()[e.i]},
                                        {"target", matrix.sensor_ids()[e.j]},
                                        {"mi", matrix.at(e.i, e.j)},
                                        {"n_samples", matrix.samples(e.i, e.j)},
                                        {"top1_for", e.top1_for}});
  }
  doc["unbacked"] = neighbours.unbacked;
  return doc.dump(2) + "\n";
}

void export_graph(const MIMatrix& matrix, const NeighbourMap& neighbours,
                  const std::string& base_path) {
  write_file_atomic(base_path + ".dot", graph_dot(matrix, neighbours));
  write_file_atomic(base_path + ".json", graph_json(matrix, neighbours));
}

}  // namespace soilcast
