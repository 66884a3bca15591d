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

// Isolation forest over a two-dimensional embedding of a (differenced)
// series: each sample is the pair (x_t, x_t - x_{t-1}).

#ifndef SOILCAST_IFOREST_HPP_
#define SOILCAST_IFOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "soilcast/random.hpp"
#include "soilcast/series.hpp"

namespace soilcast {

struct IForestConfig {
  std::size_t n_trees = 200;
  std::size_t subsample_size = 256;
  double contamination = 0.05;
  std::size_t min_samples = 64;

  void validate() const;
};

struct EmbeddedPoint {
  double level = 0.0;
  double jump = 0.0;
  std::size_t slot = 0;
};

// Pairs for every slot t >= 1 where x_t and x_{t-1} are both present.
std::vector<EmbeddedPoint> embed_level_jump(const SensorSeries& series);

// Average unsuccessful-search path length of a binary search tree with n
// nodes; normalizes isolation depths.
double average_path_length(std::size_t n);

class IForestModel {
 public:
  // Throws Errc::kInsufficientData below config.min_samples points and
  // Errc::kDegenerate when every point is identical (no split possible).
  static IForestModel fit(std::span<const EmbeddedPoint> training,
                          const IForestConfig& config, Rng& rng);

  // s(x) = 2^(-E[h(x)] / c(psi)), in (0, 1]; larger is more anomalous.
  double score(double level, double jump) const;
  double score(const EmbeddedPoint& p) const { return score(p.level, p.jump); }

  double mean_path_length(double level, double jump) const;

  // (1 - contamination) quantile of the training scores.
  double score_threshold() const { return score_threshold_; }
  double contamination() const { return contamination_; }
  std::size_t n_trees() const { return trees_.size(); }
  std::size_t subsample_size() const { return subsample_size_; }

 private:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf; 0 = level, 1 = jump
    double split = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t size = 0;  // training points reaching the node
  };
  using Tree = std::vector<Node>;

  static void grow(Tree& tree, std::vector<EmbeddedPoint>& pts, std::size_t lo,
                   std::size_t hi, std::size_t depth, std::size_t max_depth,
                   Rng& rng);

  std::vector<Tree> trees_;
  std::size_t subsample_size_ = 0;
  double normalizer_ = 1.0;
  double score_threshold_ = 1.0;
  double contamination_ = 0.05;
};

}  // namespace soilcast

#endif  // SOILCAST_IFOREST_HPP_
