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

#include "soilcast/iforest.hpp"

#include <algorithm>
#include <cmath>

#include "soilcast/error.hpp"
#include "soilcast/stats.hpp"

namespace soilcast {

void IForestConfig::validate() const {
  if (n_trees == 0) throw Error(Errc::kInvalidArgument, "iforest: n_trees must be >= 1");
  if (subsample_size < 2) {
    throw Error(Errc::kInvalidArgument, "iforest: subsample_size must be >= 2");
  }
  if (!(contamination > 0.0 && contamination < 0.5)) {
    throw Error(Errc::kInvalidArgument, "iforest: contamination must be in (0, 0.5)");
  }
}

std::vector<EmbeddedPoint> embed_level_jump(const SensorSeries& series) {
  std::vector<EmbeddedPoint> out;
  out.reserve(series.size());
  for (std::size_t t = 1; t < series.size(); ++t) {
    if (series.missing(t) || series.missing(t - 1)) continue;
    out.push_back({series[t], series[t] - series[t - 1], t});
  }
  return out;
}

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  constexpr double kEulerGamma = 0.5772156649015329;
  const double m = static_cast<double>(n - 1);
  return 2.0 * (std::log(m) + kEulerGamma) - 2.0 * m / static_cast<double>(n);
}

void IForestModel::grow(Tree& tree, std::vector<EmbeddedPoint>& pts,
                        std::size_t lo, std::size_t hi, std::size_t depth,
                        std::size_t max_depth, Rng& rng) {
  const auto index = static_cast<std::int32_t>(tree.size());
  tree.push_back(Node{});
  tree[index].size = static_cast<std::uint32_t>(hi - lo);
  if (hi - lo <= 1 || depth >= max_depth) return;

  double lo_v[2] = {pts[lo].level, pts[lo].jump};
  double hi_v[2] = {lo_v[0], lo_v[1]};
  for (std::size_t i = lo + 1; i < hi; ++i) {
    lo_v[0] = std::min(lo_v[0], pts[i].level);
    hi_v[0] = std::max(hi_v[0], pts[i].level);
    lo_v[1] = std::min(lo_v[1], pts[i].jump);
    hi_v[1] = std::max(hi_v[1], pts[i].jump);
  }
  int candidates[2];
  int n_candidates = 0;
  for (int f = 0; f < 2; ++f) {
    if (hi_v[f] > lo_v[f]) candidates[n_candidates++] = f;
  }
  if (n_candidates == 0) return;  // all points identical

  const int feature =
      n_candidates == 1
          ? candidates[0]
          : candidates[std::uniform_int_distribution<int>(0, n_candidates - 1)(rng)];
  double split = std::uniform_real_distribution<double>(lo_v[feature], hi_v[feature])(rng);
  if (split <= lo_v[feature]) split = std::nextafter(lo_v[feature], hi_v[feature]);

  auto value = [feature](const EmbeddedPoint& p) {
    return feature == 0 ? p.level : p.jump;
  };
  auto mid_it = std::partition(pts.begin() + static_cast<std::ptrdiff_t>(lo),
                               pts.begin() + static_cast<std::ptrdiff_t>(hi),
                               [&](const EmbeddedPoint& p) { return value(p) < split; });
  const auto mid = static_cast<std::size_t>(mid_it - pts.begin());

  tree[index].feature = feature;
  tree[index].split = split;
  tree[index].left = static_cast<std::int32_t>(tree.size());
  grow(tree, pts, lo, mid, depth + 1, max_depth, rng);
  tree[index].right = static_cast<std::int32_t>(tree.size());
  grow(tree, pts, mid, hi, depth + 1, max_depth, rng);
}

IForestModel IForestModel::fit(std::span<const EmbeddedPoint> training,
                               const IForestConfig& config, Rng& rng) {
  config.validate();
  if (training.size() < config.min_samples) {
    throw Error(Errc::kInsufficientData,
                "isolation forest needs >= " + std::to_string(config.min_samples) +
                    " samples, got " + std::to_string(training.size()) +
                    "; fall back to rule-only screening");
  }
  const bool identical = std::all_of(training.begin(), training.end(), [&](const auto& p) {
    return p.level == training.front().level && p.jump == training.front().jump;
  });
  if (identical) {
    throw Error(Errc::kDegenerate,
                "isolation forest: constant training data, detector disabled");
  }

  IForestModel model;
  model.contamination_ = config.contamination;
  model.subsample_size_ = std::min(config.subsample_size, training.size());
  model.normalizer_ = average_path_length(model.subsample_size_);
  const auto max_depth = static_cast<std::size_t>(
      std::ceil(std::log2(static_cast<double>(model.subsample_size_))));

  std::vector<std::size_t> order(training.size());
  std::vector<EmbeddedPoint> sample(model.subsample_size_);
  model.trees_.resize(config.n_trees);
  for (auto& tree : model.trees_) {
    // Partial Fisher-Yates: the first subsample_size entries are a uniform
    // draw without replacement.
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < model.subsample_size_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
      std::swap(order[i], order[pick(rng)]);
      sample[i] = training[order[i]];
    }
    tree.reserve(2 * model.subsample_size_);
    grow(tree, sample, 0, sample.size(), 0, max_depth, rng);
  }

  std::vector<double> scores;
  scores.reserve(training.size());
  for (const auto& p : training) scores.push_back(model.score(p));
  model.score_threshold_ = quantile_linear(scores, 1.0 - config.contamination);
  return model;
}

double IForestModel::mean_path_length(double level, double jump) const {
  double total = 0.0;
  for (const auto& tree : trees_) {
    std::size_t node = 0;
    std::size_t depth = 0;
    while (tree[node].feature >= 0) {
      const double v = tree[node].feature == 0 ? level : jump;
      node = static_cast<std::size_t>(v < tree[node].split ? tree[node].left
                                                           : tree[node].right);
      ++depth;
    }
    total += static_cast<double>(depth) + average_path_length(tree[node].size);
  }
  return total / static_cast<double>(trees_.size());
}

double IForestModel::score(double level, double jump) const {
  return std::exp2(-mean_path_length(level, jump) / normalizer_);
}

}  // namespace soilcast
