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

#include "soilcast/virtual_sensor.hpp"

#include <algorithm>
#include <cmath>

#include "soilcast/error.hpp"
#include "soilcast/random.hpp"
#include "soilcast/simd/kernels.hpp"

namespace soilcast {
namespace {

constexpr double kVwcMin = 0.0;
constexpr double kVwcMax = 100.0;

// Inputs for slot t: neighbour[t], neighbour[t-1], ..., neighbour[t-lags].
bool gather_inputs(const SensorSeries& neighbour, std::size_t t, std::size_t lags,
                   std::vector<double>& out) {
  out.clear();
  if (t < lags) return false;
  for (std::size_t l = 0; l <= lags; ++l) {
    const double v = neighbour[t - l];
    if (is_missing(v)) return false;
    out.push_back(v);
  }
  return true;
}

}  // namespace

void MlpTrainingConfig::validate() const {
  if (epochs == 0) throw Error(Errc::kInvalidArgument, "mlp: epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(Errc::kInvalidArgument, "mlp: learning_rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw Error(Errc::kInvalidArgument, "mlp: momentum must be in [0, 1)");
  }
  if (!(min_target_coverage > 0.0 && min_target_coverage <= 1.0)) {
    throw Error(Errc::kInvalidArgument, "mlp: min_target_coverage must be in (0, 1]");
  }
  if (train_hours < WindowSpec::kMinHours || train_hours > WindowSpec::kMaxHours) {
    throw Error(Errc::kInvalidArgument, "mlp: train_hours must be in [200, 900]");
  }
}

double MlpBackup::forward_scaled(std::span<const double> scaled_inputs) const {
  double y = output_bias;
  for (std::size_t h = 0; h < kHiddenUnits; ++h) {
    double z = 0.0;
    for (std::size_t d = 0; d < n_inputs; ++d) {
      z = z + hidden_weights[h * n_inputs + d] * scaled_inputs[d];
    }
    z = 1.0 * z + hidden_bias[h];
    if (z > 0.0) y = y + output_weights[h] * z;
  }
  return y;
}

MlpBackup train_backup(const SensorSeries& neighbour, const SensorSeries& target,
                       const WindowSpec& window, std::uint64_t seed,
                       const MlpTrainingConfig& config, const simd::KernelTable& kernels) {
  config.validate();
  if (!(neighbour.grid() == target.grid())) {
    throw Error(Errc::kInvalidArgument, "backup: neighbour and target grids differ");
  }
  if (neighbour.sensor_id() == target.sensor_id()) {
    throw Error(Errc::kInvalidArgument, "backup: a sensor cannot back itself up");
  }
  window.validate(target.size());

  std::size_t target_present = 0;
  for (std::size_t t = window.begin_slot(); t < window.end_slot; ++t) {
    if (!target.missing(t)) ++target_present;
  }
  const double coverage =
      static_cast<double>(target_present) / static_cast<double>(window.length_hours);
  if (coverage < config.min_target_coverage) {
    throw Error(Errc::kInsufficientData,
                "backup: target " + target.sensor_id() + " covers only " +
                    std::to_string(coverage) + " of the training window");
  }

  const std::size_t d_in = config.input_lags + 1;
  std::vector<std::vector<double>> x_raw(d_in);
  std::vector<double> y_raw;
  std::vector<double> inputs;
  for (std::size_t t = window.begin_slot(); t < window.end_slot; ++t) {
    if (target.missing(t) || !gather_inputs(neighbour, t, config.input_lags, inputs)) continue;
    for (std::size_t d = 0; d < d_in; ++d) x_raw[d].push_back(inputs[d]);
    y_raw.push_back(target[t]);
  }
  const std::size_t n = y_raw.size();
  if (n < config.min_pairs) {
    throw Error(Errc::kInsufficientData,
                "backup: only " + std::to_string(n) + " joint samples");
  }

  MlpBackup model;
  model.target_id = target.sensor_id();
  model.neighbour_id = neighbour.sensor_id();
  model.trained_on = window;
  model.n_inputs = d_in;
  {
    auto [lo, hi] = std::minmax_element(x_raw[0].begin(), x_raw[0].end());
    for (std::size_t d = 1; d < d_in; ++d) {
      auto [l2, h2] = std::minmax_element(x_raw[d].begin(), x_raw[d].end());
      if (*l2 < *lo) lo = l2;
      if (*h2 > *hi) hi = h2;
    }
    auto [ylo, yhi] = std::minmax_element(y_raw.begin(), y_raw.end());
    model.scaler = {*lo, *hi, *ylo, *yhi};
  }
  if (!(model.scaler.in_max > model.scaler.in_min)) {
    throw Error(Errc::kDegenerate, "backup: neighbour " + neighbour.sensor_id() +
                                       " is constant over the training window");
  }
  if (!(model.scaler.out_max > model.scaler.out_min)) {
    throw Error(Errc::kDegenerate, "backup: target " + target.sensor_id() +
                                       " is constant over the training window");
  }

  // Column-major scaled design.
  std::vector<double> x(d_in * n), y(n);
  for (std::size_t d = 0; d < d_in; ++d) {
    for (std::size_t r = 0; r < n; ++r) x[d * n + r] = model.scaler.scale_in(x_raw[d][r]);
  }
  const double out_span = model.scaler.out_max - model.scaler.out_min;
  for (std::size_t r = 0; r < n; ++r) y[r] = (y_raw[r] - model.scaler.out_min) / out_span;

  Rng rng = make_stream(seed, "mlp");
  std::uniform_real_distribution<double> init(-config.init_range, config.init_range);
  model.hidden_weights.resize(kHiddenUnits * d_in);
  for (auto& w : model.hidden_weights) w = init(rng);
  for (auto& b : model.hidden_bias) b = init(rng);
  for (auto& w : model.output_weights) w = init(rng);
  model.output_bias = init(rng);

  const auto& k = kernels;
  std::vector<double> z(n), hidden(kHiddenUnits * n), pred(n), err(n), g(n);
  std::vector<double> vel_w(model.hidden_weights.size(), 0.0);
  std::array<double, kHiddenUnits> vel_b{}, vel_v{};
  double vel_c = 0.0;
  std::vector<double> grad_w(model.hidden_weights.size());
  const double scale = 2.0 / static_cast<double>(n);

  auto forward = [&] {
    std::fill(pred.begin(), pred.end(), model.output_bias);
    for (std::size_t h = 0; h < kHiddenUnits; ++h) {
      std::fill(z.begin(), z.end(), 0.0);
      for (std::size_t d = 0; d < d_in; ++d) {
        k.axpy(model.hidden_weights[h * d_in + d], x.data() + d * n, n, z.data());
      }
      double* hcol = hidden.data() + h * n;
      k.relu_affine(z.data(), n, 1.0, model.hidden_bias[h], hcol);
      k.axpy(model.output_weights[h], hcol, n, pred.data());
    }
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    forward();
    double grad_c = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      err[r] = pred[r] - y[r];
      grad_c += err[r];
    }
    grad_c *= scale;
    std::array<double, kHiddenUnits> grad_v{}, grad_b{};
    for (std::size_t h = 0; h < kHiddenUnits; ++h) {
      const double* hcol = hidden.data() + h * n;
      const double v = model.output_weights[h];
      double gv = 0.0, gb = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        gv += err[r] * hcol[r];
        g[r] = hcol[r] > 0.0 ? err[r] * v : 0.0;
        gb += g[r];
      }
      grad_v[h] = gv * scale;
      grad_b[h] = gb * scale;
      for (std::size_t d = 0; d < d_in; ++d) {
        const double* xcol = x.data() + d * n;
        double gw = 0.0;
        for (std::size_t r = 0; r < n; ++r) gw += g[r] * xcol[r];
        grad_w[h * d_in + d] = gw * scale;
      }
    }
    const double mu = config.momentum, lr = config.learning_rate;
    for (std::size_t i = 0; i < model.hidden_weights.size(); ++i) {
      vel_w[i] = mu * vel_w[i] - lr * grad_w[i];
      model.hidden_weights[i] += vel_w[i];
    }
    for (std::size_t h = 0; h < kHiddenUnits; ++h) {
      vel_b[h] = mu * vel_b[h] - lr * grad_b[h];
      model.hidden_bias[h] += vel_b[h];
      vel_v[h] = mu * vel_v[h] - lr * grad_v[h];
      model.output_weights[h] += vel_v[h];
    }
    vel_c = mu * vel_c - lr * grad_c;
    model.output_bias += vel_c;
  }

  forward();
  double abs_err = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double v = std::clamp(model.scaler.unscale_out(pred[r]), kVwcMin, kVwcMax);
    abs_err += std::fabs(v - y_raw[r]);
  }
  model.training_mae = abs_err / static_cast<double>(n);
  for (double w : model.hidden_weights) {
    if (!std::isfinite(w)) throw Error(Errc::kDegenerate, "backup: training diverged");
  }
  return model;
}

double predict_backup(const MlpBackup& model, std::span<const double> inputs) {
  if (inputs.size() != model.n_inputs) {
    throw Error(Errc::kInvalidArgument, "backup: wrong number of inputs");
  }
  std::vector<double> scaled(inputs.size());
  for (std::size_t d = 0; d < inputs.size(); ++d) {
    if (is_missing(inputs[d])) return kMissing;
    scaled[d] = model.scaler.scale_in(inputs[d]);
  }
  return std::clamp(model.scaler.unscale_out(model.forward_scaled(scaled)), kVwcMin, kVwcMax);
}

double predict_backup(const MlpBackup& model, double neighbour_value) {
  const double in[1] = {neighbour_value};
  return predict_backup(model, std::span<const double>(in, 1));
}

std::vector<double> predict_series(const MlpBackup& model, const SensorSeries& neighbour,
                                   std::size_t first, std::size_t last) {
  std::vector<double> out;
  std::vector<double> inputs;
  const std::size_t lags = model.n_inputs - 1;
  for (std::size_t t = first; t < last && t < neighbour.size(); ++t) {
    out.push_back(gather_inputs(neighbour, t, lags, inputs) ? predict_backup(model, inputs)
                                                            : kMissing);
  }
  return out;
}

std::string_view event_name(VirtualEventKind kind) {
  switch (kind) {
    case VirtualEventKind::kActivated:
      return "activated";
    case VirtualEventKind::kRefreshed:
      return "refreshed";
    case VirtualEventKind::kDeactivated:
      return "deactivated";
    case VirtualEventKind::kUnbacked:
      return "unbacked";
  }
  return "unknown";
}

namespace {

WindowSpec pre_fault_window(std::size_t activated_at, const MlpTrainingConfig& config) {
  return WindowSpec{std::min(config.train_hours, activated_at), activated_at};
}

VirtualSensorUpdate mark_unbacked(VirtualSensorState state, std::size_t slot,
                                  std::string why) {
  state.active = true;
  state.unbacked = true;
  state.model.reset();
  VirtualSensorUpdate update{std::move(state), {}};
  update.events.push_back({VirtualEventKind::kUnbacked, update.state.target_id,
                           update.state.neighbour_id, slot, std::move(why)});
  return update;
}

}  // namespace

VirtualSensorUpdate activate_virtual_sensor(const Dataset& dataset,
                                            const std::string& target,
                                            const std::string& neighbour,
                                            std::size_t activated_at,
                                            std::size_t day_slot,
                                            const std::set<std::string>& unavailable,
                                            std::uint64_t seed,
                                            const MlpTrainingConfig& config) {
  VirtualSensorState state;
  state.target_id = target;
  state.neighbour_id = neighbour;
  state.activated_at = activated_at;
  state.last_refresh = day_slot;
  if (neighbour.empty() || neighbour == target) {
    return mark_unbacked(std::move(state), day_slot, "escalation: no backup neighbour");
  }
  if (unavailable.contains(neighbour)) {
    return mark_unbacked(std::move(state), day_slot,
                         "escalation: neighbour " + neighbour + " is itself faulty or virtual");
  }
  try {
    state.model = train_backup(dataset.at(neighbour), dataset.at(target),
                               pre_fault_window(activated_at, config), seed, config);
  } catch (const Error& e) {
    return mark_unbacked(std::move(state), day_slot,
                         std::string("escalation: backup training failed: ") + e.what());
  }
  state.active = true;
  VirtualSensorUpdate update{std::move(state), {}};
  update.events.push_back({VirtualEventKind::kActivated, target, neighbour, activated_at,
                           "training MAE " + format_value(update.state.model->training_mae)});
  return update;
}

VirtualSensorUpdate refresh_daily(const VirtualSensorState& state, const Dataset& dataset,
                                  std::size_t day_slot,
                                  const std::set<std::string>& unavailable,
                                  const RuleConfig& rules, std::uint64_t seed,
                                  const MlpTrainingConfig& config) {
  if (!state.active) {
    throw Error(Errc::kInvalidArgument, "refresh_daily on an inactive virtual sensor");
  }
  const SensorSeries& target = dataset.at(state.target_id);
  const std::size_t span = rules.stuck_span_hours;
  if (day_slot >= state.activated_at + span && day_slot <= target.size()) {
    const SensorSeries recent = slice_slots(target, day_slot - span, span);
    if (recent.missing_count() == 0 && !screen(recent, rules).faulty()) {
      VirtualSensorUpdate update{state, {}};
      update.state.active = false;
      update.state.unbacked = false;
      update.state.last_refresh = day_slot;
      update.events.push_back({VirtualEventKind::kDeactivated, state.target_id,
                               state.neighbour_id, day_slot, "target restored"});
      return update;
    }
  }
  if (unavailable.contains(state.neighbour_id)) {
    VirtualSensorState next = state;
    next.last_refresh = day_slot;
    return mark_unbacked(std::move(next), day_slot,
                         "escalation: neighbour " + state.neighbour_id +
                             " failed during backup; no chaining");
  }
  VirtualSensorUpdate update =
      activate_virtual_sensor(dataset, state.target_id, state.neighbour_id,
                              state.activated_at, day_slot, unavailable, seed, config);
  if (update.state.unbacked) return update;
  update.events.clear();
  update.events.push_back({VirtualEventKind::kRefreshed, state.target_id, state.neighbour_id,
                           day_slot, "retrained on frozen pre-fault window"});
  return update;
}

OutageReport simulate_outage(const Dataset& dataset, const std::string& target,
                             const std::string& neighbour, std::size_t outage_start,
                             std::size_t outage_hours, std::uint64_t seed,
                             const MlpTrainingConfig& config) {
  if (target == neighbour) {
    throw Error(Errc::kInvalidArgument, "backup-sim: neighbour must differ from target");
  }
  const SensorSeries& truth = dataset.at(target);
  const SensorSeries& nb = dataset.at(neighbour);
  if (outage_start + outage_hours > truth.size()) {
    throw Error(Errc::kInvalidArgument, "backup-sim: outage window exceeds the dataset");
  }
  OutageReport report;
  report.target_id = target;
  report.neighbour_id = neighbour;
  report.outage_start = outage_start;
  report.outage_hours = outage_hours;
  report.trained_on = pre_fault_window(outage_start, config);
  if (outage_hours == 0) return report;

  std::vector<double> hidden(truth.values().begin(), truth.values().end());
  for (std::size_t t = outage_start; t < outage_start + outage_hours; ++t) hidden[t] = kMissing;
  const SensorSeries masked(target, truth.grid(), std::move(hidden));
  const MlpBackup model = train_backup(nb, masked, report.trained_on, seed, config);
  report.training_mae = model.training_mae;

  double last_seen = kMissing;
  for (std::size_t t = outage_start; t-- > 0;) {
    if (!masked.missing(t)) {
      last_seen = masked[t];
      break;
    }
  }
  const auto backup = predict_series(model, nb, outage_start, outage_start + outage_hours);
  double sum_b = 0.0, sum_p = 0.0;
  std::size_t n_b = 0, n_p = 0;
  for (std::size_t h = 0; h < outage_hours; ++h) {
    const std::size_t t = outage_start + h;
    OutageRow row{t, nb[t], truth[t], backup[h], last_seen};
    if (!is_missing(row.truth) && !is_missing(row.backup)) {
      sum_b += std::fabs(row.backup - row.truth);
      ++n_b;
    }
    if (!is_missing(row.truth) && !is_missing(row.persistence)) {
      sum_p += std::fabs(row.persistence - row.truth);
      ++n_p;
    }
    report.rows.push_back(row);
  }
  if (n_b > 0) report.backup_mae = sum_b / static_cast<double>(n_b);
  if (n_p > 0) report.persistence_mae = sum_p / static_cast<double>(n_p);
  return report;
}

}  // namespace soilcast
