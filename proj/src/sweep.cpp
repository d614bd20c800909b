// Copyright 2026 The kdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kdlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdlab {

void SweepConfig::validate() const {
  if (omega_grid.empty()) throw std::invalid_argument("sweep: omega_grid is empty");
  for (double w : omega_grid) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("sweep: omega values must be finite and >= 0");
  }
  if (!std::isfinite(tau_min) || tau_min < 0.0) throw std::invalid_argument("sweep: tau_min must be >= 0");
  if (!std::isfinite(tau_max) || tau_max <= tau_min) throw std::invalid_argument("sweep: tau_max must exceed tau_min");
  if (tau_steps < 2) throw std::invalid_argument("sweep: tau_steps must be >= 2");
  if (n_settings < 1) throw std::invalid_argument("sweep: n_settings must be >= 1");
}

std::vector<double> SweepConfig::tau_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(tau_steps));
  const double step = (tau_max - tau_min) / (tau_steps - 1);
  for (int k = 0; k < tau_steps; ++k) grid[k] = tau_min + k * step;
  grid.back() = tau_max;
  return grid;
}

std::vector<double> LogBins::edges() {
  std::vector<double> e;
  e.reserve(kBins + 2);
  e.push_back(0.0);
  const double lo = std::log10(kLo);
  const double width = (std::log10(kHi) - lo) / kBins;
  for (int k = 0; k <= kBins; ++k) e.push_back(std::pow(10.0, lo + k * width));
  return e;
}

int LogBins::index(double value) {
  if (!(value >= kLo)) return 0;
  const double lo = std::log10(kLo);
  const double width = (std::log10(kHi) - lo) / kBins;
  const int k = static_cast<int>(std::floor((std::log10(value) - lo) / width));
  return 1 + std::clamp(k, 0, kBins - 1);
}

double MeasureGrid::max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }

QubitKet haar_random_qubit_state(CounterRng& rng) {
  const double a = rng.normal();
  const double b = rng.normal();
  const double c = rng.normal();
  const double d = rng.normal();
  QubitKet k(Complex(a, b), Complex(c, d));
  return k / k.norm();
}

MeasurementSetting random_setting(CounterRng& rng, const ModelParams& params) {
  params.validate();
  if (params.n_env() < 2) throw std::invalid_argument("random_setting: needs at least two environment qubits");
  MeasurementSetting s;
  s.site_a = 1;
  s.a = ProjectorPair(haar_random_qubit_state(rng));
  s.site_b = 2;
  s.b = ProjectorPair(haar_random_qubit_state(rng));
  s.initial.reserve(static_cast<std::size_t>(params.n_qubits()));
  for (int q = 0; q < params.n_qubits(); ++q) s.initial.push_back(haar_random_qubit_state(rng));
  return s;
}

MeasurementSetting sweep_setting(std::uint64_t seed, int index, const ModelParams& params) {
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  return random_setting(rng, params);
}

ModelParams with_omega(const ModelParams& base, double omega) {
  ModelParams p = base;
  p.omega = omega;
  return p;
}

MeasureGrid evaluate_grid(const SweepConfig& config, const ModelParams& base, double omega) {
  config.validate();
  const ModelParams params = with_omega(base, omega);
  const SpectralKdEvaluator eval(params);
  const std::vector<double> taus = config.tau_grid();
  MeasureGrid grid;
  grid.n_settings = config.n_settings;
  grid.n_tau = config.tau_steps;
  grid.values.resize(static_cast<std::size_t>(grid.n_settings) * grid.n_tau);

#pragma omp parallel for schedule(static)
  for (int s = 0; s < config.n_settings; ++s) {
    double* row = grid.values.data() + static_cast<std::size_t>(s) * grid.n_tau;
    if (!config.resample_per_tau) {
      const auto prepared = eval.prepare(sweep_setting(config.seed, s, params));
      for (int t = 0; t < grid.n_tau; ++t) row[t] = eval.measure_at(prepared, taus[t], config.measure);
    } else {
      const CounterRng root(config.seed, static_cast<std::uint64_t>(s));
      for (int t = 0; t < grid.n_tau; ++t) {
        CounterRng rng = root.split(static_cast<std::uint64_t>(t));
        const auto prepared = eval.prepare(random_setting(rng, params));
        row[t] = eval.measure_at(prepared, taus[t], config.measure);
      }
    }
  }
  return grid;
}

HeatmapDataset sweep_heatmap(const SweepConfig& config, const ModelParams& base) {
  config.validate();
  HeatmapDataset out;
  out.tau = config.tau_grid();
  out.bin_edges = LogBins::edges();
  for (double omega : config.omega_grid) {
    const MeasureGrid grid = evaluate_grid(config, base, omega);
    HeatmapPanel panel;
    panel.omega = omega;
    panel.counts.assign(out.tau.size(), std::vector<std::uint64_t>(LogBins::kBins + 1, 0));
    for (int s = 0; s < grid.n_settings; ++s) {
      for (int t = 0; t < grid.n_tau; ++t) ++panel.counts[t][LogBins::index(grid.at(s, t))];
    }
    if (base.n_env() >= 2) {
      const ModelParams params = with_omega(base, omega);
      const SpectralKdEvaluator eval(params);
      const auto prepared = eval.prepare(experiment_setting(0.0, base.n_env()));
      panel.designated_trace.reserve(out.tau.size());
      for (double tau : out.tau) panel.designated_trace.push_back(eval.measure_at(prepared, tau, config.measure));
    }
    out.panels.push_back(std::move(panel));
  }
  return out;
}

CdfDataset sweep_cdf(const SweepConfig& config, const ModelParams& base, double tau) {
  config.validate();
  if (!std::isfinite(tau) || tau < 0.0) throw std::invalid_argument("sweep_cdf: tau must be finite and >= 0");
  CdfDataset out;
  out.tau = tau;
  for (double omega : config.omega_grid) {
    const ModelParams params = with_omega(base, omega);
    const SpectralKdEvaluator eval(params);
    CdfPanel panel;
    panel.omega = omega;
    panel.values.resize(static_cast<std::size_t>(config.n_settings));
#pragma omp parallel for schedule(static)
    for (int s = 0; s < config.n_settings; ++s) {
      const auto prepared = eval.prepare(sweep_setting(config.seed, s, params));
      panel.values[s] = eval.measure_at(prepared, tau, config.measure);
    }
    std::sort(panel.values.begin(), panel.values.end());
    const auto n = static_cast<double>(panel.values.size());
    panel.cum_frac.resize(panel.values.size());
    for (std::size_t k = 0; k < panel.values.size(); ++k) panel.cum_frac[k] = static_cast<double>(k + 1) / n;
    out.panels.push_back(std::move(panel));
  }
  return out;
}

PanelSummary summarize(const CdfPanel& panel) {
  PanelSummary s;
  s.omega = panel.omega;
  if (panel.values.empty()) return s;
  const auto& v = panel.values;
  s.min = v.front();
  s.max = v.back();
  const std::size_t n = v.size();
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return s;
}

}  // namespace kdlab
