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

#pragma once

#include <cstdint>
#include <vector>

#include "kdlab/kdq.hpp"
#include "kdlab/model.hpp"
#include "kdlab/rng.hpp"

namespace kdlab {

struct SweepConfig {
  std::vector<double> omega_grid{0.0, 0.5, 1.0, 1.5};
  double tau_min = 0.0;
  double tau_max = 20.0;
  int tau_steps = 401;
  int n_settings = 5000;
  std::uint64_t seed = 1;
  Measure measure = Measure::N_AS;
  /// Draw fresh settings at every tau instead of following fixed settings
  /// through time.
  bool resample_per_tau = false;

  void validate() const;
  std::vector<double> tau_grid() const;
};

/// Log-spaced histogram bins on [lo, hi) plus an underflow bin at index 0.
/// Values at or above `hi` land in the last bin.
struct LogBins {
  static constexpr int kBins = 100;
  static constexpr double kLo = 1e-6;
  static constexpr double kHi = 10.0;

  /// kBins + 2 edges; edge 0 is 0 (underflow lower bound).
  static std::vector<double> edges();
  static int index(double value);
};

/// Measure values for every (setting, tau) pair at one omega.
struct MeasureGrid {
  int n_settings = 0;
  int n_tau = 0;
  std::vector<double> values;  // row-major, setting-major

  double at(int setting, int tau_index) const { return values[static_cast<std::size_t>(setting) * n_tau + tau_index]; }
  double max() const;
};

struct HeatmapPanel {
  double omega = 0.0;
  /// counts[tau_index][bin], bin 0 = underflow.
  std::vector<std::vector<std::uint64_t>> counts;
  /// Measure of the designated (experiment) setting along the tau grid; empty if
  /// the environment has fewer than two qubits.
  std::vector<double> designated_trace;
};

struct HeatmapDataset {
  std::vector<double> tau;
  std::vector<double> bin_edges;
  std::vector<HeatmapPanel> panels;
};

struct CdfPanel {
  double omega = 0.0;
  std::vector<double> values;    // ascending
  std::vector<double> cum_frac;  // (k + 1) / n
};

struct CdfDataset {
  double tau = 0.0;
  std::vector<CdfPanel> panels;
};

struct PanelSummary {
  double omega = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

/// Haar-random qubit ket from two independent standard complex Gaussians.
QubitKet haar_random_qubit_state(CounterRng& rng);

/// Haar-random A_0 on E1, B_0 on E2 and a Haar-random product initial state
/// (time_a left at 0). Draw order: A ket, B ket, then one ket per qubit.
MeasurementSetting random_setting(CounterRng& rng, const ModelParams& params);

/// Setting number `index` of the sweep stream rooted at `seed`.
MeasurementSetting sweep_setting(std::uint64_t seed, int index, const ModelParams& params);

ModelParams with_omega(const ModelParams& base, double omega);

MeasureGrid evaluate_grid(const SweepConfig& config, const ModelParams& base, double omega);
HeatmapDataset sweep_heatmap(const SweepConfig& config, const ModelParams& base);
CdfDataset sweep_cdf(const SweepConfig& config, const ModelParams& base, double tau);
PanelSummary summarize(const CdfPanel& panel);

}  // namespace kdlab
