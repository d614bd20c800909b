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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/serialize.hpp"

namespace kdlab {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Command { EXACT, SWEEP, CIRCUIT, BENCH };
Command parse_command(std::string_view name);
std::string_view command_name(Command c);

enum class OutputFormat { CSV, JSON };
OutputFormat parse_format(std::string_view name);
std::string_view format_name(OutputFormat f);

/// Failure with a machine-readable category ("config", "setting",
/// "unsupported_setting", "io", "usage", "runtime").
class CliError : public std::runtime_error {
 public:
  CliError(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}
  const std::string& category() const { return category_; }

 private:
  std::string category_;
};

/// Fully resolved run configuration. JSON schema:
///
///   {"command": "exact|sweep|circuit|bench",
///    "model": {"delta", "omega", "couplings"},
///    "setting": "inferred" | {"site_a", "a", "site_b", "b", "initial"},
///    "taus": [...],
///    "sweep": {"omega_grid", "tau_min", "tau_max", "tau_steps", "n_settings",
///              "measure", "resample_per_tau"},
///    "circuit": {"shots": N | "exact", "n_trotter", "noise", "noise_scale",
///                "n_trajectories"},
///    "seed": U64,
///    "output": {"path", "format": "csv|json"}}
///
/// "noise" is a preset name or a custom model object. A manifest written by
/// a previous run is accepted as well.
struct RunConfig {
  Command command = Command::EXACT;
  ModelParams model{1.0, 1.5, {1.0, 1.0}};
  /// Empty selects the inferred setting.
  std::optional<MeasurementSetting> setting;
  std::vector<double> taus{0.0, 2.21, 3.66};
  SweepConfig sweep;
  /// Shots per circuit; empty means exact probabilities.
  std::optional<std::uint64_t> shots = 10000;
  int n_trotter = 5;
  std::string noise = "none";
  std::optional<NoiseModel> custom_noise;
  double noise_scale = 1.0;
  int n_trajectories = 200;
  std::uint64_t seed = 1;
  /// Output directory; empty writes to stdout.
  std::string out;
  OutputFormat format = OutputFormat::CSV;

  /// Throws CliError("config" or "setting").
  void validate() const;
  MeasurementSetting resolved_setting(double tau) const;
  /// Empty for "none".
  std::optional<NoiseModel> noise_model() const;
};

RunConfig config_from_json(const Json& j, RunConfig base = {});
Json config_to_json(const RunConfig& c);
/// Resolved config plus seed and artifact version.
Json manifest(const RunConfig& c);

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  std::vector<OutputFile> files;
  /// Human-readable digest printed to stdout.
  std::string summary;
};

/// q, p, modification terms and all measures at every configured tau.
RunResult run_exact(const RunConfig& c);
/// Heatmap, designated-setting trace and CDFs at every configured tau.
RunResult run_sweep(const RunConfig& c);
/// Circuit estimates with standard errors, exact references, deviations in
/// standard-error units and RMSE.
RunResult run_circuit(const RunConfig& c);
/// N_AS and RMSE for theory, the noiseless circuit and both noisy presets at
/// tau = 0, 2.21, 3.66, next to the published reference values.
RunResult run_bench(const RunConfig& c);
/// Dispatches on c.command and appends manifest.json.
RunResult run(const RunConfig& c);

/// Writes every file into `dir` (created if missing). Throws CliError("io").
void write_outputs(const RunResult& r, const std::string& dir);

/// error: category=<category> message="<escaped single-line message>"
std::string error_line(std::string_view category, std::string_view message);

}  // namespace kdlab
