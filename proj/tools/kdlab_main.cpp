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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kdlab/circuit.hpp"
#include "kdlab/cli.hpp"

namespace {

std::vector<double> parse_taus(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw kdlab::CliError("usage", "--tau: '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw kdlab::CliError("usage", "--tau: empty list");
  return out;
}

int fail(std::string_view category, std::string_view message) {
  std::cerr << kdlab::error_line(category, message) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kirkwood-Dirac quasiprobability laboratory"};
  app.set_version_flag("--version", std::string(kdlab::kVersion));
  app.require_subcommand(1);

  std::string config_path, tau_text, shots_text, noise, out, format;
  std::uint64_t seed = 0;
  double omega = 0.0;
  int trotter = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON run configuration (or a previous manifest.json)");
  auto* o_seed = app.add_option("--seed", seed, "Master seed");
  auto* o_omega = app.add_option("--omega", omega, "Transverse field; for sweep, the single panel value");
  auto* o_tau = app.add_option("--tau", tau_text, "Comma-separated tau values");
  auto* o_shots = app.add_option("--shots", shots_text, "Shots per circuit, or 'exact'");
  auto* o_trotter = app.add_option("--trotter", trotter, "Trotter steps");
  auto* o_noise = app.add_option("--noise", noise, "none, table4-ibm or table4-ionq");
  auto* o_out = app.add_option("--out", out, "Output directory (stdout when omitted)");
  auto* o_format = app.add_option("--format", format, "csv or json");

  const std::pair<const char*, const char*> subcommands[] = {
      {"exact", "Exact KD table, TPM and measures at each tau"},
      {"sweep", "Random-setting sweep: heatmap, trace and CDF"},
      {"circuit", "Cycle-test circuit estimate of the KD table"},
      {"bench", "Theory, noiseless and noisy rows at fixed tau"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    kdlab::RunConfig config;
    if (*o_config) {
      std::ifstream is(config_path);
      if (!is) throw kdlab::CliError("io", "cannot read config '" + config_path + "'");
      kdlab::Json j;
      try {
        j = kdlab::Json::parse(is);
      } catch (const std::exception& e) {
        throw kdlab::CliError("config", config_path + ": " + e.what());
      }
      config = kdlab::config_from_json(j);
    }
    config.command = kdlab::parse_command(app.get_subcommands().front()->get_name());
    if (*o_seed) config.seed = seed;
    if (*o_omega) {
      config.model.omega = omega;
      config.sweep.omega_grid = {omega};
    }
    if (*o_tau) config.taus = parse_taus(tau_text);
    if (*o_shots) {
      if (shots_text == "exact") {
        config.shots.reset();
      } else {
        try {
          std::size_t used = 0;
          const long long n = std::stoll(shots_text, &used);
          if (used != shots_text.size() || n < 1) throw std::invalid_argument("bad");
          config.shots = static_cast<std::uint64_t>(n);
        } catch (const std::exception&) {
          throw kdlab::CliError("usage", "--shots: expected a positive integer or 'exact'");
        }
      }
    }
    if (*o_trotter) config.n_trotter = trotter;
    if (*o_noise) {
      config.noise = noise;
      config.custom_noise.reset();
    }
    if (*o_out) config.out = out;
    if (*o_format) config.format = kdlab::parse_format(format);

    const kdlab::RunResult result = kdlab::run(config);
    if (config.out.empty()) {
      for (const auto& f : result.files) {
        if (f.name == "manifest.json") continue;
        std::cout << "# " << f.name << "\n" << f.content;
      }
    } else {
      kdlab::write_outputs(result, config.out);
    }
    std::cout << result.summary;
  } catch (const kdlab::CliError& e) {
    return fail(e.category(), e.what());
  } catch (const kdlab::UnsupportedPreparation& e) {
    return fail("unsupported_setting", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what());
  } catch (const std::exception& e) {
    return fail("runtime", e.what());
  }
  return 0;
}
