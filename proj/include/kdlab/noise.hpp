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

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/gates.hpp"
#include "kdlab/reference_data.hpp"
#include "kdlab/rng.hpp"

namespace kdlab {

/// Pauli error probabilities for one qubit over one time window.
struct PauliTwirl {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
};

/// Stochastic Pauli noise for trajectory simulation.
///
/// After every gate: with probability gate_error(g) a uniformly random
/// non-identity Pauli string hits the gate's qubits; then every qubit of the
/// register independently suffers the Pauli-twirled T1/T2 relaxation for the
/// gate's duration (gates are treated as executing one after another).
/// Readout error flips the measured bit with probability p_readout.
struct NoiseModel {
  std::string name = "custom";
  double p1 = 0.0;
  double p2 = 0.0;
  double p_readout = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  double t2 = std::numeric_limits<double>::infinity();
  double time_1q = 0.0;
  double time_2q = 0.0;

  void validate() const;

  /// Depolarizing probability for one application of `g`. Three-qubit gates
  /// count as their CNOT decomposition: 1 - (1 - p2)^cnots.
  double gate_error(const Gate& g) const;
  double gate_time(const Gate& g) const;

  /// px = py = (1 - e^{-t/T1}) / 4, pz = (1 - e^{-t/T2}) / 2 - px.
  PauliTwirl relaxation(double duration) const;

  /// Every error probability multiplied by `factor` (clamped to 1) and both
  /// relaxation rates multiplied by `factor`.
  NoiseModel scaled(double factor) const;

  bool is_noiseless() const;

  static NoiseModel none();
  static NoiseModel from_device(const reference::DeviceParameters& d, std::string name);
  static NoiseModel table4_ibm();
  static NoiseModel table4_ionq();
  /// "none", "table4-ibm" or "table4-ionq"; throws std::invalid_argument otherwise.
  static NoiseModel preset(std::string_view name);
};

/// A Pauli inserted after gate `after_gate` on `qubit` (1 = X, 2 = Y, 3 = Z).
struct Fault {
  int after_gate = 0;
  int qubit = 0;
  int pauli = 0;

  friend bool operator==(const Fault&, const Fault&) = default;
};

/// Samples the Pauli faults of one trajectory, ordered by gate.
std::vector<Fault> sample_faults(const Circuit& circuit, const NoiseModel& noise, CounterRng& rng);

/// Observed P(0) after a symmetric readout flip.
double apply_readout(double p0, const NoiseModel& noise);

}  // namespace kdlab
