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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kdlab/gates.hpp"
#include "kdlab/kdq.hpp"
#include "kdlab/model.hpp"
#include "kdlab/noise.hpp"
#include "kdlab/rng.hpp"

namespace kdlab {

enum class Part { REAL, IMAG };
std::string_view part_name(Part part);

/// Thrown when a setting needs a state outside the X/H/S preparation family.
class UnsupportedPreparation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// First-order Trotter product approximating exp(-i H t): each of the
/// `n_steps` steps applies RX(delta t/n) and RZ(omega t/n) on S, then
/// RXX(2 J_i t/n) on (S, E_i). Terms with a zero coefficient are omitted.
/// `qubit_map[k]` is the circuit qubit carrying model qubit k (identity
/// when empty).
std::vector<Gate> trotterized_propagator(const ModelParams& params, double t, int n_steps,
                                         std::span<const int> qubit_map = {});

/// Qubit assignment of the cycle-test circuit. For two environment qubits:
/// 0 test ancilla, 1-3 register A (S, E1, E2), 4-5 Bell partners of A's
/// unmeasured qubits, 6-8 register psi, 9-11 register B, 12-13 Bell
/// partners of B's unmeasured qubits.
struct CycleTestLayout {
  int n_qubits = 0;
  int test = 0;
  std::vector<int> reg_a;
  std::vector<int> reg_psi;
  std::vector<int> reg_b;
  std::vector<int> bell_a;
  std::vector<int> bell_b;

  static CycleTestLayout for_model(const ModelParams& params);
};

/// 4^{N_E}: the Bell-pair purification of the unmeasured register qubits
/// scales the measured invariant by 1/(2^{N_E})^2.
int cycle_test_scale(const ModelParams& params);

/// Gates preparing `ket` from |0> with an optional X, then H, then S. Throws
/// UnsupportedPreparation for any other state.
std::vector<GateKind> preparation_sequence(const QubitKet& ket);

/// Full measurement circuit for q_{ij}: state preparation with Bell pairs,
/// Trotterized exp(+iH tau_a) on register A (omitted entirely at tau_a = 0),
/// then H, controlled cycle |A>|psi>|B> -> |B>|A>|psi>, optional S (IMAG), H
/// on the test ancilla.
Circuit build_cycle_test(const MeasurementSetting& setting, const ModelParams& params, int outcome_a,
                         int outcome_b, Part part, int n_trotter = 5);

/// Controlled cycle as CSWAPs: psi <-> B then A <-> psi, register-wise.
std::vector<Gate> controlled_cycle(int control, std::span<const int> reg_a, std::span<const int> reg_psi,
                                   std::span<const int> reg_b);

/// Noiseless evolution of |0...0> (or `initial` when given).
StateVector simulate(const Circuit& circuit, const std::optional<StateVector>& initial = std::nullopt);
/// One trajectory with the given faults inserted after their gates.
StateVector simulate(const Circuit& circuit, std::span<const Fault> faults);
/// One Monte-Carlo trajectory; readout error is not part of the state.
StateVector simulate(const Circuit& circuit, const NoiseModel& noise, CounterRng& rng);

/// Exact noiseless P(0) on the measured qubit.
double ancilla_p0(const Circuit& circuit);
/// Trajectory mean of P(0) with the readout flip folded in. Throws
/// std::invalid_argument if n_trajectories < 1.
double ancilla_p0(const Circuit& circuit, const NoiseModel& noise, int n_trajectories, CounterRng& rng);

/// Sign relating the S-variant ancilla bias to Im q, fixed against the exact
/// KD oracle.
inline constexpr int kImagSign = +1;

/// scale (2 p0_real - 1) + i scale kImagSign (2 p0_imag - 1).
Complex decode_quasiprobability(double p0_real, double p0_imag, int scale = 16);

struct ShotRecord {
  std::uint64_t n_shots = 0;
  std::uint64_t count_zero = 0;
  Part part = Part::REAL;
  int outcome_a = 0;
  int outcome_b = 0;
};

/// Ancilla P(0) of all eight circuits, indexed [i][j].
struct CycleTestProbabilities {
  RealTable real{};
  RealTable imag{};
  int scale = 16;
};

struct EstimateOptions {
  /// Shots per circuit; empty means exact probabilities (infinite shots).
  std::optional<std::uint64_t> shots_per_part;
  int n_trotter = 5;
  std::optional<NoiseModel> noise;
  int n_trajectories = 200;
};

struct KdEstimate {
  QuasiTable q{};
  RealTable se_re{};
  RealTable se_im{};
  CycleTestProbabilities probabilities;
  std::vector<ShotRecord> shots;
};

CycleTestProbabilities cycle_test_probabilities(const MeasurementSetting& setting, const ModelParams& params,
                                                const EstimateOptions& options, CounterRng& rng);

/// Decodes probabilities, binomially sampling `shots_per_part` shots per
/// circuit when given. Standard errors are scale * 2 sqrt(P(1-P)/N) with the
/// sampled P (zero in exact mode).
KdEstimate sample_estimate(const CycleTestProbabilities& probs, std::optional<std::uint64_t> shots_per_part,
                           CounterRng& rng);

KdEstimate estimate_kd(const MeasurementSetting& setting, const ModelParams& params, const EstimateOptions& options,
                       CounterRng& rng);

/// sqrt(mean_ij |a_ij - b_ij|^2).
double rmse(const QuasiTable& a, const QuasiTable& b);

}  // namespace kdlab
