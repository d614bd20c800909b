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

#include "kdlab/noise.hpp"

#include <array>
#include <random>

#include "gtest/gtest.h"
#include "kdlab/circuit.hpp"
#include "kdlab/statevector_kernels.hpp"
#include "oracles.hpp"

using namespace kdlab;

TEST(NoiseModel, presets_carry_device_numbers) {
  const auto ibm = NoiseModel::preset("table4-ibm");
  EXPECT_DOUBLE_EQ(ibm.p1, 0.037e-2);
  EXPECT_DOUBLE_EQ(ibm.p2, 0.286e-2);
  EXPECT_DOUBLE_EQ(ibm.p_readout, 2.539e-2);
  EXPECT_DOUBLE_EQ(ibm.t1, 183.29e-6);
  EXPECT_DOUBLE_EQ(ibm.time_2q, 68e-9);
  const auto ionq = NoiseModel::preset("table4-ionq");
  EXPECT_DOUBLE_EQ(ionq.p2, 1.240e-2);
  EXPECT_DOUBLE_EQ(ionq.p_readout, 0.370e-2);
  EXPECT_TRUE(NoiseModel::preset("none").is_noiseless());
  EXPECT_THROW(NoiseModel::preset("ibm"), std::invalid_argument);
}

TEST(NoiseModel, gate_error_time_and_relaxation) {
  NoiseModel m;
  m.p1 = 0.01;
  m.p2 = 0.02;
  m.time_1q = 1.0;
  m.time_2q = 2.0;
  m.t1 = 10.0;
  m.t2 = 5.0;
  EXPECT_EQ(m.gate_error(Gate::make(GateKind::H, {0})), 0.01);
  EXPECT_EQ(m.gate_error(Gate::make(GateKind::RXX, {0, 1}, 0.1)), 0.02);
  EXPECT_NEAR(m.gate_error(Gate::make(GateKind::CSWAP, {0, 1, 2})), 1.0 - std::pow(0.98, 8), 1e-15);
  EXPECT_EQ(m.gate_time(Gate::make(GateKind::CSWAP, {0, 1, 2})), 16.0);
  const auto tw = m.relaxation(2.0);
  EXPECT_NEAR(tw.px, (1 - std::exp(-0.2)) / 4, 1e-15);
  EXPECT_NEAR(tw.py, tw.px, 0.0);
  EXPECT_NEAR(tw.pz, (1 - std::exp(-0.4)) / 2 - tw.px, 1e-15);
  EXPECT_EQ(NoiseModel::none().relaxation(5.0).px, 0.0);
  m.p1 = 1.5;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(NoiseModel, scaling) {
  const auto ibm = NoiseModel::table4_ibm();
  const auto x4 = ibm.scaled(4.0);
  EXPECT_DOUBLE_EQ(x4.p2, 4 * ibm.p2);
  EXPECT_DOUBLE_EQ(x4.p_readout, 4 * ibm.p_readout);
  EXPECT_DOUBLE_EQ(x4.t1, ibm.t1 / 4);
  EXPECT_TRUE(ibm.scaled(0.0).is_noiseless());
  EXPECT_EQ(ibm.scaled(1000.0).p_readout, 1.0);
  EXPECT_THROW(ibm.scaled(-1.0), std::invalid_argument);
}

TEST(Faults, zero_noise_samples_nothing) {
  const auto c = build_cycle_test(experiment_setting(3.66), oracle::experiment_params(), 0, 0, Part::REAL);
  CounterRng rng(1);
  EXPECT_TRUE(sample_faults(c, NoiseModel::none(), rng).empty());
  NoiseModel zero = NoiseModel::table4_ibm().scaled(0.0);
  EXPECT_TRUE(sample_faults(c, zero, rng).empty());
}

TEST(Faults, rate_and_uniform_pauli_strings) {
  NoiseModel m;
  m.p2 = 0.3;
  Circuit c{2, {Gate::make(GateKind::CNOT, {0, 1})}, 0};
  CounterRng rng(2);
  const int n = 60000;
  int hits = 0;
  std::array<int, 16> strings{};
  for (int k = 0; k < n; ++k) {
    const auto f = sample_faults(c, m, rng);
    if (f.empty()) continue;
    ++hits;
    int code = 0;
    for (const auto& x : f) code |= x.pauli << (2 * (x.qubit == 0 ? 0 : 1));
    ++strings[code];
  }
  EXPECT_NEAR(double(hits) / n, 0.3, 0.006);
  EXPECT_EQ(strings[0], 0);
  for (int s = 1; s < 16; ++s) EXPECT_NEAR(double(strings[s]) / hits, 1.0 / 15, 0.006) << s;
}

TEST(Faults, deterministic_given_stream) {
  const auto c = build_cycle_test(experiment_setting(2.21), oracle::experiment_params(), 1, 0, Part::IMAG);
  CounterRng a(5, 9), b(5, 9);
  EXPECT_EQ(sample_faults(c, NoiseModel::table4_ionq().scaled(10), a),
            sample_faults(c, NoiseModel::table4_ionq().scaled(10), b));
}

TEST(Trajectory, fault_insertion_matches_direct_replay) {
  const auto c = build_cycle_test(experiment_setting(2.21), oracle::experiment_params(), 0, 1, Part::REAL);
  CounterRng rng(8);
  const auto noise = NoiseModel::table4_ibm().scaled(20);
  for (int trial = 0; trial < 5; ++trial) {
    const auto faults = sample_faults(c, noise, rng);
    Vector s = Vector::Zero(Eigen::Index{1} << c.n_qubits);
    s[0] = 1.0;
    std::size_t f = 0;
    for (int g = 0; g < static_cast<int>(c.gates.size()); ++g) {
      kernels::apply_gate(s, c.n_qubits, c.gates[g]);
      for (; f < faults.size() && faults[f].after_gate == g; ++f) {
        kernels::apply_pauli(s, c.n_qubits, faults[f].qubit, faults[f].pauli);
      }
    }
    EXPECT_LT((simulate(c, faults).amplitudes() - s).norm(), 1e-12);
  }
}

TEST(Trajectory, pruned_average_matches_full_replay) {
  const auto c = build_cycle_test(experiment_setting(3.66), oracle::experiment_params(), 1, 0, Part::IMAG);
  const auto noise = NoiseModel::table4_ionq().scaled(5);
  CounterRng rng(21);
  const std::uint64_t base = CounterRng(21)();
  const int n = 60;
  double sum = 0.0;
  for (int t = 0; t < n; ++t) {
    CounterRng traj(base, static_cast<std::uint64_t>(t));
    sum += kernels::prob_zero(simulate(c, sample_faults(c, noise, traj)).amplitudes(), c.n_qubits, c.measured_qubit);
  }
  EXPECT_NEAR(ancilla_p0(c, noise, n, rng), apply_readout(sum / n, noise), 1e-12);
}

TEST(Trajectory, zero_rates_are_bit_identical_to_noiseless) {
  const auto c = build_cycle_test(experiment_setting(3.66), oracle::experiment_params(), 1, 1, Part::IMAG);
  CounterRng rng(3);
  NoiseModel zero;
  EXPECT_EQ(simulate(c, zero, rng).amplitudes(), simulate(c).amplitudes());
  EXPECT_EQ(ancilla_p0(c, zero, 10, rng), ancilla_p0(c));
  EXPECT_THROW(ancilla_p0(c, zero, 0, rng), std::invalid_argument);
}

TEST(Trajectory, full_depolarizing_mean) {
  // X then certain Pauli error: X, Y return to |0>, Z does not.
  NoiseModel m;
  m.p1 = 1.0;
  Circuit c{1, {Gate::make(GateKind::X, {0})}, 0};
  CounterRng rng(4);
  EXPECT_NEAR(ancilla_p0(c, m, 30000, rng), 2.0 / 3.0, 0.01);
  m.p_readout = 0.1;
  EXPECT_NEAR(apply_readout(1.0, m), 0.9, 1e-15);
  EXPECT_NEAR(apply_readout(0.25, m), 0.3, 1e-15);
}

TEST(Trajectory, noise_raises_error_against_exact) {
  const auto p = oracle::experiment_params();
  for (double tau : {0.0, 3.66}) {
    const auto s = experiment_setting(tau);
    const auto exact = kd_distribution(s, p).q;
    CounterRng rng(11);
    EstimateOptions o;
    o.shots_per_part.reset();
    const double clean = rmse(estimate_kd(s, p, o, rng).q, exact);
    o.noise = NoiseModel::table4_ibm();
    o.n_trajectories = 100;
    const double noisy = rmse(estimate_kd(s, p, o, rng).q, exact);
    EXPECT_GT(noisy, clean) << tau;
  }
}
