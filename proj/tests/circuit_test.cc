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

#include "kdlab/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "kdlab/statevector_kernels.hpp"
#include "oracles.hpp"

using namespace kdlab;

namespace {

// Dense reference: gate matrix acting on the listed qubits by explicit
// index bookkeeping, independent of the strided kernels.
Matrix embed_gate(const Gate& g, int n) {
  const Matrix m = g.matrix();
  const int k = g.arity();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    int local_in = 0;
    for (int a = 0; a < k; ++a) local_in = (local_in << 1) | static_cast<int>((col >> (n - 1 - g.qubits[a])) & 1);
    for (int local_out = 0; local_out < (1 << k); ++local_out) {
      Eigen::Index row = col;
      for (int a = 0; a < k; ++a) {
        const Eigen::Index mask = Eigen::Index{1} << (n - 1 - g.qubits[a]);
        const bool bit = (local_out >> (k - 1 - a)) & 1;
        row = bit ? (row | mask) : (row & ~mask);
      }
      out(row, col) += m(local_out, local_in);
    }
  }
  return out;
}

Gate random_gate(std::mt19937_64& gen, int n) {
  std::uniform_int_distribution<int> kind_d(0, 8);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const auto kind = static_cast<GateKind>(kind_d(gen));
  std::vector<int> q(static_cast<std::size_t>(n));
  std::iota(q.begin(), q.end(), 0);
  std::shuffle(q.begin(), q.end(), gen);
  switch (gate_arity(kind)) {
    case 1:
      return Gate::make(kind, {q[0]}, angle(gen));
    case 2:
      return Gate::make(kind, {q[0], q[1]}, angle(gen));
    default:
      return Gate::make(kind, {q[0], q[1], q[2]});
  }
}

// q from the Trotterized 3-qubit propagator, the exact target of the
// noiseless circuit.
QuasiTable trotter_reference_kd(const MeasurementSetting& s, const ModelParams& p, int n_trotter) {
  const int n = p.n_qubits();
  const Matrix u = s.time_a == 0.0 ? Matrix::Identity(1 << n, 1 << n)
                                   : compose(trotterized_propagator(p, -s.time_a, n_trotter), n).matrix();
  const Vector psi = s.initial_state().amplitudes();
  QuasiTable q{};
  for (int i = 0; i < 2; ++i) {
    const Matrix a = u * embed_projector(s.a.projector(i), s.site_a, n).matrix() * u.adjoint();
    for (int j = 0; j < 2; ++j) q[i][j] = psi.dot(embed_projector(s.b.projector(j), s.site_b, n).matrix() * a * psi);
  }
  return q;
}

double max_diff(const QuasiTable& a, const QuasiTable& b) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

QuasiTable exact_circuit_q(const MeasurementSetting& s, const ModelParams& p, int n_trotter) {
  CounterRng rng(0);
  EstimateOptions o;
  o.shots_per_part.reset();
  o.n_trotter = n_trotter;
  return estimate_kd(s, p, o, rng).q;
}

}  // namespace

TEST(Gates, unitary_and_validated) {
  for (int k = 0; k <= static_cast<int>(GateKind::CSWAP); ++k) {
    const auto kind = static_cast<GateKind>(k);
    const Gate g = gate_arity(kind) == 1   ? Gate::make(kind, {0}, 0.37)
                   : gate_arity(kind) == 2 ? Gate::make(kind, {0, 1}, 0.37)
                                           : Gate::make(kind, {0, 1, 2});
    EXPECT_LT(unitarity_error(DenseOperator(g.matrix())), 1e-12) << gate_name(kind);
  }
  EXPECT_THROW(Gate::make(GateKind::CNOT, {1, 1}), std::invalid_argument);
  EXPECT_THROW(Gate::make(GateKind::H, {0, 1}), std::invalid_argument);
  EXPECT_THROW(Gate::make(GateKind::RX, {0}, std::nan("")), std::invalid_argument);
  Circuit c{2, {Gate::make(GateKind::CNOT, {0, 2})}, 0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Gates, rotation_conventions) {
  const double t = 0.81;
  const Matrix rx = Gate::make(GateKind::RX, {0}, t).matrix();
  EXPECT_LT(max_abs_entry(rx - matexp_i(qubit_operator(pauli::X()), -t / 2).matrix()), 1e-14);
  const Matrix rz = Gate::make(GateKind::RZ, {0}, t).matrix();
  EXPECT_LT(max_abs_entry(rz - matexp_i(qubit_operator(pauli::Z()), -t / 2).matrix()), 1e-14);
  const auto xx = kron(qubit_operator(pauli::X()), qubit_operator(pauli::X()));
  const Matrix rxx = Gate::make(GateKind::RXX, {0, 1}, t).matrix();
  EXPECT_LT(max_abs_entry(rxx - matexp_i(xx, -t / 2).matrix()), 1e-14);
}

TEST(Kernels, match_dense_reference_on_random_circuits) {
  std::mt19937_64 gen(13);
  const int n = 4;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Gate> gates;
    Matrix ref = Matrix::Identity(16, 16);
    for (int k = 0; k < 12; ++k) {
      gates.push_back(random_gate(gen, n));
      ref = embed_gate(gates.back(), n) * ref;
    }
    EXPECT_LT(max_abs_entry(compose(gates, n).matrix() - ref), 1e-12);
  }
}

TEST(Kernels, paulis_and_probability) {
  Vector s = Vector::Zero(4);
  s[0] = 1.0;
  kernels::apply_pauli(s, 2, 1, 1);
  EXPECT_NEAR(std::abs(s[1]), 1.0, 0.0);
  kernels::apply_pauli(s, 2, 1, 2);
  EXPECT_NEAR(std::abs(s[0] - Complex(0, -1)), 0.0, 1e-15);
  kernels::apply_pauli(s, 2, 0, 3);
  EXPECT_NEAR(std::abs(s[0] - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(kernels::prob_zero(s, 2, 0), 1.0, 0.0);
}

TEST(Simulate, trivial_circuits) {
  Circuit empty{3, {}, 0};
  const auto psi = StateVector::normalized(Vector::LinSpaced(8, 1.0, 8.0));
  EXPECT_EQ(simulate(empty, psi).amplitudes(), psi.amplitudes());
  Circuit hh{3, {Gate::make(GateKind::H, {1}), Gate::make(GateKind::H, {1})}, 0};
  EXPECT_LT((simulate(hh, psi).amplitudes() - psi.amplitudes()).norm(), 1e-15);
  Circuit h{1, {Gate::make(GateKind::H, {0})}, 0};
  EXPECT_NEAR(ancilla_p0(h), 0.5, 1e-15);
}

TEST(Trotter, gate_layout_and_zero_terms) {
  const auto p = oracle::experiment_params();
  const auto gates = trotterized_propagator(p, 3.66, 5);
  ASSERT_EQ(gates.size(), 20u);
  EXPECT_EQ(gates[0].kind, GateKind::RX);
  EXPECT_NEAR(gates[0].theta, 3.66 / 5, 1e-15);
  EXPECT_EQ(gates[1].kind, GateKind::RZ);
  EXPECT_NEAR(gates[1].theta, 1.5 * 3.66 / 5, 1e-15);
  EXPECT_EQ(gates[2].kind, GateKind::RXX);
  EXPECT_NEAR(gates[2].theta, 2 * 3.66 / 5, 1e-15);
  EXPECT_EQ(trotterized_propagator(ModelParams{1.0, 0.0, {1.0, 1.0}}, 1.0, 5).size(), 15u);
  EXPECT_TRUE(trotterized_propagator(p, 0.0, 5).empty());
  EXPECT_THROW(trotterized_propagator(p, 1.0, 0), std::invalid_argument);
  const std::vector<int> map{4, 7, 9};
  EXPECT_EQ(trotterized_propagator(p, 1.0, 1, map)[3].qubits[1], 9);
}

TEST(Trotter, commuting_model_is_exact) {
  const ModelParams p{1.0, 0.0, {1.0, 0.7}};
  for (int n : {1, 2, 5}) {
    for (double t : {0.3, 3.66, 12.0}) {
      EXPECT_LT(max_abs_entry(compose(trotterized_propagator(p, t, n), 3).matrix() - propagator(p, t).matrix()),
                1e-10);
    }
  }
}

TEST(Trotter, converges_to_exact_propagator) {
  const auto p = oracle::experiment_params();
  const Matrix exact = propagator(p, 3.66).matrix();
  double prev = 1e9;
  for (int n : {5, 10, 20, 40, 80, 160}) {
    const double dev = max_abs_entry(compose(trotterized_propagator(p, 3.66, n), 3).matrix() - exact);
    EXPECT_LT(dev, prev) << n;
    prev = dev;
  }
  // first order at large n: the error roughly halves per doubling
  const double d80 = max_abs_entry(compose(trotterized_propagator(p, 3.66, 80), 3).matrix() - exact);
  const double d160 = max_abs_entry(compose(trotterized_propagator(p, 3.66, 160), 3).matrix() - exact);
  EXPECT_NEAR(d80 / d160, 2.0, 0.3);
}

TEST(Layout, fourteen_qubits_for_two_environment_qubits) {
  const auto l = CycleTestLayout::for_model(oracle::experiment_params());
  EXPECT_EQ(l.n_qubits, 14);
  EXPECT_EQ(l.test, 0);
  EXPECT_EQ(l.reg_a, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(l.bell_a, (std::vector<int>{4, 5}));
  EXPECT_EQ(l.reg_psi, (std::vector<int>{6, 7, 8}));
  EXPECT_EQ(l.reg_b, (std::vector<int>{9, 10, 11}));
  EXPECT_EQ(l.bell_b, (std::vector<int>{12, 13}));
  EXPECT_EQ(cycle_test_scale(oracle::experiment_params()), 16);
}

TEST(Preparation, pauli_eigenstates_and_rejection) {
  for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
    for (int o : {0, 1}) {
      const QubitKet target = basis_ket(b, o) * std::polar(1.0, 0.9);
      Eigen::Vector2cd k(1.0, 0.0);
      for (GateKind g : preparation_sequence(target)) k = Eigen::Matrix2cd(Gate::make(g, {0}).matrix()) * k;
      EXPECT_NEAR(std::abs(k.dot(target)), 1.0, 1e-12);
    }
  }
  EXPECT_EQ(preparation_sequence(basis_ket(Basis::Y, 1)),
            (std::vector<GateKind>{GateKind::X, GateKind::H, GateKind::S}));
  EXPECT_THROW(preparation_sequence(QubitKet(std::cos(0.3), std::sin(0.3))), UnsupportedPreparation);
  auto s = experiment_setting(1.0);
  s.a = ProjectorPair(QubitKet(std::cos(0.3), std::sin(0.3)));
  EXPECT_THROW(build_cycle_test(s, oracle::experiment_params(), 0, 0, Part::REAL), UnsupportedPreparation);
}

TEST(CycleTest, structure) {
  const auto p = oracle::experiment_params();
  const auto c = build_cycle_test(experiment_setting(3.66), p, 1, 1, Part::IMAG, 5);
  EXPECT_EQ(c.n_qubits, 14);
  EXPECT_EQ(c.measured_qubit, 0);
  EXPECT_EQ(c.count(GateKind::CSWAP), 6);
  EXPECT_EQ(c.count(GateKind::CNOT), 4);
  EXPECT_EQ(c.count(GateKind::RXX), 10);
  EXPECT_EQ(c.count(GateKind::S), 2);  // Y-basis preparation on B and the phase gate
  EXPECT_EQ(c.gates.back().kind, GateKind::H);
  EXPECT_EQ(c.gates.back().qubits[0], 0);
  const auto real0 = build_cycle_test(experiment_setting(0.0), p, 0, 0, Part::REAL, 5);
  for (const Gate& g : real0.gates) EXPECT_FALSE(g.is_propagation());
  EXPECT_EQ(real0.count(GateKind::S), 1);
  const std::string text = c.to_text();
  EXPECT_NE(text.find("CSWAP 0 6 9\n"), std::string::npos);
  EXPECT_NE(text.find("RXX 1 2 -1.464"), std::string::npos);
}

TEST(CycleTest, controlled_cycle_permutes_registers) {
  // 1 control + three 2-qubit registers
  const std::vector<int> a{1, 2}, psi{3, 4}, b{5, 6};
  Circuit c{7, controlled_cycle(0, a, psi, b), 0};
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int va = static_cast<int>(gen() & 3), vp = static_cast<int>(gen() & 3), vb = static_cast<int>(gen() & 3);
    for (int ctrl : {0, 1}) {
      const std::uint64_t in = (std::uint64_t(ctrl) << 6) | (va << 4) | (vp << 2) | vb;
      const auto out = simulate(c, StateVector::basis(7, in));
      // control set: |a>|psi>|b> -> |b>|a>|psi>
      const std::uint64_t want = ctrl ? ((std::uint64_t(1) << 6) | (vb << 4) | (va << 2) | vp) : in;
      EXPECT_NEAR(std::abs(out[static_cast<Eigen::Index>(want)]), 1.0, 1e-15);
    }
  }
  EXPECT_THROW(controlled_cycle(0, a, psi, std::vector<int>{5}), std::invalid_argument);
}

TEST(CycleTest, norm_preserved_on_full_circuit) {
  const auto c = build_cycle_test(experiment_setting(2.21), oracle::experiment_params(), 0, 1, Part::REAL, 5);
  EXPECT_NEAR(simulate(c).amplitudes().norm(), 1.0, 1e-10);
}

TEST(Decode, affine_map) {
  EXPECT_EQ(decode_quasiprobability(0.5, 0.5), Complex(0.0, 0.0));
  EXPECT_NEAR(std::abs(decode_quasiprobability(0.53125, 0.5) - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(decode_quasiprobability(0.5, 0.53125) - Complex(0.0, kImagSign)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(decode_quasiprobability(0.75, 0.25, 4) - Complex(2.0, -2.0 * kImagSign)), 0.0, 1e-15);
}

TEST(CycleTest, zero_time_matches_exact_oracle) {
  const auto p = oracle::experiment_params();
  const auto s = experiment_setting(0.0);
  const auto kd = kd_distribution(s, p);
  const double p0 = ancilla_p0(build_cycle_test(s, p, 0, 0, Part::REAL));
  EXPECT_NEAR(2.0 * p0 - 1.0, kd.q[0][0].real() / 16.0, 1e-12);
  EXPECT_LE(max_diff(exact_circuit_q(s, p, 5), kd.q), 1e-10);
}

TEST(CycleTest, imaginary_sign_calibration) {
  // Settings with a large imaginary part; the sign must agree entrywise.
  const auto p = oracle::experiment_params();
  for (double tau : {2.21, 3.66}) {
    const auto s = experiment_setting(tau);
    const auto kd = kd_distribution(s, p);
    const auto q = exact_circuit_q(s, p, 50);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        ASSERT_GT(std::abs(kd.q[i][j].imag()), 0.1);
        EXPECT_GT(q[i][j].imag() * kd.q[i][j].imag(), 0.0);
        EXPECT_NEAR(q[i][j].imag(), kd.q[i][j].imag(), 1e-3);
      }
    }
  }
}

TEST(CycleTest, bell_marginalization_over_supported_settings) {
  // Worst 5-step deviation over all Pauli-eigenstate settings at these
  // times, measured on the Trotterized 3-qubit reference: 0.2414.
  constexpr double kTrotterTolerance5 = 0.25;
  const auto p = oracle::experiment_params();
  const std::array<QubitKet, 3> initial_choices{basis_ket(Basis::X, 1), basis_ket(Basis::Y, 0), basis_ket(Basis::Z, 1)};
  double worst5 = 0.0, worst50 = 0.0;
  for (Basis a : {Basis::X, Basis::Y, Basis::Z}) {
    for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
      for (double tau : {0.0, 2.21, 3.66}) {
        auto s = experiment_setting(tau);
        s.a = ProjectorPair::in_basis(a);
        s.b = ProjectorPair::in_basis(b);
        s.initial = {initial_choices[static_cast<int>(a)], initial_choices[static_cast<int>(b)], basis_ket(Basis::X, 0)};
        const auto exact = kd_distribution(s, p).q;
        const auto q5 = exact_circuit_q(s, p, 5);
        EXPECT_LE(max_diff(q5, trotter_reference_kd(s, p, 5)), 1e-10);
        const double d5 = max_diff(q5, exact);
        EXPECT_LE(d5, tau == 0.0 ? 1e-10 : kTrotterTolerance5);
        worst5 = std::max(worst5, d5);
        worst50 = std::max(worst50, max_diff(trotter_reference_kd(s, p, 50), exact));
      }
    }
  }
  EXPECT_GE(worst5 / worst50, 5.0);
}

TEST(Estimate, exact_mode_and_standard_errors) {
  const auto p = oracle::experiment_params();
  const auto s = experiment_setting(3.66);
  CounterRng rng(1);
  EstimateOptions o;
  o.shots_per_part.reset();
  const auto exact = estimate_kd(s, p, o, rng);
  EXPECT_TRUE(exact.shots.empty());
  EXPECT_EQ(exact.se_re[0][0], 0.0);
  o.shots_per_part = 10000;
  const auto est = sample_estimate(exact.probabilities, o.shots_per_part, rng);
  ASSERT_EQ(est.shots.size(), 8u);
  for (const auto& r : est.shots) EXPECT_EQ(r.n_shots, 10000u);
  const double pr = static_cast<double>(est.shots[0].count_zero) / 10000.0;
  EXPECT_NEAR(est.se_re[0][0], 16.0 * 2.0 * std::sqrt(pr * (1 - pr) / 10000.0), 1e-15);
  EXPECT_THROW(sample_estimate(exact.probabilities, std::uint64_t{0}, rng), std::invalid_argument);
  EXPECT_NEAR(rmse(exact.q, exact.q), 0.0, 0.0);
}

TEST(Estimate, unbiased_over_seeds) {
  const auto p = oracle::experiment_params();
  CounterRng rng(0);
  EstimateOptions o;
  o.shots_per_part.reset();
  const auto probs = cycle_test_probabilities(experiment_setting(3.66), p, o, rng);
  const auto target = sample_estimate(probs, std::nullopt, rng).q;
  QuasiTable mean{};
  RealTable se_re{}, se_im{};
  const int n_seeds = 100;
  for (int seed = 0; seed < n_seeds; ++seed) {
    CounterRng r(1000 + seed);
    const auto est = sample_estimate(probs, 10000, r);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        mean[i][j] += est.q[i][j] / double(n_seeds);
        se_re[i][j] += est.se_re[i][j] / n_seeds;
        se_im[i][j] += est.se_im[i][j] / n_seeds;
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // standard error of the mean over seeds
      EXPECT_LE(std::abs(mean[i][j].real() - target[i][j].real()), 3.0 * se_re[i][j] / std::sqrt(n_seeds));
      EXPECT_LE(std::abs(mean[i][j].imag() - target[i][j].imag()), 3.0 * se_im[i][j] / std::sqrt(n_seeds));
    }
  }
}
