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
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "kdlab/statevector_kernels.hpp"

namespace kdlab {
namespace {

Vector zero_state(int n) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[0] = 1.0;
  return v;
}

QubitKet apply_sequence(const std::vector<GateKind>& seq) {
  Eigen::Vector2cd k(1.0, 0.0);
  for (GateKind kind : seq) k = Eigen::Matrix2cd(Gate::make(kind, {0}).matrix()) * k;
  return k;
}

void append_preparation(std::vector<Gate>& gates, const QubitKet& ket, int qubit) {
  for (GateKind kind : preparation_sequence(ket)) gates.push_back(Gate::make(kind, {qubit}));
}

/// Noiseless states after every gate, shared by all trajectories of a circuit.
class TrajectoryRunner {
 public:
  explicit TrajectoryRunner(const Circuit& c) : circuit_(c) {
    Vector s = zero_state(c.n_qubits);
    snapshots_.reserve(c.gates.size());
    for (const Gate& g : c.gates) {
      kernels::apply_gate(s, c.n_qubits, g);
      snapshots_.push_back(s);
    }
    clean_p0_ = kernels::prob_zero(s, c.n_qubits, c.measured_qubit);
    // Qubits that still reach the measured qubit after each gate.
    cone_after_.assign(c.gates.size(), 0);
    std::uint64_t cone = std::uint64_t{1} << c.measured_qubit;
    for (int gi = static_cast<int>(c.gates.size()) - 1; gi >= 0; --gi) {
      cone_after_[gi] = cone;
      const Gate& g = c.gates[gi];
      std::uint64_t touched = 0;
      for (int a = 0; a < g.arity(); ++a) touched |= std::uint64_t{1} << g.qubits[a];
      if (touched & cone) cone |= touched;
    }
  }

  double clean_p0() const { return clean_p0_; }

  double p0(std::span<const Fault> faults) const {
    std::vector<Fault> live;
    for (const Fault& f : faults) {
      if (cone_after_[f.after_gate] >> f.qubit & 1u) live.push_back(f);
    }
    if (live.empty()) return clean_p0_;
    return kernels::prob_zero(run(live), circuit_.n_qubits, circuit_.measured_qubit);
  }

  Vector run(std::span<const Fault> faults) const {
    const int n = circuit_.n_qubits;
    if (faults.empty()) return snapshots_.empty() ? zero_state(n) : snapshots_.back();
    const int first = faults.front().after_gate;
    Vector s = snapshots_[first];
    std::size_t f = 0;
    for (int gi = first; gi < static_cast<int>(circuit_.gates.size()); ++gi) {
      if (gi > first) kernels::apply_gate(s, n, circuit_.gates[gi]);
      for (; f < faults.size() && faults[f].after_gate == gi; ++f) kernels::apply_pauli(s, n, faults[f].qubit, faults[f].pauli);
    }
    return s;
  }

 private:
  const Circuit& circuit_;
  std::vector<Vector> snapshots_;
  std::vector<std::uint64_t> cone_after_;
  double clean_p0_ = 0.0;
};

}  // namespace

std::string_view part_name(Part part) { return part == Part::REAL ? "REAL" : "IMAG"; }

std::vector<Gate> trotterized_propagator(const ModelParams& params, double t, int n_steps,
                                         std::span<const int> qubit_map) {
  params.validate();
  if (n_steps < 1) throw std::invalid_argument("trotterized_propagator: n_steps must be >= 1");
  if (!std::isfinite(t)) throw std::invalid_argument("trotterized_propagator: t must be finite");
  std::vector<int> identity(static_cast<std::size_t>(params.n_qubits()));
  std::iota(identity.begin(), identity.end(), 0);
  if (qubit_map.empty()) qubit_map = identity;
  if (static_cast<int>(qubit_map.size()) != params.n_qubits()) {
    throw std::invalid_argument("trotterized_propagator: qubit map size differs from model size");
  }
  std::vector<Gate> gates;
  if (t == 0.0) return gates;
  const double dt = t / n_steps;
  const int s = qubit_map[0];
  for (int step = 0; step < n_steps; ++step) {
    if (params.delta != 0.0) gates.push_back(Gate::make(GateKind::RX, {s}, params.delta * dt));
    if (params.omega != 0.0) gates.push_back(Gate::make(GateKind::RZ, {s}, params.omega * dt));
    for (int i = 0; i < params.n_env(); ++i) {
      if (params.couplings[i] == 0.0) continue;
      gates.push_back(Gate::make(GateKind::RXX, {s, qubit_map[i + 1]}, 2.0 * params.couplings[i] * dt));
    }
  }
  return gates;
}

CycleTestLayout CycleTestLayout::for_model(const ModelParams& params) {
  params.validate();
  const int m = params.n_qubits();
  CycleTestLayout l;
  int next = 1;
  auto take = [&next](int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    std::iota(out.begin(), out.end(), next);
    next += count;
    return out;
  };
  l.test = 0;
  l.reg_a = take(m);
  l.bell_a = take(params.n_env());
  l.reg_psi = take(m);
  l.reg_b = take(m);
  l.bell_b = take(params.n_env());
  l.n_qubits = next;
  return l;
}

int cycle_test_scale(const ModelParams& params) { return 1 << (2 * params.n_env()); }

std::vector<GateKind> preparation_sequence(const QubitKet& ket) {
  using K = GateKind;
  static const std::vector<std::vector<GateKind>> kFamily{
      {}, {K::X}, {K::H}, {K::X, K::H}, {K::H, K::S}, {K::X, K::H, K::S}};
  const QubitKet target = ket / ket.norm();
  for (const auto& seq : kFamily) {
    if (std::abs(apply_sequence(seq).dot(target)) > 1.0 - 1e-9) return seq;
  }
  throw UnsupportedPreparation("state (" + std::to_string(target[0].real()) + "," + std::to_string(target[0].imag()) +
                               "; " + std::to_string(target[1].real()) + "," + std::to_string(target[1].imag()) +
                               ") is not a Pauli eigenstate reachable from |0> with X, H, S");
}

std::vector<Gate> controlled_cycle(int control, std::span<const int> reg_a, std::span<const int> reg_psi,
                                   std::span<const int> reg_b) {
  if (reg_a.size() != reg_psi.size() || reg_psi.size() != reg_b.size()) {
    throw std::invalid_argument("controlled_cycle: registers must have equal size");
  }
  std::vector<Gate> gates;
  for (std::size_t k = 0; k < reg_psi.size(); ++k) gates.push_back(Gate::make(GateKind::CSWAP, {control, reg_psi[k], reg_b[k]}));
  for (std::size_t k = 0; k < reg_a.size(); ++k) gates.push_back(Gate::make(GateKind::CSWAP, {control, reg_a[k], reg_psi[k]}));
  return gates;
}

Circuit build_cycle_test(const MeasurementSetting& setting, const ModelParams& params, int outcome_a,
                         int outcome_b, Part part, int n_trotter) {
  setting.validate(params);
  if (n_trotter < 1) throw std::invalid_argument("build_cycle_test: n_trotter must be >= 1");
  if (outcome_a < 0 || outcome_a > 1 || outcome_b < 0 || outcome_b > 1) {
    throw std::out_of_range("build_cycle_test: outcomes must be 0 or 1");
  }
  const CycleTestLayout l = CycleTestLayout::for_model(params);
  Circuit c;
  c.n_qubits = l.n_qubits;
  c.measured_qubit = l.test;
  auto& g = c.gates;

  // Register A: projector ket on site_a, every other model qubit maximally
  // mixed through a Bell partner.
  int partner = 0;
  for (int k = 0; k < params.n_qubits(); ++k) {
    if (k == setting.site_a) {
      append_preparation(g, setting.a.ket(outcome_a), l.reg_a[k]);
    } else {
      g.push_back(Gate::make(GateKind::H, {l.bell_a[partner]}));
      g.push_back(Gate::make(GateKind::CNOT, {l.bell_a[partner], l.reg_a[k]}));
      ++partner;
    }
  }
  for (int k = 0; k < params.n_qubits(); ++k) append_preparation(g, setting.initial[k], l.reg_psi[k]);
  partner = 0;
  for (int k = 0; k < params.n_qubits(); ++k) {
    if (k == setting.site_b) {
      append_preparation(g, setting.b.ket(outcome_b), l.reg_b[k]);
    } else {
      g.push_back(Gate::make(GateKind::H, {l.bell_b[partner]}));
      g.push_back(Gate::make(GateKind::CNOT, {l.bell_b[partner], l.reg_b[k]}));
      ++partner;
    }
  }

  // exp(+iH tau) on A evolves the prepared projector into A(tau).
  if (setting.time_a != 0.0) {
    const auto prop = trotterized_propagator(params, -setting.time_a, n_trotter, l.reg_a);
    g.insert(g.end(), prop.begin(), prop.end());
  }

  g.push_back(Gate::make(GateKind::H, {l.test}));
  const auto cycle = controlled_cycle(l.test, l.reg_a, l.reg_psi, l.reg_b);
  g.insert(g.end(), cycle.begin(), cycle.end());
  if (part == Part::IMAG) g.push_back(Gate::make(kImagSign > 0 ? GateKind::S : GateKind::S_DAGGER, {l.test}));
  g.push_back(Gate::make(GateKind::H, {l.test}));
  c.validate();
  return c;
}

StateVector simulate(const Circuit& circuit, const std::optional<StateVector>& initial) {
  circuit.validate();
  Vector s = zero_state(circuit.n_qubits);
  if (initial) {
    if (initial->n_qubits() != circuit.n_qubits) throw std::invalid_argument("simulate: initial state size mismatch");
    s = initial->amplitudes();
  }
  for (const Gate& g : circuit.gates) kernels::apply_gate(s, circuit.n_qubits, g);
  return StateVector(std::move(s));
}

StateVector simulate(const Circuit& circuit, std::span<const Fault> faults) {
  circuit.validate();
  if (!std::is_sorted(faults.begin(), faults.end(),
                      [](const Fault& a, const Fault& b) { return a.after_gate < b.after_gate; })) {
    throw std::invalid_argument("simulate: faults must be ordered by gate");
  }
  return StateVector(TrajectoryRunner(circuit).run(faults));
}

StateVector simulate(const Circuit& circuit, const NoiseModel& noise, CounterRng& rng) {
  noise.validate();
  const auto faults = sample_faults(circuit, noise, rng);
  return simulate(circuit, faults);
}

double ancilla_p0(const Circuit& circuit) {
  circuit.validate();
  Vector s = zero_state(circuit.n_qubits);
  for (const Gate& g : circuit.gates) kernels::apply_gate(s, circuit.n_qubits, g);
  return kernels::prob_zero(s, circuit.n_qubits, circuit.measured_qubit);
}

double ancilla_p0(const Circuit& circuit, const NoiseModel& noise, int n_trajectories, CounterRng& rng) {
  circuit.validate();
  noise.validate();
  if (n_trajectories < 1) throw std::invalid_argument("ancilla_p0: n_trajectories must be >= 1");
  const TrajectoryRunner runner(circuit);
  const std::uint64_t base = rng();
  std::vector<double> shift(static_cast<std::size_t>(n_trajectories), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int t = 0; t < n_trajectories; ++t) {
    CounterRng traj(base, static_cast<std::uint64_t>(t));
    const auto faults = sample_faults(circuit, noise, traj);
    if (!faults.empty()) shift[t] = runner.p0(faults) - runner.clean_p0();
  }
  // Summing deviations keeps the fault-free case bit-identical to the exact path.
  double acc = 0.0;
  for (double d : shift) acc += d;
  const double p0 = std::clamp(runner.clean_p0() + acc / n_trajectories, 0.0, 1.0);
  return apply_readout(p0, noise);
}

Complex decode_quasiprobability(double p0_real, double p0_imag, int scale) {
  return {scale * (2.0 * p0_real - 1.0), scale * kImagSign * (2.0 * p0_imag - 1.0)};
}

CycleTestProbabilities cycle_test_probabilities(const MeasurementSetting& setting, const ModelParams& params,
                                                const EstimateOptions& options, CounterRng& rng) {
  const bool noisy = options.noise && !options.noise->is_noiseless();
  if (noisy && options.n_trajectories < 1) throw std::invalid_argument("estimate: n_trajectories must be >= 1");
  CycleTestProbabilities probs;
  probs.scale = cycle_test_scale(params);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (Part part : {Part::REAL, Part::IMAG}) {
        const Circuit c = build_cycle_test(setting, params, i, j, part, options.n_trotter);
        const double p0 = noisy ? ancilla_p0(c, *options.noise, options.n_trajectories, rng) : ancilla_p0(c);
        (part == Part::REAL ? probs.real : probs.imag)[i][j] = p0;
      }
    }
  }
  return probs;
}

KdEstimate sample_estimate(const CycleTestProbabilities& probs, std::optional<std::uint64_t> shots_per_part,
                           CounterRng& rng) {
  if (shots_per_part && *shots_per_part < 1) throw std::invalid_argument("estimate: shot count must be >= 1");
  KdEstimate est;
  est.probabilities = probs;
  const double scale = probs.scale;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double observed[2] = {probs.real[i][j], probs.imag[i][j]};
      double se[2] = {0.0, 0.0};
      if (shots_per_part) {
        const std::uint64_t n = *shots_per_part;
        for (int k = 0; k < 2; ++k) {
          std::binomial_distribution<std::uint64_t> dist(n, std::clamp(observed[k], 0.0, 1.0));
          const std::uint64_t zeros = dist(rng);
          est.shots.push_back({n, zeros, k == 0 ? Part::REAL : Part::IMAG, i, j});
          observed[k] = static_cast<double>(zeros) / static_cast<double>(n);
          se[k] = scale * 2.0 * std::sqrt(observed[k] * (1.0 - observed[k]) / static_cast<double>(n));
        }
      }
      est.q[i][j] = decode_quasiprobability(observed[0], observed[1], probs.scale);
      est.se_re[i][j] = se[0];
      est.se_im[i][j] = se[1];
    }
  }
  return est;
}

KdEstimate estimate_kd(const MeasurementSetting& setting, const ModelParams& params, const EstimateOptions& options,
                       CounterRng& rng) {
  const CycleTestProbabilities probs = cycle_test_probabilities(setting, params, options, rng);
  return sample_estimate(probs, options.shots_per_part, rng);
}

double rmse(const QuasiTable& a, const QuasiTable& b) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) acc += std::norm(a[i][j] - b[i][j]);
  }
  return std::sqrt(acc / 4.0);
}

}  // namespace kdlab
