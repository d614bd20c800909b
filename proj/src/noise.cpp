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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdlab {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("noise: ") + what + " must lie in [0, 1]");
}

double decay(double duration, double time_constant) {
  if (duration <= 0.0 || std::isinf(time_constant)) return 0.0;
  return 1.0 - std::exp(-duration / time_constant);
}

}  // namespace

void NoiseModel::validate() const {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(p_readout, "p_readout");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw std::invalid_argument("noise: T1 and T2 must be positive");
  if (!(time_1q >= 0.0) || !(time_2q >= 0.0) || !std::isfinite(time_1q) || !std::isfinite(time_2q)) {
    throw std::invalid_argument("noise: gate times must be finite and >= 0");
  }
}

double NoiseModel::gate_error(const Gate& g) const {
  switch (g.arity()) {
    case 1:
      return p1;
    case 2:
      return p2;
    default:
      return 1.0 - std::pow(1.0 - p2, g.cnot_count());
  }
}

double NoiseModel::gate_time(const Gate& g) const {
  switch (g.arity()) {
    case 1:
      return time_1q;
    case 2:
      return time_2q;
    default:
      return g.cnot_count() * time_2q;
  }
}

PauliTwirl NoiseModel::relaxation(double duration) const {
  PauliTwirl tw;
  const double amp = decay(duration, t1);
  tw.px = tw.py = amp / 4.0;
  tw.pz = std::max(0.0, decay(duration, t2) / 2.0 - amp / 4.0);
  return tw;
}

NoiseModel NoiseModel::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor)) throw std::invalid_argument("noise: scale factor must be >= 0");
  NoiseModel m = *this;
  m.name = name + "x" + std::to_string(factor);
  m.p1 = std::min(1.0, p1 * factor);
  m.p2 = std::min(1.0, p2 * factor);
  m.p_readout = std::min(1.0, p_readout * factor);
  const double inf = std::numeric_limits<double>::infinity();
  m.t1 = factor == 0.0 ? inf : t1 / factor;
  m.t2 = factor == 0.0 ? inf : t2 / factor;
  return m;
}

bool NoiseModel::is_noiseless() const {
  const bool no_relax = (std::isinf(t1) && std::isinf(t2)) || (time_1q == 0.0 && time_2q == 0.0);
  return p1 == 0.0 && p2 == 0.0 && p_readout == 0.0 && no_relax;
}

NoiseModel NoiseModel::none() {
  NoiseModel m;
  m.name = "none";
  return m;
}

NoiseModel NoiseModel::from_device(const reference::DeviceParameters& d, std::string name) {
  NoiseModel m;
  m.name = std::move(name);
  m.p1 = d.error_1q;
  m.p2 = d.error_2q;
  // SPAM is not split into preparation and measurement parts; it is
  // charged entirely to readout.
  m.p_readout = d.error_readout > 0.0 ? d.error_readout : d.error_spam;
  m.t1 = d.t1;
  m.t2 = d.t2;
  m.time_1q = d.time_1q;
  m.time_2q = d.time_2q;
  return m;
}

NoiseModel NoiseModel::table4_ibm() { return from_device(reference::kIbmTorino, "table4-ibm"); }

NoiseModel NoiseModel::table4_ionq() { return from_device(reference::kIonqAria1, "table4-ionq"); }

NoiseModel NoiseModel::preset(std::string_view name) {
  if (name == "none") return none();
  if (name == "table4-ibm") return table4_ibm();
  if (name == "table4-ionq") return table4_ionq();
  throw std::invalid_argument("unknown noise preset '" + std::string(name) + "'");
}

std::vector<Fault> sample_faults(const Circuit& circuit, const NoiseModel& noise, CounterRng& rng) {
  std::vector<Fault> faults;
  for (int gi = 0; gi < static_cast<int>(circuit.gates.size()); ++gi) {
    const Gate& g = circuit.gates[gi];
    const double p = noise.gate_error(g);
    if (p > 0.0 && rng.uniform() < p) {
      const int arity = g.arity();
      const auto strings = (std::uint64_t{1} << (2 * arity)) - 1;
      // Uniform over the 4^k - 1 non-identity strings, base-4 digit per qubit.
      auto code = 1 + static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(strings));
      code = std::min(code, strings);
      for (int a = 0; a < arity; ++a) {
        const int pauli = static_cast<int>((code >> (2 * a)) & 3u);
        if (pauli != 0) faults.push_back({gi, g.qubits[a], pauli});
      }
    }
    const PauliTwirl tw = noise.relaxation(noise.gate_time(g));
    const double total = tw.px + tw.py + tw.pz;
    if (total <= 0.0) continue;
    for (int q = 0; q < circuit.n_qubits; ++q) {
      const double u = rng.uniform();
      if (u >= total) continue;
      const int pauli = u < tw.px ? 1 : (u < tw.px + tw.py ? 2 : 3);
      faults.push_back({gi, q, pauli});
    }
  }
  return faults;
}

double apply_readout(double p0, const NoiseModel& noise) {
  return (1.0 - noise.p_readout) * p0 + noise.p_readout * (1.0 - p0);
}

}  // namespace kdlab
