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
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "kdlab/numerics.hpp"

namespace kdlab {

enum class GateKind { H, X, S, S_DAGGER, RX, RZ, RXX, CNOT, CSWAP };

std::string_view gate_name(GateKind kind);
int gate_arity(GateKind kind);

/// One gate on indexed qubits. RX(t) = exp(-i t X/2), RZ(t) = exp(-i t Z/2),
/// RXX(t) = exp(-i t XX/2). CNOT is (control, target); CSWAP is
/// (control, a, b).
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 3> qubits{};
  double theta = 0.0;

  /// Throws std::invalid_argument on wrong arity, repeated qubits or a
  /// non-finite angle.
  static Gate make(GateKind kind, std::initializer_list<int> qubits, double theta = 0.0);

  int arity() const { return gate_arity(kind); }
  /// 2^arity unitary, first listed qubit most significant.
  Matrix matrix() const;
  /// CNOTs in a standard decomposition (RXX: 2, CSWAP: 8); used for
  /// reporting and for scaling multi-qubit error rates.
  int cnot_count() const;
  bool is_propagation() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int measured_qubit = 0;

  /// Throws std::invalid_argument if any index is out of range.
  void validate() const;
  /// One gate per line: KIND q0 [q1 [q2]] [theta].
  std::string to_text() const;
  int count(GateKind kind) const;
};

/// Unitary of a gate list on `n_qubits` qubits (dense; small registers only).
DenseOperator compose(const std::vector<Gate>& gates, int n_qubits);

}  // namespace kdlab
