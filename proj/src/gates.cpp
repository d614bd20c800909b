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

#include "kdlab/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kdlab/statevector_kernels.hpp"

namespace kdlab {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::S:
      return "S";
    case GateKind::S_DAGGER:
      return "S_DAGGER";
    case GateKind::RX:
      return "RX";
    case GateKind::RZ:
      return "RZ";
    case GateKind::RXX:
      return "RXX";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::CSWAP:
      return "CSWAP";
  }
  return "?";
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::RXX:
    case GateKind::CNOT:
      return 2;
    case GateKind::CSWAP:
      return 3;
    default:
      return 1;
  }
}

Gate Gate::make(GateKind kind, std::initializer_list<int> qubits, double theta) {
  const int arity = gate_arity(kind);
  if (static_cast<int>(qubits.size()) != arity) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " takes " + std::to_string(arity) + " qubit(s)");
  }
  if (!std::isfinite(theta)) throw std::invalid_argument("gate angle must be finite");
  Gate g;
  g.kind = kind;
  g.theta = theta;
  std::copy(qubits.begin(), qubits.end(), g.qubits.begin());
  for (int a = 0; a < arity; ++a) {
    if (g.qubits[a] < 0) throw std::invalid_argument("negative qubit index");
    for (int b = a + 1; b < arity; ++b) {
      if (g.qubits[a] == g.qubits[b]) throw std::invalid_argument("gate qubits must be distinct");
    }
  }
  return g;
}

Matrix Gate::matrix() const {
  const Complex i(0.0, 1.0);
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  switch (kind) {
    case GateKind::H:
      return Matrix(pauli::X() + pauli::Z()) / std::sqrt(2.0);
    case GateKind::X:
      return pauli::X();
    case GateKind::S:
      return Eigen::Vector2cd(1.0, i).asDiagonal().toDenseMatrix();
    case GateKind::S_DAGGER:
      return Eigen::Vector2cd(1.0, -i).asDiagonal().toDenseMatrix();
    case GateKind::RX:
      return c * pauli::I() - i * s * pauli::X();
    case GateKind::RZ:
      return Eigen::Vector2cd(std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2)).asDiagonal().toDenseMatrix();
    case GateKind::RXX: {
      const Matrix xx = kron(qubit_operator(pauli::X()), qubit_operator(pauli::X())).matrix();
      return c * Matrix::Identity(4, 4) - i * s * xx;
    }
    case GateKind::CNOT: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case GateKind::CSWAP: {
      Matrix m = Matrix::Identity(8, 8);
      // |1 a b>: swap |101> and |110>.
      m(5, 5) = m(6, 6) = 0.0;
      m(5, 6) = m(6, 5) = 1.0;
      return m;
    }
  }
  throw std::logic_error("unknown gate kind");
}

int Gate::cnot_count() const {
  switch (kind) {
    case GateKind::CNOT:
      return 1;
    case GateKind::RXX:
      return 2;
    case GateKind::CSWAP:
      return 8;
    default:
      return 0;
  }
}

bool Gate::is_propagation() const {
  return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::RXX;
}

void Circuit::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("circuit: needs at least one qubit");
  if (measured_qubit < 0 || measured_qubit >= n_qubits) {
    throw std::invalid_argument("circuit: measured qubit out of range");
  }
  for (const Gate& g : gates) {
    for (int a = 0; a < g.arity(); ++a) {
      if (g.qubits[a] < 0 || g.qubits[a] >= n_qubits) {
        throw std::invalid_argument("circuit: gate " + std::string(gate_name(g.kind)) + " uses qubit " +
                                    std::to_string(g.qubits[a]) + " outside register of " +
                                    std::to_string(n_qubits));
      }
    }
  }
}

std::string Circuit::to_text() const {
  std::string out;
  char buf[64];
  for (const Gate& g : gates) {
    out += gate_name(g.kind);
    for (int a = 0; a < g.arity(); ++a) out += " " + std::to_string(g.qubits[a]);
    if (g.is_propagation()) {
      std::snprintf(buf, sizeof buf, " %.17g", g.theta);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

int Circuit::count(GateKind kind) const {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

DenseOperator compose(const std::vector<Gate>& gates, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  Vector col(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    col = u.col(c);
    for (const Gate& g : gates) kernels::apply_gate(col, n_qubits, g);
    u.col(c) = col;
  }
  return DenseOperator(std::move(u));
}

}  // namespace kdlab
