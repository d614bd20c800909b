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

#include "kdlab/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdlab {

void ModelParams::validate() const {
  if (couplings.empty()) throw std::invalid_argument("model: at least one environment qubit required");
  if (n_qubits() > kNumeric.max_qubits) {
    throw std::invalid_argument("model: " + std::to_string(n_qubits()) + " qubits exceeds limit");
  }
  if (!std::isfinite(delta)) throw std::invalid_argument("model: delta must be finite");
  if (!std::isfinite(omega) || omega < 0.0) throw std::invalid_argument("model: omega must be finite and >= 0");
  for (double j : couplings) {
    if (!std::isfinite(j)) throw std::invalid_argument("model: couplings must be finite");
  }
}

DenseOperator interaction_term(const ModelParams& params) {
  params.validate();
  Matrix v = Matrix::Zero(Eigen::Index{1} << params.n_env(), Eigen::Index{1} << params.n_env());
  for (int i = 0; i < params.n_env(); ++i) {
    v += params.couplings[i] * embed(pauli::X(), i, params.n_env()).matrix();
  }
  return kron(qubit_operator(pauli::X()), DenseOperator(std::move(v)));
}

DenseOperator build_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n = params.n_qubits();
  Matrix h = 0.5 * params.delta * embed(pauli::X(), 0, n).matrix() +
             0.5 * params.omega * embed(pauli::Z(), 0, n).matrix();
  const Matrix xs = embed(pauli::X(), 0, n).matrix();
  for (int i = 0; i < params.n_env(); ++i) {
    h += params.couplings[i] * xs * embed(pauli::X(), i + 1, n).matrix();
  }
  return DenseOperator(std::move(h));
}

DenseOperator propagator(const ModelParams& params, double t) {
  return matexp_i(build_hamiltonian(params), -t);
}

DenseOperator heisenberg_project(const DenseOperator& proj, const ModelParams& params, double t) {
  if (!is_projector(proj)) throw std::invalid_argument("heisenberg_project: input is not a projector");
  if (proj.n_qubits() != params.n_qubits()) {
    throw std::invalid_argument("heisenberg_project: projector and model sizes differ");
  }
  if (t == 0.0) return proj;
  const DenseOperator u = matexp_i(build_hamiltonian(params), t);
  return u * proj * u.adjoint();
}

bool is_darwinistic(const ModelParams& params) {
  params.validate();
  return params.omega == 0.0;
}

}  // namespace kdlab
