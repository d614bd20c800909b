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

#include <vector>

#include "kdlab/numerics.hpp"

namespace kdlab {

/// Parameters of the system-environment Hamiltonian
///
///   H = (delta/2) X_S + (omega/2) Z_S + X_S (x) sum_i J_i X_{E_i}
///
/// The system qubit S is qubit 0; environment qubit E_i is qubit i.
struct ModelParams {
  double delta = 1.0;
  double omega = 0.0;
  std::vector<double> couplings{1.0, 1.0};

  int n_env() const { return static_cast<int>(couplings.size()); }
  int n_qubits() const { return 1 + n_env(); }

  /// Throws std::invalid_argument on an empty environment, a negative or
  /// non-finite field, or more qubits than the numeric limit allows.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

DenseOperator build_hamiltonian(const ModelParams& params);

/// Returns the part of H that couples S to the environment, X_S (x) V with
/// V = sum_i J_i X_{E_i}, built term by term from V.
DenseOperator interaction_term(const ModelParams& params);

/// exp(-i H t).
DenseOperator propagator(const ModelParams& params, double t);

/// Heisenberg-picture projector exp(iHt) P exp(-iHt). Throws
/// std::invalid_argument if `proj` is not a projector.
DenseOperator heisenberg_project(const DenseOperator& proj, const ModelParams& params, double t);

/// True iff the transverse field vanishes exactly.
///
/// The predicate is structural: with omega == 0 every term of H commutes
/// with X_S, so X_S is a pointer observable and disjoint environment
/// measurements stay compatible at all times. Asymptotic objectivity also
/// needs a large environment and generic couplings; this finite model with
/// equal couplings is still reported as Darwinistic.
bool is_darwinistic(const ModelParams& params);

}  // namespace kdlab
