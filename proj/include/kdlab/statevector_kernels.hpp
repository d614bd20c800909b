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

#include <cstdint>

#include "kdlab/gates.hpp"
#include "kdlab/numerics.hpp"

// In-place amplitude kernels. Qubit q of an n-qubit register is bit
// (n - 1 - q) of the basis index.
namespace kdlab::kernels {

inline std::uint64_t bit(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

void apply_1q(Vector& s, int n, int q, const Eigen::Matrix2cd& m);
/// `m` acts on |b0 b1> with b0 the bit of q0.
void apply_2q(Vector& s, int n, int q0, int q1, const Eigen::Matrix4cd& m);
void apply_cnot(Vector& s, int n, int control, int target);
void apply_cswap(Vector& s, int n, int control, int a, int b);
/// pauli: 1 = X, 2 = Y, 3 = Z; 0 is a no-op.
void apply_pauli(Vector& s, int n, int q, int pauli);
void apply_gate(Vector& s, int n, const Gate& g);

/// Probability that qubit q reads 0.
double prob_zero(const Vector& s, int n, int q);

}  // namespace kdlab::kernels
