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

#include "kdlab/statevector_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace kdlab::kernels {
namespace {

// Spread k over the index bits not set in `holes` (a sorted list of single-bit masks).
template <std::size_t N>
inline std::uint64_t deposit(std::uint64_t k, const std::array<std::uint64_t, N>& holes) {
  for (std::uint64_t h : holes) k = ((k & ~(h - 1)) << 1) | (k & (h - 1));
  return k;
}

template <std::size_t N>
std::array<std::uint64_t, N> sorted(std::array<std::uint64_t, N> m) {
  std::sort(m.begin(), m.end());
  return m;
}

void apply_diag(Vector& s, std::uint64_t mask, Complex d0, Complex d1) {
  const std::array<std::uint64_t, 1> holes{mask};
  const auto count = static_cast<std::uint64_t>(s.size()) >> 1;
  const bool skip0 = d0 == Complex(1.0, 0.0);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t i = deposit(k, holes);
    if (!skip0) s[i] *= d0;
    s[i | mask] *= d1;
  }
}

void apply_rxx(Vector& s, std::uint64_t m0, std::uint64_t m1, double theta) {
  const Complex c(std::cos(theta / 2), 0.0);
  const Complex ms(0.0, -std::sin(theta / 2));
  const auto holes = sorted(std::array<std::uint64_t, 2>{m0, m1});
  const auto count = static_cast<std::uint64_t>(s.size()) >> 2;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t i = deposit(k, holes);
    const std::uint64_t j = i | m0 | m1;
    Complex a = s[i], b = s[j];
    s[i] = c * a + ms * b;
    s[j] = ms * a + c * b;
    a = s[i | m0];
    b = s[i | m1];
    s[i | m0] = c * a + ms * b;
    s[i | m1] = ms * a + c * b;
  }
}

}  // namespace

void apply_1q(Vector& s, int n, int q, const Eigen::Matrix2cd& m) {
  const std::uint64_t mask = bit(n, q);
  const std::array<std::uint64_t, 1> holes{mask};
  const auto count = static_cast<std::uint64_t>(s.size()) >> 1;
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t i = deposit(k, holes);
    const Complex a0 = s[i];
    const Complex a1 = s[i | mask];
    s[i] = m00 * a0 + m01 * a1;
    s[i | mask] = m10 * a0 + m11 * a1;
  }
}

void apply_2q(Vector& s, int n, int q0, int q1, const Eigen::Matrix4cd& m) {
  const std::uint64_t m0 = bit(n, q0);
  const std::uint64_t m1 = bit(n, q1);
  const auto holes = sorted(std::array<std::uint64_t, 2>{m0, m1});
  const auto count = static_cast<std::uint64_t>(s.size()) >> 2;
  Eigen::Vector4cd local;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t i = deposit(k, holes);
    const std::uint64_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
    for (int r = 0; r < 4; ++r) local[r] = s[idx[r]];
    const Eigen::Vector4cd out = m * local;
    for (int r = 0; r < 4; ++r) s[idx[r]] = out[r];
  }
}

void apply_cnot(Vector& s, int n, int control, int target) {
  const std::uint64_t c = bit(n, control);
  const std::uint64_t t = bit(n, target);
  const auto holes = sorted(std::array<std::uint64_t, 2>{c, t});
  const auto count = static_cast<std::uint64_t>(s.size()) >> 2;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t i = deposit(k, holes) | c;
    std::swap(s[i], s[i | t]);
  }
}

void apply_cswap(Vector& s, int n, int control, int a, int b) {
  const std::uint64_t c = bit(n, control);
  const std::uint64_t ma = bit(n, a);
  const std::uint64_t mb = bit(n, b);
  const auto holes = sorted(std::array<std::uint64_t, 3>{c, ma, mb});
  const auto count = static_cast<std::uint64_t>(s.size()) >> 3;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t i = deposit(k, holes) | c;
    std::swap(s[i | ma], s[i | mb]);
  }
}

void apply_pauli(Vector& s, int n, int q, int pauli) {
  const std::uint64_t mask = bit(n, q);
  const std::array<std::uint64_t, 1> holes{mask};
  const auto count = static_cast<std::uint64_t>(s.size()) >> 1;
  const Complex i(0.0, 1.0);
  switch (pauli) {
    case 1:
      for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t j = deposit(k, holes);
        std::swap(s[j], s[j | mask]);
      }
      return;
    case 2:
      for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t j = deposit(k, holes);
        const Complex a0 = s[j];
        s[j] = -i * s[j | mask];
        s[j | mask] = i * a0;
      }
      return;
    case 3:
      for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t j = deposit(k, holes) | mask;
        s[j] = -s[j];
      }
      return;
    default:
      return;
  }
}

void apply_gate(Vector& s, int n, const Gate& g) {
  const Complex i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::CNOT:
      apply_cnot(s, n, g.qubits[0], g.qubits[1]);
      return;
    case GateKind::CSWAP:
      apply_cswap(s, n, g.qubits[0], g.qubits[1], g.qubits[2]);
      return;
    case GateKind::RXX:
      apply_rxx(s, bit(n, g.qubits[0]), bit(n, g.qubits[1]), g.theta);
      return;
    case GateKind::X:
      apply_pauli(s, n, g.qubits[0], 1);
      return;
    case GateKind::S:
      apply_diag(s, bit(n, g.qubits[0]), 1.0, i);
      return;
    case GateKind::S_DAGGER:
      apply_diag(s, bit(n, g.qubits[0]), 1.0, -i);
      return;
    case GateKind::RZ:
      apply_diag(s, bit(n, g.qubits[0]), std::polar(1.0, -g.theta / 2), std::polar(1.0, g.theta / 2));
      return;
    case GateKind::H: {
      const std::uint64_t mask = bit(n, g.qubits[0]);
      const std::array<std::uint64_t, 1> holes{mask};
      const auto count = static_cast<std::uint64_t>(s.size()) >> 1;
      const double r = 1.0 / std::sqrt(2.0);
      for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t j = deposit(k, holes);
        const Complex a0 = s[j];
        const Complex a1 = s[j | mask];
        s[j] = (a0 + a1) * r;
        s[j | mask] = (a0 - a1) * r;
      }
      return;
    }
    case GateKind::RX: {
      const Complex c(std::cos(g.theta / 2), 0.0);
      const Complex ms(0.0, -std::sin(g.theta / 2));
      Eigen::Matrix2cd m;
      m << c, ms, ms, c;
      apply_1q(s, n, g.qubits[0], m);
      return;
    }
  }
}

double prob_zero(const Vector& s, int n, int q) {
  const std::uint64_t mask = bit(n, q);
  double p = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(s.size()); ++i) {
    if (!(i & mask)) p += std::norm(s[i]);
  }
  return p;
}

}  // namespace kdlab::kernels
