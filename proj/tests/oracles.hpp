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

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>

#include "kdlab/kdq.hpp"
#include "kdlab/model.hpp"
#include "kdlab/numerics.hpp"

namespace kdlab::oracle {

// Values produced with scipy.linalg.expm on the 8x8 Hamiltonian
// (delta 1, omega 1.5, J (1, 1)), Z on E1, Y on E2, |000>.
struct FrozenKd {
  double tau;
  // row-major q_00, q_01, q_10, q_11
  std::array<double, 4> q_re;
  std::array<double, 4> q_im;
  std::array<double, 4> p;
};

inline const std::array<FrozenKd, 2> kFrozen{{
    {2.21,
     {0.2129868241019362, 0.21298682410193598, 0.2870131758980635, 0.2870131758980634},
     {0.13851609406058737, -0.13851609406058737, -0.13851609406058724, 0.13851609406058724},
     {0.21968476254540334, 0.2062888856584687, 0.29371111434153063, 0.280315237454596}},
    {3.66,
     {0.2518648466018414, 0.2518648466018414, 0.24813515339815817, 0.24813515339815845},
     {-0.24687712251247687, 0.24687712251247687, 0.24687712251247676, -0.24687712251247676},
     {0.25189551736442206, 0.2518341758392607, 0.2481658241607387, 0.24810448263557766}},
}};

inline ModelParams experiment_params() { return ModelParams{1.0, 1.5, {1.0, 1.0}}; }

// exp(-i H t) through a general (non-Hermitian) eigendecomposition.
inline Matrix eig_propagator(const Matrix& h, double t) {
  Eigen::ComplexEigenSolver<Matrix> es(h);
  const Matrix v = es.eigenvectors();
  Vector phases = (es.eigenvalues() * Complex(0.0, -t)).array().exp();
  return v * phases.asDiagonal() * v.inverse();
}

// exp(-i theta P) = cos(theta) I - i sin(theta) P for any Pauli string P.
inline Matrix pauli_rotation(const Matrix& p, double theta) {
  return std::cos(theta) * Matrix::Identity(p.rows(), p.cols()) - Complex(0.0, std::sin(theta)) * p;
}

// Omega = 0: the Hamiltonian is a sum of commuting Pauli strings, so the
// propagator is their ordered product of closed-form rotations.
inline Matrix commuting_propagator(const ModelParams& params, double t) {
  const int n = params.n_qubits();
  Matrix u = pauli_rotation(embed(pauli::X(), 0, n).matrix(), params.delta * t / 2.0);
  for (int i = 0; i < params.n_env(); ++i) {
    const Matrix xx = (embed(pauli::X(), 0, n) * embed(pauli::X(), i + 1, n)).matrix();
    u = u * pauli_rotation(xx, params.couplings[i] * t);
  }
  return u;
}

// Brute-force q_ij = <psi| B_j U^dag A_i U |psi> with U from the eigen oracle.
inline QuasiTable brute_force_kd(const MeasurementSetting& s, const ModelParams& params) {
  const int n = params.n_qubits();
  const Matrix u = eig_propagator(build_hamiltonian(params).matrix(), s.time_a);
  const Vector psi = s.initial_state().amplitudes();
  QuasiTable q{};
  for (int i = 0; i < 2; ++i) {
    const Matrix a = u.adjoint() * embed_projector(s.a.projector(i), s.site_a, n).matrix() * u;
    for (int j = 0; j < 2; ++j) {
      const Matrix b = embed_projector(s.b.projector(j), s.site_b, n).matrix();
      q[i][j] = psi.dot(b * a * psi);
    }
  }
  return q;
}

}  // namespace kdlab::oracle
