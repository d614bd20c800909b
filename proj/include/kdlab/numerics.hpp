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

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

namespace kdlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerances and size limits shared by every module.
///
/// `structural` guards single-step properties (hermiticity, unitarity, norm).
/// `compositional` guards identities that accumulate rounding across several
/// products or an eigendecomposition (group laws, KD/TPM identities).
struct NumericConfig {
  double structural = 1e-12;
  double compositional = 1e-10;
  /// Imaginary parts or negativities below this count as classical.
  double classical = 1e-10;
  int max_qubits = 14;
};

inline constexpr NumericConfig kNumeric{};

/// Dense operator on `n_qubits` qubits, qubit 0 being the most significant
/// tensor factor.
class DenseOperator {
 public:
  DenseOperator() = default;
  /// Throws std::invalid_argument unless `m` is square with a power-of-two
  /// dimension within the configured qubit limit.
  explicit DenseOperator(Matrix m);

  static DenseOperator identity(int n_qubits);
  static DenseOperator zero(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  DenseOperator adjoint() const { return DenseOperator(m_.adjoint(), n_qubits_); }
  Complex trace() const { return m_.trace(); }

  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(Complex s, const DenseOperator& a);

 private:
  DenseOperator(Matrix m, int n_qubits) : m_(std::move(m)), n_qubits_(n_qubits) {}

  Matrix m_;
  int n_qubits_ = 0;
};

/// Normalized pure state on `n_qubits` qubits.
class StateVector {
 public:
  StateVector() = default;
  /// Throws std::invalid_argument unless the length is a power of two and
  /// the norm is 1 within the structural tolerance.
  explicit StateVector(Vector amplitudes);

  /// Rescales `v` to unit norm; throws if `v` is zero.
  static StateVector normalized(Vector v);
  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Tensor product of single-qubit kets, first factor is qubit 0.
  static StateVector product(std::span<const Eigen::Vector2cd> factors);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_[i]; }

  /// Returns U|psi>; `u` must be unitary.
  StateVector evolved(const DenseOperator& u) const;
  DenseOperator density() const;

 private:
  Vector amps_;
  int n_qubits_ = 0;
};

namespace pauli {
Eigen::Matrix2cd I();
Eigen::Matrix2cd X();
Eigen::Matrix2cd Y();
Eigen::Matrix2cd Z();
}  // namespace pauli

/// Wraps a 2x2 matrix as a single-qubit operator.
DenseOperator qubit_operator(const Eigen::Matrix2cd& m);

/// Tensor product a (x) b. Throws std::length_error when the result would
/// exceed the configured qubit limit.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

/// `op` acting on `site` of an `n_total` qubit register, identity elsewhere.
DenseOperator embed(const Eigen::Matrix2cd& op, int site, int n_total);

double max_abs_entry(const Matrix& m);
double hermiticity_error(const DenseOperator& op);
double unitarity_error(const DenseOperator& op);
bool is_hermitian(const DenseOperator& op, double tol = kNumeric.structural);
bool is_unitary(const DenseOperator& op, double tol = kNumeric.structural);
bool is_projector(const DenseOperator& op, double tol = kNumeric.compositional);
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

/// exp(i h t) via Hermitian eigendecomposition. Throws std::invalid_argument
/// if `h` is not Hermitian within tolerance.
DenseOperator matexp_i(const DenseOperator& h, double t);

/// <psi|op|psi>. Throws std::invalid_argument on dimension mismatch.
Complex expectation(const StateVector& state, const DenseOperator& op);

}  // namespace kdlab
