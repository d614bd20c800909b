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

#include "kdlab/numerics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace kdlab {
namespace {

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  if (n > kNumeric.max_qubits) {
    throw std::length_error(std::to_string(n) + " qubits exceeds the configured maximum of " +
                            std::to_string(kNumeric.max_qubits));
  }
  return n;
}

void check_qubit_count(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (n > kNumeric.max_qubits) {
    throw std::length_error(std::to_string(n) + " qubits exceeds the configured maximum of " +
                            std::to_string(kNumeric.max_qubits));
  }
}

}  // namespace

DenseOperator::DenseOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator must be square");
  n_qubits_ = qubits_for_dim(m_.rows());
}

DenseOperator DenseOperator::identity(int n_qubits) {
  check_qubit_count(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return DenseOperator(Matrix::Identity(d, d));
}

DenseOperator DenseOperator::zero(int n_qubits) {
  check_qubit_count(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return DenseOperator(Matrix::Zero(d, d));
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator product: dimension mismatch");
  return DenseOperator(a.m_ * b.m_, a.n_qubits_);
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator sum: dimension mismatch");
  return DenseOperator(a.m_ + b.m_, a.n_qubits_);
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator difference: dimension mismatch");
  return DenseOperator(a.m_ - b.m_, a.n_qubits_);
}

DenseOperator operator*(Complex s, const DenseOperator& a) {
  return DenseOperator(s * a.m_, a.n_qubits_);
}

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  n_qubits_ = qubits_for_dim(amps_.size());
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNumeric.structural) {
    throw std::invalid_argument("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

StateVector StateVector::normalized(Vector v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
  v /= norm;
  return StateVector(std::move(v));
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (static_cast<Eigen::Index>(index) >= d) throw std::out_of_range("basis index out of range");
  Vector v = Vector::Zero(d);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::product(std::span<const Eigen::Vector2cd> factors) {
  if (factors.empty()) throw std::invalid_argument("product state needs at least one factor");
  Vector v = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) {
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] * factors[k][0];
      next[2 * i + 1] = v[i] * factors[k][1];
    }
    v = std::move(next);
  }
  return normalized(std::move(v));
}

StateVector StateVector::evolved(const DenseOperator& u) const {
  if (u.dim() != dim()) throw std::invalid_argument("evolve: dimension mismatch");
  StateVector out;
  out.amps_ = u.matrix() * amps_;
  out.n_qubits_ = n_qubits_;
  return out;
}

DenseOperator StateVector::density() const { return DenseOperator(amps_ * amps_.adjoint()); }

namespace pauli {
Eigen::Matrix2cd I() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd X() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd Y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Eigen::Matrix2cd Z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

DenseOperator qubit_operator(const Eigen::Matrix2cd& m) { return DenseOperator(Matrix(m)); }

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  if (a.n_qubits() + b.n_qubits() > kNumeric.max_qubits) {
    throw std::length_error("kron: result exceeds the configured maximum qubit count");
  }
  const Matrix& am = a.matrix();
  const Matrix& bm = b.matrix();
  Matrix out(am.rows() * bm.rows(), am.cols() * bm.cols());
  for (Eigen::Index r = 0; r < am.rows(); ++r) {
    for (Eigen::Index c = 0; c < am.cols(); ++c) {
      out.block(r * bm.rows(), c * bm.cols(), bm.rows(), bm.cols()) = am(r, c) * bm;
    }
  }
  return DenseOperator(std::move(out));
}

DenseOperator embed(const Eigen::Matrix2cd& op, int site, int n_total) {
  if (n_total < 1 || n_total > kNumeric.max_qubits) {
    throw std::length_error("embed: invalid register size " + std::to_string(n_total));
  }
  if (site < 0 || site >= n_total) {
    throw std::out_of_range("embed: site " + std::to_string(site) + " outside register of " +
                            std::to_string(n_total));
  }
  DenseOperator out = qubit_operator(site == 0 ? op : pauli::I());
  for (int q = 1; q < n_total; ++q) out = kron(out, qubit_operator(q == site ? op : pauli::I()));
  return out;
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_error(const DenseOperator& op) {
  return max_abs_entry(op.matrix() - op.matrix().adjoint());
}

double unitarity_error(const DenseOperator& op) {
  return max_abs_entry(op.matrix().adjoint() * op.matrix() - Matrix::Identity(op.dim(), op.dim()));
}

bool is_hermitian(const DenseOperator& op, double tol) { return hermiticity_error(op) <= tol; }

bool is_unitary(const DenseOperator& op, double tol) { return unitarity_error(op) <= tol; }

bool is_projector(const DenseOperator& op, double tol) {
  return hermiticity_error(op) <= tol && max_abs_entry(op.matrix() * op.matrix() - op.matrix()) <= tol;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) { return a * b - b * a; }

DenseOperator matexp_i(const DenseOperator& h, double t) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("matexp_i: generator is not Hermitian (error " +
                                std::to_string(hermiticity_error(h)) + ")");
  }
  // Symmetrize so the solver sees an exactly self-adjoint input.
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) throw std::runtime_error("matexp_i: eigendecomposition failed");
  const Vector phases = (Complex(0.0, t) * eig.eigenvalues().cast<Complex>()).array().exp();
  const Matrix& v = eig.eigenvectors();
  return DenseOperator(v * phases.asDiagonal() * v.adjoint());
}

Complex expectation(const StateVector& state, const DenseOperator& op) {
  if (state.dim() != op.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

}  // namespace kdlab
