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
#include <string_view>
#include <vector>

#include "kdlab/model.hpp"
#include "kdlab/numerics.hpp"

namespace kdlab {

using QubitKet = Eigen::Vector2cd;
using QuasiTable = std::array<std::array<Complex, 2>, 2>;
using RealTable = std::array<std::array<double, 2>, 2>;

enum class Basis { X, Y, Z };

/// Eigenket of a Pauli basis: outcome 0 is the +1 eigenstate.
QubitKet basis_ket(Basis basis, int outcome);
Basis parse_basis(std::string_view name);
std::string_view basis_name(Basis basis);

/// Two-outcome projective qubit measurement {P_0, P_1 = I - P_0}, stored as
/// the single ket spanning P_0.
class ProjectorPair {
 public:
  ProjectorPair() : ProjectorPair(basis_ket(Basis::Z, 0)) {}
  /// Normalizes `ket`; throws std::invalid_argument if it is zero.
  explicit ProjectorPair(QubitKet ket);
  static ProjectorPair in_basis(Basis basis) { return ProjectorPair(basis_ket(basis, 0)); }
  /// Pair whose P_0 projects on the Bloch direction `n` (normalized).
  static ProjectorPair from_bloch(const Eigen::Vector3d& n);

  /// Ket spanning P_outcome; outcome 1 is the orthogonal complement.
  QubitKet ket(int outcome) const;
  Eigen::Matrix2cd projector(int outcome) const;

 private:
  QubitKet ket_;
};

/// Two single-qubit measurements on distinct environment qubits: A at time
/// `time_a` (Heisenberg picture) and B at time 0, on a product initial state.
struct MeasurementSetting {
  int site_a = 1;
  ProjectorPair a;
  double time_a = 0.0;
  int site_b = 2;
  ProjectorPair b;
  /// One normalized ket per model qubit; the initial state is their product.
  std::vector<QubitKet> initial;

  /// Throws std::invalid_argument (std::out_of_range for sites) when the
  /// setting does not fit `params`.
  void validate(const ModelParams& params) const;
  StateVector initial_state() const;
};

/// Z-basis measurement on E1, Y-basis measurement on E2, |0...0> initial
/// state. Among Pauli-basis pairs with |000> this is the one whose N_AS at
/// omega = 1.5 reaches 0.554 at tau = 2.21 and 0.988 at tau = 3.66, and
/// its circuit preparation is an optional X on E1 and X, H, S on E2.
MeasurementSetting experiment_setting(double time_a, int n_env = 2);

struct KDDistribution {
  QuasiTable q{};
};

struct TPMDistribution {
  RealTable p{};
};

/// Johansen correction terms per outcome pair:
///   real_term = 1/2 Tr[(rho - rho') B_j], imag_term = 1/2 Tr[(rho - rho') B_j^{pi/2}].
struct ModificationTerms {
  RealTable real_term{};
  RealTable imag_term{};
};

struct NonclassicalityReport {
  double n_h = 0.0;
  double n_as_re = 0.0;
  double n_as_im = 0.0;
  double n_as = 0.0;
  double n_inf_re = 0.0;
  double n_inf_im = 0.0;
  double n_inf = 0.0;
};

enum class Measure { N_AS, N_H, N_INF };
Measure parse_measure(std::string_view name);
std::string_view measure_name(Measure m);
double select(const NonclassicalityReport& r, Measure m);

/// Rank-1 qubit projector placed on `site` of an `n_total` register.
DenseOperator embed_projector(const Eigen::Matrix2cd& proj, int site, int n_total);

KDDistribution kd_distribution(const MeasurementSetting& setting, const ModelParams& params);
TPMDistribution tpm_distribution(const MeasurementSetting& setting, const ModelParams& params);

/// rho' = A rho A + (I - A) rho (I - A) for rho = |psi><psi|.
DenseOperator nonselective_state(const StateVector& psi, const DenseOperator& a_emb);

/// exp(i pi A / 2) B exp(-i pi A / 2) for a projector A.
DenseOperator phase_adjusted(const DenseOperator& b_emb, const DenseOperator& a_emb);

ModificationTerms modification_terms(const MeasurementSetting& setting, const ModelParams& params);

/// Largest commutator entry between the evolved A_i and B_j over all four pairs.
double evolved_commutator_norm(const MeasurementSetting& setting, const ModelParams& params);

NonclassicalityReport measures(const KDDistribution& kd, const ModificationTerms& mt);

/// Every measure that needs only q (n_h is left at 0; it needs the TPM).
NonclassicalityReport quasi_measures(const QuasiTable& q);

double n_as(const QuasiTable& q);

/// Fast KD evaluation for many settings and times under one Hamiltonian.
///
/// H = V D V^dagger is diagonalized once; each setting is rotated into the
/// eigenbasis, after which a time point costs two 2^n-dimensional phase
/// rotations and two bilinear forms. A_1 = I - A_0 gives the second row from
/// the B marginals.
class SpectralKdEvaluator {
 public:
  explicit SpectralKdEvaluator(const ModelParams& params);

  struct Prepared {
    Vector x;                    // V^dagger psi0
    std::array<Vector, 2> y;     // V^dagger B_j psi0
    Matrix a0;                   // V^dagger A_0 V
    std::array<Vector, 2> b_psi; // B_j psi0
    std::array<double, 2> b_marginal{};
    Vector psi;
    std::array<Matrix, 2> b;     // embedded B_j
  };

  Prepared prepare(const MeasurementSetting& setting) const;
  QuasiTable kd_at(const Prepared& prepared, double tau) const;
  /// q together with the TPM p at the same time.
  std::pair<QuasiTable, RealTable> kd_tpm_at(const Prepared& prepared, double tau) const;
  double measure_at(const Prepared& prepared, double tau, Measure m) const;

  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  Vector energies_;
  Matrix vectors_;
};

}  // namespace kdlab
