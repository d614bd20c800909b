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

#include "kdlab/kdq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace kdlab {
namespace {

constexpr Complex kI{0.0, 1.0};

struct EmbeddedSetting {
  std::array<DenseOperator, 2> a;  // Heisenberg-evolved
  std::array<DenseOperator, 2> b;
  StateVector psi;
};

EmbeddedSetting embed_setting(const MeasurementSetting& s, const ModelParams& params) {
  s.validate(params);
  const int n = params.n_qubits();
  EmbeddedSetting e;
  for (int k = 0; k < 2; ++k) {
    e.a[k] = heisenberg_project(embed_projector(s.a.projector(k), s.site_a, n), params, s.time_a);
    e.b[k] = embed_projector(s.b.projector(k), s.site_b, n);
  }
  e.psi = s.initial_state();
  return e;
}

}  // namespace

QubitKet basis_ket(Basis basis, int outcome) {
  if (outcome != 0 && outcome != 1) throw std::out_of_range("basis_ket: outcome must be 0 or 1");
  const double r = std::numbers::sqrt2 / 2.0;
  const double sign = outcome == 0 ? 1.0 : -1.0;
  switch (basis) {
    case Basis::X:
      return QubitKet(r, sign * r);
    case Basis::Y:
      return QubitKet(r, sign * r * kI);
    case Basis::Z:
      return outcome == 0 ? QubitKet(1.0, 0.0) : QubitKet(0.0, 1.0);
  }
  throw std::invalid_argument("basis_ket: unknown basis");
}

Basis parse_basis(std::string_view name) {
  if (name == "X" || name == "x") return Basis::X;
  if (name == "Y" || name == "y") return Basis::Y;
  if (name == "Z" || name == "z") return Basis::Z;
  throw std::invalid_argument("unknown basis '" + std::string(name) + "' (expected X, Y or Z)");
}

std::string_view basis_name(Basis basis) {
  switch (basis) {
    case Basis::X:
      return "X";
    case Basis::Y:
      return "Y";
    case Basis::Z:
      return "Z";
  }
  return "?";
}

ProjectorPair::ProjectorPair(QubitKet ket) : ket_(std::move(ket)) {
  const double norm = ket_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("projector ket must be nonzero");
  ket_ /= norm;
}

ProjectorPair ProjectorPair::from_bloch(const Eigen::Vector3d& n) {
  const double len = n.norm();
  if (!(len > 0.0) || !std::isfinite(len)) throw std::invalid_argument("Bloch vector must be nonzero");
  const Eigen::Vector3d u = n / len;
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double phi = std::atan2(u.y(), u.x());
  return ProjectorPair(QubitKet(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)));
}

QubitKet ProjectorPair::ket(int outcome) const {
  if (outcome == 0) return ket_;
  if (outcome == 1) return QubitKet(-std::conj(ket_[1]), std::conj(ket_[0]));
  throw std::out_of_range("projector outcome must be 0 or 1");
}

Eigen::Matrix2cd ProjectorPair::projector(int outcome) const {
  const QubitKet k = ket(outcome);
  return k * k.adjoint();
}

void MeasurementSetting::validate(const ModelParams& params) const {
  params.validate();
  const int n_env = params.n_env();
  if (site_a < 1 || site_a > n_env) {
    throw std::out_of_range("setting: site_a " + std::to_string(site_a) + " is not an environment qubit");
  }
  if (site_b < 1 || site_b > n_env) {
    throw std::out_of_range("setting: site_b " + std::to_string(site_b) + " is not an environment qubit");
  }
  if (site_a == site_b) throw std::invalid_argument("setting: site_a and site_b must differ");
  if (!std::isfinite(time_a) || time_a < 0.0) throw std::invalid_argument("setting: time_a must be finite and >= 0");
  if (static_cast<int>(initial.size()) != params.n_qubits()) {
    throw std::invalid_argument("setting: initial state needs " + std::to_string(params.n_qubits()) +
                                " factors, got " + std::to_string(initial.size()));
  }
  for (const auto& f : initial) {
    if (std::abs(f.norm() - 1.0) > kNumeric.structural) {
      throw std::invalid_argument("setting: initial factor is not normalized");
    }
  }
}

StateVector MeasurementSetting::initial_state() const { return StateVector::product(initial); }

MeasurementSetting experiment_setting(double time_a, int n_env) {
  MeasurementSetting s;
  s.site_a = 1;
  s.a = ProjectorPair::in_basis(Basis::Z);
  s.time_a = time_a;
  s.site_b = 2;
  s.b = ProjectorPair::in_basis(Basis::Y);
  s.initial.assign(static_cast<std::size_t>(n_env) + 1, basis_ket(Basis::Z, 0));
  return s;
}

Measure parse_measure(std::string_view name) {
  if (name == "N_AS" || name == "nas" || name == "as") return Measure::N_AS;
  if (name == "N_H" || name == "nh" || name == "h") return Measure::N_H;
  if (name == "N_INF" || name == "ninf" || name == "inf") return Measure::N_INF;
  throw std::invalid_argument("unknown measure '" + std::string(name) + "' (expected N_AS, N_H or N_INF)");
}

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::N_AS:
      return "N_AS";
    case Measure::N_H:
      return "N_H";
    case Measure::N_INF:
      return "N_INF";
  }
  return "?";
}

double select(const NonclassicalityReport& r, Measure m) {
  switch (m) {
    case Measure::N_AS:
      return r.n_as;
    case Measure::N_H:
      return r.n_h;
    case Measure::N_INF:
      return r.n_inf;
  }
  return 0.0;
}

DenseOperator embed_projector(const Eigen::Matrix2cd& proj, int site, int n_total) {
  const DenseOperator p = qubit_operator(proj);
  if (!is_projector(p) || std::abs(proj.trace() - 1.0) > kNumeric.compositional) {
    throw std::invalid_argument("embed_projector: input is not a rank-1 projector");
  }
  return embed(proj, site, n_total);
}

KDDistribution kd_distribution(const MeasurementSetting& setting, const ModelParams& params) {
  const EmbeddedSetting e = embed_setting(setting, params);
  const Vector& psi = e.psi.amplitudes();
  KDDistribution kd;
  for (int i = 0; i < 2; ++i) {
    const Vector a_psi = e.a[i].matrix() * psi;
    for (int j = 0; j < 2; ++j) {
      const Vector b_psi = e.b[j].matrix() * psi;
      kd.q[i][j] = b_psi.dot(a_psi);
    }
  }
  return kd;
}

TPMDistribution tpm_distribution(const MeasurementSetting& setting, const ModelParams& params) {
  const EmbeddedSetting e = embed_setting(setting, params);
  const Vector& psi = e.psi.amplitudes();
  TPMDistribution tpm;
  for (int i = 0; i < 2; ++i) {
    const Vector a_psi = e.a[i].matrix() * psi;
    for (int j = 0; j < 2; ++j) tpm.p[i][j] = (e.b[j].matrix() * a_psi).squaredNorm();
  }
  return tpm;
}

DenseOperator nonselective_state(const StateVector& psi, const DenseOperator& a_emb) {
  if (!is_projector(a_emb)) throw std::invalid_argument("nonselective_state: input is not a projector");
  if (a_emb.dim() != psi.dim()) throw std::invalid_argument("nonselective_state: dimension mismatch");
  const Vector kept = a_emb.matrix() * psi.amplitudes();
  const Vector rest = psi.amplitudes() - kept;
  return DenseOperator(Matrix(kept * kept.adjoint() + rest * rest.adjoint()));
}

DenseOperator phase_adjusted(const DenseOperator& b_emb, const DenseOperator& a_emb) {
  if (!is_projector(a_emb)) throw std::invalid_argument("phase_adjusted: input is not a projector");
  // exp(i pi A / 2) = I + (i - 1) A for a projector A.
  const DenseOperator w = DenseOperator::identity(a_emb.n_qubits()) + Complex(-1.0, 1.0) * a_emb;
  return w * b_emb * w.adjoint();
}

ModificationTerms modification_terms(const MeasurementSetting& setting, const ModelParams& params) {
  const EmbeddedSetting e = embed_setting(setting, params);
  const DenseOperator rho = e.psi.density();
  ModificationTerms mt;
  for (int i = 0; i < 2; ++i) {
    const DenseOperator diff = rho - nonselective_state(e.psi, e.a[i]);
    for (int j = 0; j < 2; ++j) {
      mt.real_term[i][j] = 0.5 * (diff * e.b[j]).trace().real();
      mt.imag_term[i][j] = 0.5 * (diff * phase_adjusted(e.b[j], e.a[i])).trace().real();
    }
  }
  return mt;
}

double evolved_commutator_norm(const MeasurementSetting& setting, const ModelParams& params) {
  const EmbeddedSetting e = embed_setting(setting, params);
  double worst = 0.0;
  for (const auto& a : e.a) {
    for (const auto& b : e.b) worst = std::max(worst, max_abs_entry(commutator(a, b).matrix()));
  }
  return worst;
}

NonclassicalityReport quasi_measures(const QuasiTable& q) {
  NonclassicalityReport r;
  double abs_re = 0.0;
  double min_re = q[0][0].real();
  for (const auto& row : q) {
    for (const Complex& v : row) {
      abs_re += std::abs(v.real());
      r.n_as_im += std::abs(v.imag());
      min_re = std::min(min_re, v.real());
      r.n_inf_im = std::max(r.n_inf_im, std::abs(v.imag()));
    }
  }
  r.n_as_re = abs_re - 1.0;
  r.n_as = r.n_as_re + r.n_as_im;
  r.n_inf_re = std::max(0.0, -min_re);
  r.n_inf = r.n_inf_re + r.n_inf_im;
  return r;
}

NonclassicalityReport measures(const KDDistribution& kd, const ModificationTerms& mt) {
  NonclassicalityReport r = quasi_measures(kd.q);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.n_h += std::abs(mt.real_term[i][j]) + std::abs(mt.imag_term[i][j]);
  }
  return r;
}

double n_as(const QuasiTable& q) { return quasi_measures(q).n_as; }

SpectralKdEvaluator::SpectralKdEvaluator(const ModelParams& params) : params_(params) {
  const DenseOperator h = build_hamiltonian(params_);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h.matrix() + h.matrix().adjoint()));
  if (eig.info() != Eigen::Success) throw std::runtime_error("spectral evaluator: eigendecomposition failed");
  energies_ = eig.eigenvalues().cast<Complex>();
  vectors_ = eig.eigenvectors();
}

SpectralKdEvaluator::Prepared SpectralKdEvaluator::prepare(const MeasurementSetting& setting) const {
  setting.validate(params_);
  const int n = params_.n_qubits();
  Prepared p;
  p.psi = setting.initial_state().amplitudes();
  p.x = vectors_.adjoint() * p.psi;
  const Matrix a0 = embed_projector(setting.a.projector(0), setting.site_a, n).matrix();
  p.a0 = vectors_.adjoint() * a0 * vectors_;
  for (int j = 0; j < 2; ++j) {
    p.b[j] = embed_projector(setting.b.projector(j), setting.site_b, n).matrix();
    p.b_psi[j] = p.b[j] * p.psi;
    p.y[j] = vectors_.adjoint() * p.b_psi[j];
    p.b_marginal[j] = p.psi.dot(p.b_psi[j]).real();
  }
  return p;
}

QuasiTable SpectralKdEvaluator::kd_at(const Prepared& p, double tau) const {
  const Vector phase = (Complex(0.0, -tau) * energies_).array().exp();
  const Vector ax = p.a0 * phase.cwiseProduct(p.x);
  QuasiTable q;
  for (int j = 0; j < 2; ++j) {
    q[0][j] = phase.cwiseProduct(p.y[j]).dot(ax);
    q[1][j] = p.b_marginal[j] - q[0][j];
  }
  return q;
}

std::pair<QuasiTable, RealTable> SpectralKdEvaluator::kd_tpm_at(const Prepared& p, double tau) const {
  const Vector phase = (Complex(0.0, -tau) * energies_).array().exp();
  const Vector z = p.a0 * phase.cwiseProduct(p.x);
  // A_0(tau)|psi0> and A_1(tau)|psi0> back in the computational basis.
  std::array<Vector, 2> w;
  w[0] = vectors_ * phase.conjugate().cwiseProduct(z);
  w[1] = p.psi - w[0];
  QuasiTable q;
  RealTable tpm;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      q[i][j] = p.b_psi[j].dot(w[i]);
      tpm[i][j] = (p.b[j] * w[i]).squaredNorm();
    }
  }
  return {q, tpm};
}

double SpectralKdEvaluator::measure_at(const Prepared& p, double tau, Measure m) const {
  if (m != Measure::N_H) return select(quasi_measures(kd_at(p, tau)), m);
  const auto [q, tpm] = kd_tpm_at(p, tau);
  double n_h = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) n_h += std::abs(q[i][j].real() - tpm[i][j]) + std::abs(q[i][j].imag());
  }
  return n_h;
}

}  // namespace kdlab
