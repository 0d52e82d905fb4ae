/**
 * Copyright 2026 The gbsbench authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/gaussian_state.hpp"

#include <cmath>
#include <string>

namespace gbs {

namespace {

void check_modes_occupied(int modes, int occupied) {
  if (modes < 1) throw ParameterError("mode count must be >= 1");
  if (occupied < 1 || occupied > modes) {
    throw ParameterError("occupied mode count must satisfy 1 <= N <= M (got N=" +
                         std::to_string(occupied) + ", M=" + std::to_string(modes) + ")");
  }
}

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  omega.topRightCorner(modes, modes) = Eigen::MatrixXd::Identity(modes, modes);
  omega.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
  return omega;
}

GaussianState::GaussianState(Eigen::VectorXd displacement, Eigen::MatrixXd covariance)
    : displacement_(std::move(displacement)), covariance_(std::move(covariance)) {
  const auto rows = covariance_.rows();
  if (rows < 2 || rows % 2 != 0 || covariance_.cols() != rows) {
    throw ParameterError("covariance must be a square 2Mx2M matrix");
  }
  if (displacement_.size() != rows) {
    throw ParameterError("displacement length must match covariance dimension");
  }
  modes_ = static_cast<int>(rows / 2);
  const double scale = covariance_.cwiseAbs().maxCoeff();
  const double asym = (covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0)) {
    throw ParameterError("covariance matrix is not symmetric");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  if (modes < 1) throw ParameterError("mode count must be >= 1");
  return GaussianState(Eigen::VectorXd::Zero(2 * modes),
                       Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

double GaussianState::purity() const {
  // det V via LDL^T; V is symmetric and positive definite for any state
  // with finite purity.
  Eigen::LDLT<Eigen::MatrixXd> ldlt(covariance_);
  if (ldlt.info() != Eigen::Success) {
    throw NumericalError("covariance factorization failed in purity");
  }
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < covariance_.rows(); ++i) {
    const double d = ldlt.vectorD()(i);
    if (d <= 0.0) throw NumericalError("covariance determinant is not positive");
    log_det += std::log(d);
  }
  return std::exp(-0.5 * log_det);
}

double GaussianState::total_mean_photon() const {
  return (covariance_.trace() - 2.0 * modes_ + displacement_.squaredNorm()) / 4.0;
}

double GaussianState::physicality_margin() const {
  const int d = 2 * modes_;
  Eigen::MatrixXcd m = covariance_.cast<Complex>();
  m += Complex(0.0, 1.0) * symplectic_form(modes_).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed in physicality check");
  }
  (void)d;
  return solver.eigenvalues().minCoeff();
}

LadderCovariances GaussianState::ladder_covariances(int j, int k) const {
  if (j < 0 || j >= modes_ || k < 0 || k >= modes_) {
    throw ParameterError("mode index out of range");
  }
  const int M = modes_;
  const Eigen::MatrixXd& V = covariance_;
  const Complex i(0.0, 1.0);
  LadderCovariances out;
  out.aa = (V(j, k) + i * V(j, k + M) + i * V(j + M, k) - V(j + M, k + M)) / 4.0;
  out.adag_a = (V(j, k) + i * V(j, k + M) - i * V(j + M, k) + V(j + M, k + M)) / 4.0 -
               (j == k ? 0.5 : 0.0);
  out.alpha_j = Complex(displacement_(j), displacement_(j + M)) / 2.0;
  out.alpha_k = Complex(displacement_(k), displacement_(k + M)) / 2.0;
  return out;
}

InputSpec::InputSpec(StateFamily family, int modes, int occupied)
    : family_(family), modes_(modes), occupied_(occupied) {}

InputSpec InputSpec::squeezed(double r, int modes, int occupied, double phase) {
  check_modes_occupied(modes, occupied);
  if (r < 0.0) throw ParameterError("squeezing parameter r must be >= 0");
  if (phase != 0.0) {
    throw ParameterError("only phase = 0 squeezing is supported (local diagonalization)");
  }
  InputSpec spec(StateFamily::Squeezed, modes, occupied);
  spec.vq_occupied_ = std::exp(2.0 * r);
  spec.vp_occupied_ = std::exp(-2.0 * r);
  return spec;
}

InputSpec InputSpec::thermal(double nbar, int modes, int occupied) {
  check_modes_occupied(modes, occupied);
  if (nbar < 0.0) throw ParameterError("thermal mean photon number must be >= 0");
  InputSpec spec(StateFamily::Thermal, modes, occupied);
  spec.vq_occupied_ = spec.vp_occupied_ = 2.0 * nbar + 1.0;
  return spec;
}

InputSpec InputSpec::coherent(Complex alpha, int modes, int occupied) {
  check_modes_occupied(modes, occupied);
  InputSpec spec(StateFamily::Coherent, modes, occupied);
  spec.alpha_occupied_ = alpha;
  return spec;
}

InputSpec InputSpec::classical_asymmetric(double vq, double vp, int modes, int occupied) {
  check_modes_occupied(modes, occupied);
  if (vq < 1.0 || vp < 1.0) {
    throw ParameterError("classical input requires v_q >= 1 and v_p >= 1");
  }
  InputSpec spec(StateFamily::ClassicalAsymmetric, modes, occupied);
  spec.vq_occupied_ = vq;
  spec.vp_occupied_ = vp;
  return spec;
}

InputSpec InputSpec::vacuum(int modes) {
  if (modes < 1) throw ParameterError("mode count must be >= 1");
  return InputSpec(StateFamily::Vacuum, modes, modes);
}

void InputSpec::check_mode(int mode) const {
  if (mode < 0 || mode >= modes_) throw ParameterError("mode index out of range");
}

double InputSpec::vq(int mode) const {
  check_mode(mode);
  return mode < occupied_ ? vq_occupied_ : v_vacuum_;
}

double InputSpec::vp(int mode) const {
  check_mode(mode);
  return mode < occupied_ ? vp_occupied_ : v_vacuum_;
}

Complex InputSpec::alpha(int mode) const {
  check_mode(mode);
  return mode < occupied_ ? alpha_occupied_ : Complex(0.0, 0.0);
}

double InputSpec::mean_photon(int mode) const {
  check_mode(mode);
  return (vq(mode) + vp(mode) - 2.0) / 4.0;
}

double InputSpec::eccentricity(int mode) const {
  check_mode(mode);
  return (vq(mode) - vp(mode)) / 4.0;
}

bool InputSpec::has_displacement() const {
  return alpha_occupied_ != Complex(0.0, 0.0);
}

GaussianState InputSpec::to_state() const {
  const int M = modes_;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(2 * M);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2 * M, 2 * M);
  for (int m = 0; m < M; ++m) {
    cov(m, m) = vq(m);
    cov(m + M, m + M) = vp(m);
    const Complex a = alpha(m);
    xi(m) = 2.0 * a.real();
    xi(m + M) = 2.0 * a.imag();
  }
  return GaussianState(std::move(xi), std::move(cov));
}

InputSpec InputSpec::with_loss(double eta) const {
  if (eta < 0.0 || eta > 1.0) throw ParameterError("quantum efficiency must be in [0, 1]");
  InputSpec out = *this;
  out.vq_occupied_ = eta * vq_occupied_ + (1.0 - eta);
  out.vp_occupied_ = eta * vp_occupied_ + (1.0 - eta);
  out.v_vacuum_ = eta * v_vacuum_ + (1.0 - eta);
  out.alpha_occupied_ = std::sqrt(eta) * alpha_occupied_;
  return out;
}

InputSpec InputSpec::with_noise(double nu) const {
  if (nu < 0.0) throw ParameterError("additive noise must be >= 0");
  InputSpec out = *this;
  out.vq_occupied_ += nu;
  out.vp_occupied_ += nu;
  out.v_vacuum_ += nu;
  return out;
}

GaussianState make_squeezed_vacuum(double r, int modes, int occupied, double phase) {
  return InputSpec::squeezed(r, modes, occupied, phase).to_state();
}

GaussianState make_thermal(double nbar, int modes, int occupied) {
  return InputSpec::thermal(nbar, modes, occupied).to_state();
}

GaussianState make_coherent(Complex alpha, int modes, int occupied) {
  return InputSpec::coherent(alpha, modes, occupied).to_state();
}

GaussianState make_classical_asymmetric(double vq, double vp, int modes, int occupied) {
  return InputSpec::classical_asymmetric(vq, vp, modes, occupied).to_state();
}

}  // namespace gbs
