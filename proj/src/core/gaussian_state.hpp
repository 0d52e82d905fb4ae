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

#ifndef GBSBENCH_CORE_GAUSSIAN_STATE_HPP
#define GBSBENCH_CORE_GAUSSIAN_STATE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "core/errors.hpp"

namespace gbs {

using Complex = std::complex<double>;

/// Symplectic form for the (q_1..q_M, p_1..p_M) quadrature ordering:
/// the block matrix [[0, I], [-I, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Covariances of the bosonic ladder operators for a mode pair (j, k),
/// together with the complex displacement of mode j.
struct LadderCovariances {
  Complex aa;        ///< <da_j da_k>
  Complex adag_a;    ///< <da_j^dag da_k>
  Complex alpha_j;   ///< <a_j>
  Complex alpha_k;   ///< <a_k>
};

/// M-mode Gaussian state described by its quadrature displacement vector and
/// covariance matrix.
///
/// Conventions, fixed project-wide:
///   - quadratures q = a + a^dag, p = (a - a^dag)/i, so the vacuum state has
///     unit variances (covariance = identity);
///   - vector ordering (q_1..q_M, p_1..p_M).
class GaussianState {
 public:
  /// Validates dimensions and symmetry (1e-12 relative to the largest entry).
  GaussianState(Eigen::VectorXd displacement, Eigen::MatrixXd covariance);

  static GaussianState vacuum(int modes);

  int mode_count() const { return modes_; }
  const Eigen::VectorXd& displacement() const { return displacement_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  /// Tr(rho^2) = 1/sqrt(det V). Throws NumericalError when det V is not
  /// strictly positive.
  double purity() const;

  /// Total mean photon number including the coherent contribution:
  /// (tr V - 2M + |xi|^2)/4.
  double total_mean_photon() const;

  /// Smallest eigenvalue of V + i*Omega. Physical states satisfy >= 0 up to
  /// round-off; the project-wide tolerance is -1e-9.
  double physicality_margin() const;

  bool is_physical(double tolerance = 1e-9) const {
    return physicality_margin() >= -tolerance;
  }

  /// Ladder-operator covariances for the mode pair (j, k), 0-based.
  LadderCovariances ladder_covariances(int j, int k) const;

 private:
  int modes_;
  Eigen::VectorXd displacement_;
  Eigen::MatrixXd covariance_;
};

enum class StateFamily { Vacuum, Squeezed, Thermal, Coherent, ClassicalAsymmetric };

/// Description of an uncorrelated product input: the first `occupied` modes
/// carry identical single-mode states, the remainder is vacuum. This is the
/// object the correlator formulas consume; `to_state()` materializes the
/// covariance-matrix form.
class InputSpec {
 public:
  /// Squeezing along p (antisqueezing along q): v_q = e^{2r}, v_p = e^{-2r}.
  /// Only phase = 0 is supported; any other value is rejected.
  static InputSpec squeezed(double r, int modes, int occupied, double phase = 0.0);
  static InputSpec thermal(double nbar, int modes, int occupied);
  static InputSpec coherent(Complex alpha, int modes, int occupied);
  /// Classical mimic of a squeezed state: asymmetric but never subvacuum.
  static InputSpec classical_asymmetric(double vq, double vp, int modes, int occupied);
  static InputSpec vacuum(int modes);

  int mode_count() const { return modes_; }
  int occupied_count() const { return occupied_; }
  StateFamily family() const { return family_; }

  double vq(int mode) const;
  double vp(int mode) const;
  Complex alpha(int mode) const;

  /// (v_q + v_p - 2)/4 for occupied modes, 0 for vacuum modes. This is the
  /// photon content of the fluctuations; coherent displacement contributes
  /// |alpha|^2 separately.
  double mean_photon(int mode) const;

  /// (v_q - v_p)/4; zero for any phase-insensitive input.
  double eccentricity(int mode) const;

  bool has_displacement() const;

  GaussianState to_state() const;

  /// Uniform loss channel acting on the per-mode description:
  /// v -> eta*v + (1-eta), alpha -> sqrt(eta)*alpha.
  InputSpec with_loss(double eta) const;

  /// Uniform additive noise: v -> v + nu (occupied and vacuum modes alike).
  InputSpec with_noise(double nu) const;

 private:
  InputSpec(StateFamily family, int modes, int occupied);
  void check_mode(int mode) const;

  StateFamily family_;
  int modes_;
  int occupied_;
  double vq_occupied_ = 1.0;
  double vp_occupied_ = 1.0;
  double v_vacuum_ = 1.0;  // raised above 1 by additive noise
  Complex alpha_occupied_{0.0, 0.0};
};

GaussianState make_squeezed_vacuum(double r, int modes, int occupied, double phase = 0.0);
GaussianState make_thermal(double nbar, int modes, int occupied);
GaussianState make_coherent(Complex alpha, int modes, int occupied);
GaussianState make_classical_asymmetric(double vq, double vp, int modes, int occupied);

}  // namespace gbs

#endif
