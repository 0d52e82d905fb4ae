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

#include "core/interferometer.hpp"

#include <cmath>

namespace gbs {

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries, bool validate)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw ParameterError("unitary matrix must be square and non-empty");
  }
  if (validate && max_unitarity_defect() > 1e-10) {
    throw ParameterError("matrix is not unitary within tolerance 1e-10");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  if (dim < 1) throw ParameterError("unitary dimension must be >= 1");
  return UnitaryMatrix(Eigen::MatrixXcd::Identity(dim, dim), false);
}

double UnitaryMatrix::max_unitarity_defect() const {
  const int n = dim();
  Eigen::MatrixXcd defect = entries_.adjoint() * entries_;
  defect -= Eigen::MatrixXcd::Identity(n, n);
  return defect.cwiseAbs().maxCoeff();
}

double SymplecticOrthogonal::max_orthogonality_defect() const {
  const auto n = entries.rows();
  return (entries * entries.transpose() - Eigen::MatrixXd::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

double SymplecticOrthogonal::max_symplectic_defect() const {
  const Eigen::MatrixXd omega = symplectic_form(mode_count());
  return (entries * omega * entries.transpose() - omega).cwiseAbs().maxCoeff();
}

UnitaryMatrix sample_haar_unitary(int modes, RngStream& rng) {
  if (modes < 1) throw ParameterError("mode count must be >= 1");
  Eigen::MatrixXcd ginibre(modes, modes);
  for (int r = 0; r < modes; ++r) {
    for (int c = 0; c < modes; ++c) {
      ginibre(r, c) = Complex(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r_factor = qr.matrixQR();
  for (int c = 0; c < modes; ++c) {
    const Complex d = r_factor(c, c);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(c) *= d / mag;
  }
  return UnitaryMatrix(std::move(q), false);
}

SymplecticOrthogonal embed_symplectic(const UnitaryMatrix& u) {
  if (u.max_unitarity_defect() > 1e-10) {
    throw ParameterError("symplectic embedding requires a unitary input");
  }
  const int m = u.dim();
  SymplecticOrthogonal o;
  o.entries.resize(2 * m, 2 * m);
  const Eigen::MatrixXd re = u.entries().real();
  const Eigen::MatrixXd im = u.entries().imag();
  o.entries.topLeftCorner(m, m) = re;
  o.entries.topRightCorner(m, m) = -im;
  o.entries.bottomLeftCorner(m, m) = im;
  o.entries.bottomRightCorner(m, m) = re;
  return o;
}

GaussianState evolve(const GaussianState& state, const UnitaryMatrix& u) {
  if (u.dim() != state.mode_count()) {
    throw ParameterError("unitary dimension does not match the state's mode count");
  }
  const SymplecticOrthogonal o = embed_symplectic(u);
  Eigen::MatrixXd cov = o.entries * state.covariance() * o.entries.transpose();
  // Symmetrize away round-off from the congruence before re-validating.
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(o.entries * state.displacement(), std::move(cov));
}

ReducedTwoModeState reduce_two_modes(const GaussianState& state, int j, int k) {
  const int m = state.mode_count();
  if (j < 0 || j >= m || k < 0 || k >= m) throw ParameterError("mode index out of range");
  if (j == k) throw ParameterError("reduction requires two distinct modes");
  const int idx[4] = {j, k, j + m, k + m};
  Eigen::MatrixXd cov(4, 4);
  Eigen::VectorXd xi(4);
  for (int a = 0; a < 4; ++a) {
    xi(a) = state.displacement()(idx[a]);
    for (int b = 0; b < 4; ++b) cov(a, b) = state.covariance()(idx[a], idx[b]);
  }
  return ReducedTwoModeState{GaussianState(std::move(xi), std::move(cov)), j, k};
}

}  // namespace gbs
