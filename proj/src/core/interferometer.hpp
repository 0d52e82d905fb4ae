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

#ifndef GBSBENCH_CORE_INTERFEROMETER_HPP
#define GBSBENCH_CORE_INTERFEROMETER_HPP

#include <Eigen/Dense>

#include "core/gaussian_state.hpp"
#include "core/rng.hpp"

namespace gbs {

/// M x M complex network matrix. Construction with validate=true enforces
/// U^dag U = I to within 1e-10 (max absolute entry deviation).
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Eigen::MatrixXcd entries, bool validate = true);

  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  double max_unitarity_defect() const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Real 2M x 2M quadrature transformation [[Re U, -Im U], [Im U, Re U]].
struct SymplecticOrthogonal {
  Eigen::MatrixXd entries;

  int mode_count() const { return static_cast<int>(entries.rows()) / 2; }
  double max_orthogonality_defect() const;
  double max_symplectic_defect() const;
};

/// Two-mode marginal of a larger Gaussian state, keeping the source indices.
struct ReducedTwoModeState {
  GaussianState state;
  int mode_j;
  int mode_k;
};

/// Draws a Haar-distributed unitary: QR decomposition of a complex
/// standard-Gaussian matrix, with the Q columns rescaled by the phases of the
/// R diagonal. Without that rescaling plain QR output is not Haar.
UnitaryMatrix sample_haar_unitary(int modes, RngStream& rng);

SymplecticOrthogonal embed_symplectic(const UnitaryMatrix& u);

/// V -> O V O^T, xi -> O xi. Purity and total mean photon number are
/// invariants of this map.
GaussianState evolve(const GaussianState& state, const UnitaryMatrix& u);

/// Traces out all modes except j and k (0-based, distinct); the result keeps
/// the (q_j, q_k, p_j, p_k) ordering.
ReducedTwoModeState reduce_two_modes(const GaussianState& state, int j, int k);

}  // namespace gbs

#endif
