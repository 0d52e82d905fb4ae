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

#ifndef GBSBENCH_CORE_FOCK_HPP
#define GBSBENCH_CORE_FOCK_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "core/interferometer.hpp"

namespace gbs {

/// Joint photon-number distribution of a two-mode state on the truncated
/// grid 0..max_photon per mode.
struct JointPhotonDistribution {
  int max_photon = 0;
  Eigen::MatrixXd probabilities;  ///< (max_photon+1) x (max_photon+1)
  double captured_mass = 0.0;

  /// Marginal of mode 0 (rows) or mode 1 (columns), from the same grid.
  Eigen::VectorXd marginal(int mode) const;
};

/// Fock-basis diagonal of a zero-displacement two-mode Gaussian density
/// operator.
///
/// Method: the photon-number generating function of a zero-mean Gaussian
/// state is det(I - 2 W Lambda(z))^{-1/2} with W = (V - I)/4 and
/// Lambda(z) = diag(z1-1, z2-1, z1-1, z2-1); its Taylor coefficients are the
/// probabilities and satisfy a short two-variable linear recurrence driven by
/// the nine polynomial coefficients of the determinant. The recurrence is
/// stable for physical states because every determinant root lies outside
/// the closed unit polydisk.
JointPhotonDistribution joint_photon_distribution(const ReducedTwoModeState& reduced,
                                                  int n_max);

/// C_{1,2} from the truncated grid: sum n1 n2 P - (sum n1 P)(sum n2 P), with
/// the marginals taken from the same grid.
double correlator_from_distribution(const JointPhotonDistribution& dist);

/// Same, but truncating the grid further to n1, n2 <= cutoff.
double correlator_from_distribution(const JointPhotonDistribution& dist, int cutoff);

struct ConvergencePoint {
  int n_max;
  double estimate;
  double relative_distance;  ///< (exact - estimate)/exact, signed
};

struct ConvergenceProfile {
  std::vector<ConvergencePoint> points;
  /// First n_max in the list with |relative distance| < 1e-3.
  std::optional<int> threshold_n_max;
};

/// Truncation sweep of the distribution-based correlator against an exact
/// reference value.
ConvergenceProfile convergence_profile(const ReducedTwoModeState& reduced,
                                       double exact_value,
                                       const std::vector<int>& n_max_list);

/// Pairwise central ladder moments of a Gaussian state, the inputs of the
/// fourth-moment factorization.
class LadderMomentTable {
 public:
  explicit LadderMomentTable(const GaussianState& state);

  Complex aa(int j, int k) const { return aa_(j, k); }            ///< <da_j da_k>
  Complex adag_a(int j, int k) const { return adag_a_(j, k); }    ///< <da_j^dag da_k>
  Complex adag_adag(int j, int k) const { return std::conj(aa_(j, k)); }
  Complex a_adag(int j, int k) const {
    return std::conj(adag_a_(j, k)) + (j == k ? 1.0 : 0.0);
  }

 private:
  Eigen::MatrixXcd aa_;
  Eigen::MatrixXcd adag_a_;
};

/// Central fourth moment of a zero-odd-moment Gaussian state:
/// <da_r^dag da_t da_s^dag da_u> =
///   <da_r^dag da_s^dag><da_t da_u> + <da_r^dag da_t><da_s^dag da_u>
///   + <da_r^dag da_u><da_t da_s^dag>.
Complex gaussian_fourth_moment(const LadderMomentTable& moments, int r, int s, int t,
                               int u);

}  // namespace gbs

#endif
