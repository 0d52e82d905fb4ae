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

#ifndef GBSBENCH_CORE_CORRELATOR_HPP
#define GBSBENCH_CORE_CORRELATOR_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/gaussian_state.hpp"
#include "core/interferometer.hpp"
#include "core/stats.hpp"

namespace gbs {

/// Scalars that fully determine the randomized correlator statistics for
/// identical occupied inputs: the per-mode mean photon number and
/// eccentricity together with (M, N).
struct CorrelatorInputs {
  double mean_photon;
  double eccentricity;
  int occupied_count;
  int mode_count;

  /// Validates n >= 0 and the physical bound eps^2 <= n(n+1).
  CorrelatorInputs(double n, double eps, int occupied, int modes);

  static CorrelatorInputs from_spec(const InputSpec& spec);
};

/// Photon-number two-point correlator C_{j,k} of the network output for an
/// uncorrelated (diagonal) product input with displacements, evaluated from
/// the input description and the network matrix. Handles j = k.
double correlator_general(const InputSpec& input, const UnitaryMatrix& u, int j, int k);

/// Same quantity for zero displacement, evaluated through the explicit
/// double sums over input-mode pairs. Agrees with correlator_general to
/// 1e-12 on its domain.
double correlator_no_displacement(std::span<const double> vq, std::span<const double> vp,
                                  const UnitaryMatrix& u, int j, int k);

/// Simplified form for N identical occupied inputs and vacuum elsewhere,
/// valid for distinct outputs j != k:
///   C = <n>^2 |sum_{w<=N} U_{j,w} conj(U_{k,w})|^2
///     + <eps>^2 |sum_{w<=N} U_{j,w} U_{k,w}|^2,
/// evaluated as the literal double sums.
double correlator_identical_inputs(const CorrelatorInputs& inputs, const UnitaryMatrix& u,
                                   int j, int k);

/// Two-point correlator of an arbitrary Gaussian state from its ladder
/// covariances (Gaussian fourth-moment factorization plus displacement
/// terms). This is the output-side evaluation path, used to cross-check the
/// input-side formulas and the Fock-basis route.
double correlator_from_state(const GaussianState& state, int j, int k);

/// First three raw moments of C_{j,k} (j != k) over Haar-random unitaries.
struct HaarMoments {
  double m1;
  double m2;
  double m3;
};

/// Closed forms of the first three Haar-averaged moments for N identical
/// occupied inputs with per-mode mean photon n and eccentricity eps.
/// Requires M >= 2.
HaarMoments analytic_moments(int modes, int occupied, double mean_photon,
                             double eccentricity);

/// The three statistical signatures with their provenance.
struct SignatureSummary {
  double nm = 0.0;
  double cv = 0.0;
  double sk = 0.0;
  double stderr_nm = 0.0;
  double stderr_cv = 0.0;
  double stderr_sk = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  bool cv_defined = true;  ///< false when m1 == 0
  bool sk_defined = true;  ///< false when the central second moment is <= 0
};

/// NM = m1 M^2/N, CV = sqrt(m2 - m1^2)/m1,
/// Sk = (m3 - 3 m1 m2 + 2 m1^3)/(m2 - m1^2)^{3/2}. Undefined combinations
/// are flagged instead of propagating NaNs silently.
SignatureSummary signatures_from_moments(double m1, double m2, double m3, int modes,
                                         int occupied);

/// One correlator value per Haar trial with enough provenance to reproduce
/// and to seed downstream resampling.
struct CorrelatorSampleSet {
  std::vector<double> values;
  std::string config_fingerprint;
  std::uint64_t master_seed = 0;
};

/// Plug-in signature estimates with standard errors from a seeded
/// nonparametric bootstrap over the sample set.
SignatureSummary estimate_signatures(const CorrelatorSampleSet& samples, int modes,
                                     int occupied, int bootstrap_rounds);

/// Delta-method standard errors (first-order propagation through the moment
/// map, with the moment covariances estimated from the sample). Exposed as a
/// cross-check for the bootstrap.
SignatureSummary estimate_signatures_delta(const CorrelatorSampleSet& samples, int modes,
                                           int occupied);

}  // namespace gbs

#endif
