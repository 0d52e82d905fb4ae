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

#ifndef GBSBENCH_CORE_CHANNELS_HPP
#define GBSBENCH_CORE_CHANNELS_HPP

#include "core/gaussian_state.hpp"

namespace gbs {

/// Uniform loss with overall quantum efficiency eta in [0, 1]:
/// V -> eta V + (1 - eta) I, xi -> sqrt(eta) xi.
GaussianState apply_loss(const GaussianState& state, double eta);

/// Uniform additive Gaussian noise nu >= 0 on every quadrature of every
/// mode: V -> V + nu I.
GaussianState apply_noise(const GaussianState& state, double nu);

/// Minimum squeezing parameter for which a noisy squeezed state keeps a
/// subvacuum variance: r_min = -ln(1 - nu)/2. For nu >= 1 no squeezing
/// survives and +infinity is returned.
double squeezing_threshold(double nu);

/// Scale factor eta^2 by which every two-point correlator shrinks under
/// uniform loss.
double lossy_correlator_scale(double eta);

}  // namespace gbs

#endif
