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

#include "core/channels.hpp"

#include <cmath>
#include <limits>

namespace gbs {

GaussianState apply_loss(const GaussianState& state, double eta) {
  if (eta < 0.0 || eta > 1.0) throw ParameterError("quantum efficiency must be in [0, 1]");
  const auto d = state.covariance().rows();
  Eigen::MatrixXd cov = eta * state.covariance();
  cov += (1.0 - eta) * Eigen::MatrixXd::Identity(d, d);
  return GaussianState(std::sqrt(eta) * state.displacement(), std::move(cov));
}

GaussianState apply_noise(const GaussianState& state, double nu) {
  if (nu < 0.0) throw ParameterError("additive noise must be >= 0");
  const auto d = state.covariance().rows();
  Eigen::MatrixXd cov = state.covariance();
  cov += nu * Eigen::MatrixXd::Identity(d, d);
  return GaussianState(state.displacement(), std::move(cov));
}

double squeezing_threshold(double nu) {
  if (nu < 0.0) throw ParameterError("additive noise must be >= 0");
  if (nu >= 1.0) return std::numeric_limits<double>::infinity();
  return -0.5 * std::log(1.0 - nu);
}

double lossy_correlator_scale(double eta) {
  if (eta < 0.0 || eta > 1.0) throw ParameterError("quantum efficiency must be in [0, 1]");
  return eta * eta;
}

}  // namespace gbs
