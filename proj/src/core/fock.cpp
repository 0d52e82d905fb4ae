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

#include "core/fock.hpp"

#include <algorithm>
#include <cmath>

namespace gbs {

Eigen::VectorXd JointPhotonDistribution::marginal(int mode) const {
  if (mode == 0) return probabilities.rowwise().sum();
  if (mode == 1) return probabilities.colwise().sum().transpose();
  throw ParameterError("marginal mode must be 0 or 1");
}

namespace {

// Coefficients c[a][b] of det(I - 2 W Lambda(z)) as a polynomial
// sum c[a][b] z1^a z2^b, bi-degree (2, 2).
void generating_polynomial(const Eigen::MatrixXd& cov, double c[3][3]) {
  const Eigen::MatrixXd w = (cov - Eigen::MatrixXd::Identity(4, 4)) / 4.0;
  auto det_at = [&w](double l1, double l2) {
    Eigen::Vector4d lam(l1, l2, l1, l2);
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4) - 2.0 * w * lam.asDiagonal();
    return m.determinant();
  };
  // Quadratic interpolation on the nodes {-1, 0, 1} in each lambda variable.
  auto quad = [](double fm, double f0, double fp, double out[3]) {
    out[0] = f0;
    out[1] = (fp - fm) / 2.0;
    out[2] = (fp + fm - 2.0 * f0) / 2.0;
  };
  double rows[3][3];  // rows[node of l2][coeff in l1]
  const double nodes[3] = {-1.0, 0.0, 1.0};
  for (int b = 0; b < 3; ++b) {
    quad(det_at(-1.0, nodes[b]), det_at(0.0, nodes[b]), det_at(1.0, nodes[b]), rows[b]);
  }
  double cl[3][3];  // coefficients in (l1, l2)
  for (int i = 0; i < 3; ++i) {
    double tmp[3];
    quad(rows[0][i], rows[1][i], rows[2][i], tmp);
    for (int j = 0; j < 3; ++j) cl[i][j] = tmp[j];
  }
  // Shift lambda = z - 1.
  static const double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) c[a][b] = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int a = 0; a <= i; ++a) {
        const double fa = binom[i][a] * (((i - a) % 2 == 0) ? 1.0 : -1.0);
        for (int b = 0; b <= j; ++b) {
          const double fb = binom[j][b] * (((j - b) % 2 == 0) ? 1.0 : -1.0);
          c[a][b] += cl[i][j] * fa * fb;
        }
      }
    }
  }
}

}  // namespace

JointPhotonDistribution joint_photon_distribution(const ReducedTwoModeState& reduced,
                                                  int n_max) {
  if (n_max < 0) throw ParameterError("n_max must be >= 0");
  const GaussianState& state = reduced.state;
  if (state.mode_count() != 2) throw ParameterError("reduced state must have two modes");
  if (state.displacement().cwiseAbs().maxCoeff() > 1e-12) {
    throw UnsupportedError("photon statistics of displaced states are not supported");
  }
  if (!state.is_physical(1e-9)) {
    throw NumericalError("reduced covariance is not physical");
  }

  double c[3][3];
  generating_polynomial(state.covariance(), c);
  if (c[0][0] <= 0.0) {
    throw NumericalError("generating polynomial is non-positive at the origin");
  }

  const int d = n_max + 1;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  g(0, 0) = 1.0 / std::sqrt(c[0][0]);
  // Base row: one-variable recurrence along mode 1 at zero photons in mode 0.
  for (int nn = 0; nn < n_max; ++nn) {
    double s = c[0][1] * (2.0 * nn + 1.0) * g(0, nn);
    if (nn >= 1) s += c[0][2] * (2.0 * nn) * g(0, nn - 1);
    g(0, nn + 1) = -s / (2.0 * (nn + 1.0) * c[0][0]);
  }
  // Remaining rows from 2 Q dG/dz1 + (dQ/dz1) G = 0.
  for (int m = 0; m < n_max; ++m) {
    for (int nn = 0; nn <= n_max; ++nn) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        const int mi = m - i + 1;
        if (mi < 0) continue;
        for (int j = 0; j < 3; ++j) {
          if (i == 0 && j == 0) continue;
          const int nj = nn - j;
          if (nj < 0) continue;
          s += c[i][j] * (2.0 * mi + i) * g(mi, nj);
        }
      }
      g(m + 1, nn) = -s / (2.0 * (m + 1.0) * c[0][0]);
    }
  }

  JointPhotonDistribution dist;
  dist.max_photon = n_max;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (g(a, b) < 0.0) {
        if (g(a, b) < -1e-12) {
          throw NumericalError("photon probability below the negative round-off budget");
        }
        g(a, b) = 0.0;
      }
    }
  }
  dist.probabilities = std::move(g);
  dist.captured_mass = dist.probabilities.sum();
  if (dist.captured_mass > 1.0 + 1e-9) {
    throw NumericalError("captured probability mass exceeds 1");
  }
  return dist;
}

double correlator_from_distribution(const JointPhotonDistribution& dist) {
  return correlator_from_distribution(dist, dist.max_photon);
}

double correlator_from_distribution(const JointPhotonDistribution& dist, int cutoff) {
  if (cutoff < 0 || cutoff > dist.max_photon) {
    throw ParameterError("cutoff must lie within the stored grid");
  }
  if (dist.captured_mass <= 0.0) {
    throw ParameterError("distribution carries no probability mass");
  }
  const auto& p = dist.probabilities;
  double joint = 0.0, mean1 = 0.0, mean2 = 0.0;
  for (int n1 = 0; n1 <= cutoff; ++n1) {
    for (int n2 = 0; n2 <= cutoff; ++n2) {
      const double pv = p(n1, n2);
      joint += static_cast<double>(n1) * static_cast<double>(n2) * pv;
      mean1 += static_cast<double>(n1) * pv;
      mean2 += static_cast<double>(n2) * pv;
    }
  }
  return joint - mean1 * mean2;
}

ConvergenceProfile convergence_profile(const ReducedTwoModeState& reduced,
                                       double exact_value,
                                       const std::vector<int>& n_max_list) {
  if (n_max_list.empty()) throw ParameterError("n_max list must not be empty");
  if (exact_value == 0.0) {
    throw ParameterError("relative distance is undefined for a zero exact value");
  }
  const int top = *std::max_element(n_max_list.begin(), n_max_list.end());
  const JointPhotonDistribution dist = joint_photon_distribution(reduced, top);

  ConvergenceProfile profile;
  profile.points.reserve(n_max_list.size());
  for (const int n_max : n_max_list) {
    const double estimate = correlator_from_distribution(dist, n_max);
    const double rel = (exact_value - estimate) / exact_value;
    profile.points.push_back({n_max, estimate, rel});
    if (!profile.threshold_n_max.has_value() && std::abs(rel) < 1e-3) {
      profile.threshold_n_max = n_max;
    }
  }
  return profile;
}

LadderMomentTable::LadderMomentTable(const GaussianState& state) {
  const int m = state.mode_count();
  aa_.resize(m, m);
  adag_a_.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const LadderCovariances lc = state.ladder_covariances(j, k);
      aa_(j, k) = lc.aa;
      adag_a_(j, k) = lc.adag_a;
    }
  }
}

Complex gaussian_fourth_moment(const LadderMomentTable& moments, int r, int s, int t,
                               int u) {
  return moments.adag_adag(r, s) * moments.aa(t, u) +
         moments.adag_a(r, t) * moments.adag_a(s, u) +
         moments.adag_a(r, u) * moments.a_adag(t, s);
}

}  // namespace gbs
