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

#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "core/correlator.hpp"
#include "core/fock.hpp"
#include "core/interferometer.hpp"

using namespace gbs;

namespace {

const double kRUnit = std::log(1.0 + std::sqrt(2.0));  // <n> = 1

UnitaryMatrix beamsplitter_50_50() {
  Eigen::MatrixXcd u(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  return UnitaryMatrix(u);
}

ReducedTwoModeState reduced_from(const GaussianState& input, const UnitaryMatrix& u) {
  return reduce_two_modes(evolve(input, u), 0, 1);
}

// Even-photon amplitude weights of a single-mode squeezed vacuum:
// c_{2n} = (tanh r)^n sqrt((2n)!) / (n! 2^n sqrt(cosh r)).
double squeezed_amplitude(double r, int photons) {
  if (photons % 2 != 0) return 0.0;
  const int half = photons / 2;
  double log_fact = 0.0;
  for (int i = 2; i <= photons; ++i) log_fact += std::log(static_cast<double>(i));
  double log_half_fact = 0.0;
  for (int i = 2; i <= half; ++i) log_half_fact += std::log(static_cast<double>(i));
  const double log_c = half * std::log(std::tanh(r)) + 0.5 * log_fact - log_half_fact -
                       half * std::log(2.0) - 0.5 * std::log(std::cosh(r));
  return std::exp(log_c);
}

// Brute-force photon statistics of one squeezed mode on a 50:50 beamsplitter,
// built from the pure-state amplitudes: |n, 0> scatters to
// sum_k sqrt(C(n,k)/2^n) |k, n-k>.
Eigen::MatrixXd squeezed_beamsplitter_brute_force(double r, int grid, int cutoff) {
  Eigen::MatrixXd amp = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; n += 2) {
    const double cn = squeezed_amplitude(r, n);
    for (int k = 0; k <= n; ++k) {
      double log_binom = 0.0;
      for (int i = 1; i <= k; ++i) {
        log_binom += std::log(static_cast<double>(n - k + i)) -
                     std::log(static_cast<double>(i));
      }
      amp(k, n - k) += cn * std::exp(0.5 * (log_binom - n * std::log(2.0)));
    }
  }
  Eigen::MatrixXd probs = amp.cwiseProduct(amp);
  return probs.topLeftCorner(grid + 1, grid + 1);
}

double correlator_of_grid(const Eigen::MatrixXd& p) {
  double joint = 0.0, m1 = 0.0, m2 = 0.0;
  for (int a = 0; a < p.rows(); ++a) {
    for (int b = 0; b < p.cols(); ++b) {
      joint += static_cast<double>(a) * static_cast<double>(b) * p(a, b);
      m1 += a * p(a, b);
      m2 += b * p(a, b);
    }
  }
  return joint - m1 * m2;
}

}  // namespace

TEST_SUITE_BEGIN("fock_stats");

TEST_CASE("vacuum distribution") {
  const JointPhotonDistribution dist =
      joint_photon_distribution(reduced_from(GaussianState::vacuum(2),
                                             UnitaryMatrix::identity(2)),
                                6);
  CHECK(dist.probabilities(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dist.captured_mass == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dist.probabilities.sum() - dist.probabilities(0, 0) < 1e-13);
  CHECK(correlator_from_distribution(dist) == doctest::Approx(0.0));
}

TEST_CASE("squeezed vacuum photon-number series") {
  const ReducedTwoModeState red =
      reduced_from(make_squeezed_vacuum(kRUnit, 2, 1), UnitaryMatrix::identity(2));
  const JointPhotonDistribution dist = joint_photon_distribution(red, 24);
  CHECK(dist.probabilities(0, 0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(dist.probabilities(2, 0) == doctest::Approx(0.17677669529663687).epsilon(1e-10));
  for (int n = 0; n <= 20; n += 2) {
    const double amplitude = squeezed_amplitude(kRUnit, n);
    CHECK(dist.probabilities(n, 0) ==
          doctest::Approx(amplitude * amplitude).epsilon(1e-9));
  }
  // Only even photon numbers appear.
  for (int n = 1; n <= 23; n += 2) {
    CHECK(std::abs(dist.probabilities(n, 0)) < 1e-13);
    CHECK(std::abs(dist.probabilities(0, n)) < 1e-13);
  }
}

TEST_CASE("thermal photon-number law") {
  const ReducedTwoModeState red =
      reduced_from(make_thermal(1.0, 2, 1), UnitaryMatrix::identity(2));
  const JointPhotonDistribution dist = joint_photon_distribution(red, 20);
  for (int n = 0; n <= 12; ++n) {
    CHECK(dist.probabilities(n, 0) ==
          doctest::Approx(std::pow(2.0, -(n + 1))).epsilon(1e-11));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(
      joint_photon_distribution(
          reduced_from(GaussianState::vacuum(2), UnitaryMatrix::identity(2)), -1),
      ParameterError);
  CHECK_THROWS_AS(joint_photon_distribution(
                      reduced_from(make_coherent(Complex(0.5, 0), 2, 1),
                                   UnitaryMatrix::identity(2)),
                      8),
                  UnsupportedError);
  const GaussianState subvacuum(Eigen::VectorXd::Zero(4),
                                0.5 * Eigen::MatrixXd::Identity(4, 4));
  CHECK_THROWS_AS(joint_photon_distribution(ReducedTwoModeState{subvacuum, 0, 1}, 8),
                  NumericalError);
}

TEST_CASE("correlator from the truncated grid") {
  SUBCASE("independent modes carry no correlation") {
    const ReducedTwoModeState red = reduced_from(
        [] {
          // squeezed mode 0, thermal-free mode 1
          GaussianState s = make_squeezed_vacuum(0.9, 2, 1);
          return s;
        }(),
        UnitaryMatrix::identity(2));
    const JointPhotonDistribution dist = joint_photon_distribution(red, 30);
    CHECK(std::abs(correlator_from_distribution(dist)) < 1e-12);
  }
  SUBCASE("squeezed mode on a beamsplitter, against two oracles") {
    const ReducedTwoModeState red =
        reduced_from(make_squeezed_vacuum(kRUnit, 2, 1), beamsplitter_50_50());
    const JointPhotonDistribution dist = joint_photon_distribution(red, 40);
    const double c = correlator_from_distribution(dist);
    CHECK(std::abs(c - 0.75) / 0.75 < 1e-3);

    const Eigen::MatrixXd brute = squeezed_beamsplitter_brute_force(kRUnit, 40, 160);
    CHECK((dist.probabilities - brute).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(correlator_of_grid(brute) == doctest::Approx(c).epsilon(1e-9));
  }
  SUBCASE("thermal mode on a beamsplitter against the mixture oracle") {
    const ReducedTwoModeState red =
        reduced_from(make_thermal(1.0, 2, 1), beamsplitter_50_50());
    const JointPhotonDistribution dist = joint_photon_distribution(red, 40);
    // rho_T scatters |n><n| to a binomial split: P(n1, n2) =
    // P_T(n1+n2) C(n1+n2, n1) / 2^{n1+n2}.
    for (int n1 = 0; n1 <= 12; ++n1) {
      for (int n2 = 0; n2 <= 12; ++n2) {
        const int n = n1 + n2;
        double log_binom = 0.0;
        for (int i = 1; i <= n1; ++i) {
          log_binom += std::log(static_cast<double>(n2 + i)) -
                       std::log(static_cast<double>(i));
        }
        const double expected =
            std::pow(2.0, -(n + 1)) * std::exp(log_binom - n * std::log(2.0));
        CHECK(dist.probabilities(n1, n2) == doctest::Approx(expected).epsilon(1e-8));
      }
    }
    CHECK(correlator_from_distribution(dist) == doctest::Approx(0.25).epsilon(1e-6));
  }
  SUBCASE("grid cutoffs") {
    const ReducedTwoModeState red =
        reduced_from(make_squeezed_vacuum(0.5, 2, 1), beamsplitter_50_50());
    const JointPhotonDistribution dist = joint_photon_distribution(red, 12);
    CHECK_THROWS_AS(correlator_from_distribution(dist, 13), ParameterError);
    CHECK(correlator_from_distribution(dist, 12) ==
          doctest::Approx(correlator_from_distribution(dist)));
  }
}

TEST_CASE("normalization and marginals") {
  RngStream rng(71, RngPurpose::kRandomState, 0);
  for (int i = 0; i < 10; ++i) {
    const double r = 0.2 + 0.9 * rng.uniform();
    RngStream urng(72, RngPurpose::kHaarUnitary, i);
    const UnitaryMatrix u = sample_haar_unitary(4, urng);
    const ReducedTwoModeState red = reduced_from(make_squeezed_vacuum(r, 4, 2), u);
    const JointPhotonDistribution dist = joint_photon_distribution(red, 40);
    CHECK(dist.captured_mass >= 1.0 - 1e-6);
    CHECK(dist.captured_mass <= 1.0 + 1e-9);
    const Eigen::VectorXd m0 = dist.marginal(0);
    const Eigen::VectorXd m1 = dist.marginal(1);
    CHECK(m0.sum() == doctest::Approx(dist.captured_mass).epsilon(1e-12));
    CHECK(m1.sum() == doctest::Approx(dist.captured_mass).epsilon(1e-12));
    // Marginal mean photon number against the covariance of the kept modes.
    const Eigen::MatrixXd& v = red.state.covariance();
    double mean0 = 0.0;
    for (int n = 0; n < m0.size(); ++n) mean0 += n * m0(n);
    CHECK(mean0 == doctest::Approx((v(0, 0) + v(2, 2) - 2.0) / 4.0).epsilon(1e-6));
  }
}

TEST_CASE("convergence profiles") {
  SUBCASE("weakly occupied states converge immediately") {
    const ReducedTwoModeState red =
        reduced_from(make_squeezed_vacuum(0.15, 2, 1), beamsplitter_50_50());
    const double exact = correlator_from_state(red.state, 0, 1);
    std::vector<int> cutoffs(11);
    std::iota(cutoffs.begin(), cutoffs.end(), 0);
    const ConvergenceProfile profile = convergence_profile(red, exact, cutoffs);
    REQUIRE(profile.threshold_n_max.has_value());
    CHECK(*profile.threshold_n_max <= 4);
  }
  SUBCASE("zero reference is rejected") {
    const ReducedTwoModeState red =
        reduced_from(GaussianState::vacuum(2), UnitaryMatrix::identity(2));
    CHECK_THROWS_AS(convergence_profile(red, 0.0, {0, 1, 2}), ParameterError);
  }
  SUBCASE("profile records the signed relative distance") {
    const ReducedTwoModeState red =
        reduced_from(make_squeezed_vacuum(kRUnit, 2, 1), beamsplitter_50_50());
    std::vector<int> cutoffs(41);
    std::iota(cutoffs.begin(), cutoffs.end(), 0);
    const ConvergenceProfile profile = convergence_profile(red, 0.75, cutoffs);
    REQUIRE(profile.threshold_n_max.has_value());
    CHECK(*profile.threshold_n_max <= 20);
    CHECK(profile.points.size() == 41);
    CHECK(std::abs(profile.points.back().relative_distance) < 1e-6);
  }
}

TEST_CASE("Gaussian fourth-moment factorization") {
  SUBCASE("vacuum") {
    const LadderMomentTable table(GaussianState::vacuum(2));
    CHECK(std::abs(gaussian_fourth_moment(table, 0, 0, 0, 0)) == 0.0);
  }
  SUBCASE("single-mode squeezed autocorrelation") {
    const LadderMomentTable table(make_squeezed_vacuum(kRUnit, 1, 1));
    const Complex moment = gaussian_fourth_moment(table, 0, 0, 0, 0);
    const double n = std::sinh(kRUnit) * std::sinh(kRUnit);
    CHECK(moment.imag() == doctest::Approx(0.0));
    CHECK(moment.real() - n * n == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("thermal autocorrelation cross-checked against the distribution") {
    const LadderMomentTable table(make_thermal(1.0, 1, 1));
    const Complex moment = gaussian_fourth_moment(table, 0, 0, 0, 0);
    CHECK(moment.real() - 1.0 == doctest::Approx(2.0).epsilon(1e-12));

    const ReducedTwoModeState red =
        reduced_from(make_thermal(1.0, 2, 1), UnitaryMatrix::identity(2));
    const JointPhotonDistribution dist = joint_photon_distribution(red, 60);
    const Eigen::VectorXd marginal = dist.marginal(0);
    double m1 = 0.0, m2 = 0.0;
    for (int n = 0; n < marginal.size(); ++n) {
      m1 += n * marginal(n);
      m2 += static_cast<double>(n) * n * marginal(n);
    }
    CHECK(m2 - m1 * m1 == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("factorization route matches the distribution route on random states") {
  int done = 0;
  for (int i = 0; i < 20; ++i) {
    RngStream rng(73, RngPurpose::kRandomState, i);
    const double r = 0.2 + 0.8 * rng.uniform();
    RngStream urng(74, RngPurpose::kHaarUnitary, i);
    const UnitaryMatrix u = sample_haar_unitary(2, urng);
    const GaussianState input = i % 2 == 0 ? make_squeezed_vacuum(r, 2, 1)
                                           : make_thermal(0.4 + rng.uniform(), 2, 2);
    const ReducedTwoModeState red = reduced_from(input, u);

    const LadderMomentTable table(red.state);
    auto wick_correlator = [&table](int j, int k) {
      const Complex fourth = gaussian_fourth_moment(table, j, k, j, k);
      const Complex mean_j = table.adag_a(j, j);
      const Complex mean_k = table.adag_a(k, k);
      return (fourth - mean_j * mean_k).real();
    };
    const JointPhotonDistribution dist = joint_photon_distribution(red, 40);
    const auto& p = dist.probabilities;
    double joint = 0.0, mean1 = 0.0, mean2 = 0.0, sq1 = 0.0;
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= 40; ++b) {
        joint += static_cast<double>(a) * b * p(a, b);
        mean1 += a * p(a, b);
        mean2 += b * p(a, b);
        sq1 += static_cast<double>(a) * a * p(a, b);
      }
    }
    const double c_cross = wick_correlator(0, 1);
    const double c_auto = wick_correlator(0, 0);
    if (std::abs(c_cross) > 1e-9) {
      CHECK(std::abs((joint - mean1 * mean2) - c_cross) / std::abs(c_cross) < 1e-3);
    }
    CHECK(std::abs((sq1 - mean1 * mean1) - c_auto) / std::abs(c_auto) < 1e-3);
    // The dedicated state-route evaluation is the same quantity.
    CHECK(correlator_from_state(red.state, 0, 1) ==
          doctest::Approx(c_cross).epsilon(1e-12));
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("distribution route agrees with the formula route on random networks") {
  int done = 0;
  for (const int m : {2, 4, 8}) {
    for (int i = 0; i < 17; ++i) {
      RngStream rng(75, RngPurpose::kRandomState, 100 * m + i);
      const int n_occ = 1 + static_cast<int>(rng.uniform() * (m - 1));
      const double n_target = 0.2 + 1.3 * rng.uniform();
      const InputSpec spec =
          i % 2 == 0 ? InputSpec::squeezed(std::asinh(std::sqrt(n_target)), m, n_occ)
                     : InputSpec::thermal(n_target, m, n_occ);
      RngStream urng(76, RngPurpose::kHaarUnitary, 100 * m + i);
      const UnitaryMatrix u = sample_haar_unitary(m, urng);
      const double exact =
          correlator_identical_inputs(CorrelatorInputs::from_spec(spec), u, 0, 1);
      if (std::abs(exact) < 1e-9) continue;
      const ReducedTwoModeState red = reduced_from(spec.to_state(), u);
      const double estimate =
          correlator_from_distribution(joint_photon_distribution(red, 40));
      CHECK(std::abs(exact - estimate) / std::abs(exact) < 1e-3);
      ++done;
    }
  }
  CHECK(done >= 45);
}

TEST_SUITE_END();
