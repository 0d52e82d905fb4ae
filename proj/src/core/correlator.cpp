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

#include "core/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace gbs {

namespace {

// Formula evaluations are complex-valued with a provably real result; the
// residual imaginary part only carries round-off. Anything larger than the
// 1e-12 budget indicates a broken premise.
double realize_real(Complex z, const char* context) {
  if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real()))) {
    throw NumericalError(std::string("imaginary residue exceeds tolerance in ") + context);
  }
  return z.real();
}

void check_output_indices(const UnitaryMatrix& u, int j, int k) {
  if (j < 0 || j >= u.dim() || k < 0 || k >= u.dim()) {
    throw ParameterError("output mode index out of range");
  }
}

}  // namespace

CorrelatorInputs::CorrelatorInputs(double n, double eps, int occupied, int modes)
    : mean_photon(n), eccentricity(eps), occupied_count(occupied), mode_count(modes) {
  if (modes < 1) throw ParameterError("mode count must be >= 1");
  if (occupied < 1 || occupied > modes) {
    throw ParameterError("occupied mode count must satisfy 1 <= N <= M");
  }
  if (n < 0.0) throw ParameterError("mean photon number must be >= 0");
  const double bound = n * (n + 1.0);
  if (eps * eps > bound + 1e-9 * std::max(1.0, bound)) {
    throw ParameterError("eccentricity violates the physical bound eps^2 <= n(n+1)");
  }
}

CorrelatorInputs CorrelatorInputs::from_spec(const InputSpec& spec) {
  if (spec.has_displacement()) {
    throw ParameterError("identical-input correlator statistics require zero displacement");
  }
  if (spec.mode_count() > spec.occupied_count() &&
      spec.vq(spec.mode_count() - 1) != 1.0) {
    throw ParameterError("identical-input form requires exact vacuum in unoccupied modes");
  }
  return CorrelatorInputs(spec.mean_photon(0), spec.eccentricity(0),
                          spec.occupied_count(), spec.mode_count());
}

double correlator_general(const InputSpec& input, const UnitaryMatrix& u, int j, int k) {
  if (u.dim() != input.mode_count()) {
    throw ParameterError("unitary dimension does not match the input's mode count");
  }
  check_output_indices(u, j, k);
  if (k < j) std::swap(j, k);  // C is symmetric in (j, k); canonical order makes it exact
  const int m = u.dim();
  const double delta = (j == k) ? 1.0 : 0.0;

  Complex s(0.0, 0.0), d(0.0, 0.0), alpha_j(0.0, 0.0), alpha_k(0.0, 0.0);
  for (int w = 0; w < m; ++w) {
    const double sum_v = (input.vq(w) + input.vp(w)) / 4.0;
    const double diff_v = (input.vq(w) - input.vp(w)) / 4.0;
    s += std::conj(u(j, w)) * u(k, w) * sum_v;
    d += u(j, w) * u(k, w) * diff_v;
    const Complex a = input.alpha(w);
    alpha_j += u(j, w) * a;
    alpha_k += u(k, w) * a;
  }

  Complex c = (std::conj(s) + 0.5 * delta) * (s - 0.5 * delta);
  c += d * std::conj(d);
  c += std::conj(alpha_j) * alpha_k * std::conj(s);
  c += alpha_j * std::conj(alpha_k) * s;
  c += std::conj(alpha_j) * std::conj(alpha_k) * d;
  c += alpha_j * alpha_k * std::conj(d);
  return realize_real(c, "correlator_general");
}

double correlator_no_displacement(std::span<const double> vq, std::span<const double> vp,
                                  const UnitaryMatrix& u, int j, int k) {
  const int m = u.dim();
  if (static_cast<int>(vq.size()) != m || static_cast<int>(vp.size()) != m) {
    throw ParameterError("variance arrays must have one entry per mode");
  }
  check_output_indices(u, j, k);
  if (k < j) std::swap(j, k);

  Complex interference(0.0, 0.0);
  Complex phase_sensitive(0.0, 0.0);
  for (int w = 0; w < m; ++w) {
    const double sum_w = vq[w] + vp[w];
    const double diff_w = vq[w] - vp[w];
    for (int wp = 0; wp < m; ++wp) {
      const double sum_wp = vq[wp] + vp[wp];
      const double diff_wp = vq[wp] - vp[wp];
      interference +=
          (sum_w * sum_wp / 16.0) * u(j, w) * u(k, wp) * std::conj(u(j, wp)) * std::conj(u(k, w));
      if (diff_w != 0.0 && diff_wp != 0.0) {
        phase_sensitive += (diff_w * diff_wp / 16.0) * u(j, w) * u(k, w) *
                           std::conj(u(j, wp)) * std::conj(u(k, wp));
      }
    }
  }
  const double delta_term = (j == k) ? 0.25 : 0.0;
  return realize_real(interference + phase_sensitive, "correlator_no_displacement") -
         delta_term;
}

double correlator_identical_inputs(const CorrelatorInputs& inputs, const UnitaryMatrix& u,
                                   int j, int k) {
  if (u.dim() != inputs.mode_count) {
    throw ParameterError("unitary dimension does not match the input's mode count");
  }
  check_output_indices(u, j, k);
  if (j == k) {
    throw ParameterError("identical-input correlator form requires distinct outputs");
  }
  if (k < j) std::swap(j, k);
  const int n_occ = inputs.occupied_count;

  Complex interference(0.0, 0.0);
  Complex phase_sensitive(0.0, 0.0);
  for (int w = 0; w < n_occ; ++w) {
    for (int wp = 0; wp < n_occ; ++wp) {
      interference += u(j, w) * u(k, wp) * std::conj(u(j, wp)) * std::conj(u(k, w));
      phase_sensitive += u(j, w) * u(k, w) * std::conj(u(j, wp)) * std::conj(u(k, wp));
    }
  }
  const double n2 = inputs.mean_photon * inputs.mean_photon;
  const double e2 = inputs.eccentricity * inputs.eccentricity;
  return n2 * realize_real(interference, "correlator_identical_inputs") +
         e2 * realize_real(phase_sensitive, "correlator_identical_inputs");
}

double correlator_from_state(const GaussianState& state, int j, int k) {
  if (j < 0 || j >= state.mode_count() || k < 0 || k >= state.mode_count()) {
    throw ParameterError("mode index out of range");
  }
  if (k < j) std::swap(j, k);
  const LadderCovariances lc = state.ladder_covariances(j, k);
  const Complex aa = lc.aa;
  const Complex adag_adag = std::conj(aa);
  const Complex adag_a = lc.adag_a;
  const Complex a_adag = std::conj(adag_a) + (j == k ? 1.0 : 0.0);
  const Complex aj = lc.alpha_j;
  const Complex ak = lc.alpha_k;

  Complex c = adag_adag * aa + adag_a * a_adag;
  c += aj * std::conj(ak) * adag_a;
  c += std::conj(aj) * ak * a_adag;
  c += aj * ak * adag_adag;
  c += std::conj(aj) * std::conj(ak) * aa;
  return realize_real(c, "correlator_from_state");
}

HaarMoments analytic_moments(int modes, int occupied, double mean_photon,
                             double eccentricity) {
  if (modes < 2) throw ParameterError("Haar-averaged moments require M >= 2");
  if (occupied < 1 || occupied > modes) {
    throw ParameterError("occupied mode count must satisfy 1 <= N <= M");
  }
  if (mean_photon < 0.0) throw ParameterError("mean photon number must be >= 0");
  const double m = modes;
  const double n = occupied;
  const double x = mean_photon * mean_photon;       // <n>^2
  const double y = eccentricity * eccentricity;     // <eps>^2

  HaarMoments out;
  out.m1 = n * (m - n) / ((m - 1.0) * m * (m + 1.0)) * x + n / (m * (m + 1.0)) * y;

  const double d2 = (m - 1.0) * m * m * (m + 1.0) * (m + 2.0) * (m + 3.0);
  const double t1 = 2.0 * n * (n + 1.0) * (m - n + 1.0) * (m - n);
  const double t2 = 2.0 * n * (m - n) * (m * n + 3.0 * m - n + 1.0);
  const double t3 = 2.0 * n * (m * m * n + m * m + n * m - 3.0 * m + 2.0 * n - 2.0);
  out.m2 = (t1 * x * x + t2 * x * y + t3 * y * y) / d2;

  const double d3 =
      (m - 1.0) * m * m * (m + 1.0) * (m + 1.0) * (m + 2.0) * (m + 3.0) * (m + 4.0) * (m + 5.0);
  const double d3_last =
      (m - 1.0) * m * m * (m + 1.0) * (m + 2.0) * (m + 3.0) * (m + 4.0) * (m + 5.0);
  const double u1 = 6.0 * (n + 1.0) * n * (n + 2.0) * (m - n + 2.0) * (m - n + 1.0) * (m - n);
  const double u2 =
      6.0 * n * (n + 2.0) * (m - n) * (m - n + 1.0) * (m * n + 5.0 * m - n + 7.0);
  const double u3 = 6.0 * n * (n + 2.0) * (m - n) *
                    (m * m * n + m * n + 5.0 * m * m + 5.0 * m + 4.0 * n - 4.0);
  const double u4 = 6.0 * n * (n + 2.0) *
                    (m * m * n + 5.0 * m * n + m * m - 7.0 * m + 12.0 * n - 12.0);
  out.m3 = (u1 * x * x * x + u2 * x * x * y + u3 * x * y * y) / d3 + u4 * y * y * y / d3_last;
  return out;
}

SignatureSummary signatures_from_moments(double m1, double m2, double m3, int modes,
                                         int occupied) {
  if (modes < 1 || occupied < 1 || occupied > modes) {
    throw ParameterError("invalid (modes, occupied) combination");
  }
  SignatureSummary s;
  s.m1 = m1;
  s.m2 = m2;
  s.m3 = m3;
  s.nm = m1 * static_cast<double>(modes) * static_cast<double>(modes) /
         static_cast<double>(occupied);
  const double var = m2 - m1 * m1;
  if (m1 == 0.0) {
    s.cv_defined = false;
    s.cv = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.cv = std::sqrt(std::max(var, 0.0)) / m1;
  }
  if (var <= 0.0) {
    s.sk_defined = false;
    s.sk = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.sk = (m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1) / (var * std::sqrt(var));
  }
  return s;
}

SignatureSummary estimate_signatures(const CorrelatorSampleSet& samples, int modes,
                                     int occupied, int bootstrap_rounds) {
  if (samples.values.size() < 10) {
    throw ParameterError("signature estimation requires at least 10 samples");
  }
  if (bootstrap_rounds < 100) {
    throw ParameterError("bootstrap requires at least 100 rounds");
  }
  const RawMoments m = raw_moments(samples.values);
  SignatureSummary s = signatures_from_moments(m.m1, m.m2, m.m3, modes, occupied);

  std::vector<double> nm_rep(bootstrap_rounds), cv_rep(bootstrap_rounds),
      sk_rep(bootstrap_rounds);
  for (int b = 0; b < bootstrap_rounds; ++b) {
    RngStream rng(samples.master_seed, RngPurpose::kBootstrap,
                  static_cast<std::uint64_t>(b));
    const RawMoments mb = bootstrap_resample_moments(samples.values, rng);
    const SignatureSummary sb = signatures_from_moments(mb.m1, mb.m2, mb.m3, modes, occupied);
    nm_rep[b] = sb.nm;
    cv_rep[b] = sb.cv_defined ? sb.cv : std::numeric_limits<double>::quiet_NaN();
    sk_rep[b] = sb.sk_defined ? sb.sk : std::numeric_limits<double>::quiet_NaN();
  }
  s.stderr_nm = replica_stddev(nm_rep);
  s.stderr_cv = s.cv_defined ? replica_stddev(cv_rep) : 0.0;
  s.stderr_sk = s.sk_defined ? replica_stddev(sk_rep) : 0.0;
  return s;
}

SignatureSummary estimate_signatures_delta(const CorrelatorSampleSet& samples, int modes,
                                           int occupied) {
  if (samples.values.size() < 10) {
    throw ParameterError("signature estimation requires at least 10 samples");
  }
  const double t = static_cast<double>(samples.values.size());
  double mu[7] = {1.0, 0, 0, 0, 0, 0, 0};
  for (const double v : samples.values) {
    double p = v;
    for (int k = 1; k <= 6; ++k) {
      mu[k] += p;
      p *= v;
    }
  }
  for (int k = 1; k <= 6; ++k) mu[k] /= t;

  SignatureSummary s = signatures_from_moments(mu[1], mu[2], mu[3], modes, occupied);

  // Covariance matrix of the sample raw moments (m1, m2, m3).
  double cov[3][3];
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      cov[a - 1][b - 1] = (mu[a + b] - mu[a] * mu[b]) / t;
    }
  }
  auto quad_form = [&cov](const double g[3]) {
    double q = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) q += g[a] * cov[a][b] * g[b];
    return std::sqrt(std::max(q, 0.0));
  };

  const double m1 = mu[1], m2 = mu[2], m3 = mu[3];
  const double scale = static_cast<double>(modes) * static_cast<double>(modes) /
                       static_cast<double>(occupied);
  const double g_nm[3] = {scale, 0.0, 0.0};
  s.stderr_nm = quad_form(g_nm);

  const double var = m2 - m1 * m1;
  if (s.cv_defined && var > 0.0) {
    const double g_cv[3] = {-m2 / (std::sqrt(var) * m1 * m1), 1.0 / (2.0 * std::sqrt(var) * m1),
                            0.0};
    s.stderr_cv = quad_form(g_cv);
  }
  if (s.sk_defined && var > 0.0) {
    const double num = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    const double v32 = var * std::sqrt(var);
    const double v52 = var * var * std::sqrt(var);
    const double g_sk[3] = {
        (-3.0 * m2 + 6.0 * m1 * m1) / v32 - 1.5 * num * (-2.0 * m1) / v52,
        -3.0 * m1 / v32 - 1.5 * num / v52,
        1.0 / v32,
    };
    s.stderr_sk = quad_form(g_sk);
  }
  return s;
}

}  // namespace gbs
