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

#include "core/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "core/parallel.hpp"

namespace gbs {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t x = seed;
  (void)splitmix64(x);
  x ^= tag * 0x9E3779B97F4A7C15ULL;
  (void)splitmix64(x);
  x ^= index * 0xC2B2AE3D27D4EB4FULL;
  return splitmix64(x);
}

/// Rethrows upstream failures with the trial index attached.
template <typename Fn>
void with_trial_context(std::int64_t trial, Fn&& fn) {
  try {
    fn();
  } catch (const UnsupportedError& e) {
    throw UnsupportedError("trial " + std::to_string(trial) + ": " + e.what());
  } catch (const ParameterError& e) {
    throw ParameterError("trial " + std::to_string(trial) + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError("trial " + std::to_string(trial) + ": " + e.what());
  }
}

/// Dispatches one correlator evaluation to the cheapest applicable formula.
class CorrelatorEvaluator {
 public:
  explicit CorrelatorEvaluator(const InputSpec& spec) : spec_(spec) {
    const int m = spec.mode_count();
    const bool vacuum_spectators =
        spec.occupied_count() == m || spec.vq(m - 1) == 1.0;
    if (spec.has_displacement()) {
      path_ = Path::General;
    } else if (vacuum_spectators) {
      path_ = Path::Identical;
      inputs_.emplace(CorrelatorInputs::from_spec(spec));
    } else {
      path_ = Path::Variances;
      vq_.resize(m);
      vp_.resize(m);
      for (int w = 0; w < m; ++w) {
        vq_[w] = spec.vq(w);
        vp_[w] = spec.vp(w);
      }
    }
  }

  double operator()(const UnitaryMatrix& u, int j, int k) const {
    switch (path_) {
      case Path::Identical:
        return correlator_identical_inputs(*inputs_, u, j, k);
      case Path::Variances:
        return correlator_no_displacement(vq_, vp_, u, j, k);
      case Path::General:
      default:
        return correlator_general(spec_, u, j, k);
    }
  }

 private:
  enum class Path { Identical, Variances, General };
  Path path_;
  InputSpec spec_;
  std::optional<CorrelatorInputs> inputs_;
  std::vector<double> vq_, vp_;
};

SignatureSummary estimate_by_method(const CorrelatorSampleSet& samples,
                                    const ExperimentConfig& config) {
  if (config.stderr_method == StderrMethod::Delta) {
    return estimate_signatures_delta(samples, config.modes, config.occupied);
  }
  return estimate_signatures(samples, config.modes, config.occupied,
                             config.bootstrap_rounds);
}

double metric_value(const SignatureSummary& s, Metric metric, double* stderr_out) {
  switch (metric) {
    case Metric::Nm:
      *stderr_out = s.stderr_nm;
      return s.nm;
    case Metric::Cv:
      *stderr_out = s.stderr_cv;
      if (!s.cv_defined) throw NumericalError("coefficient of variation is undefined");
      return s.cv;
    case Metric::Sk:
    default:
      *stderr_out = s.stderr_sk;
      if (!s.sk_defined) throw NumericalError("skewness is undefined");
      return s.sk;
  }
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (count < 1) throw ParameterError("grid must contain at least one point");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  return out;
}

InputSpec ExperimentConfig::input_spec() const {
  switch (family) {
    case FamilyKind::Squeezed:
      return InputSpec::squeezed(param, modes, occupied);
    case FamilyKind::Thermal:
      return InputSpec::thermal(param, modes, occupied);
    case FamilyKind::Coherent:
      return InputSpec::coherent(Complex(param, param2), modes, occupied);
    case FamilyKind::Classical:
    default:
      return InputSpec::classical_asymmetric(param, param2 == 0.0 ? 1.0 : param2, modes,
                                             occupied);
  }
}

InputSpec ExperimentConfig::effective_spec() const {
  return input_spec().with_loss(eta).with_noise(nu);
}

std::string ExperimentConfig::fingerprint() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%d|%d|%d|%d|%.17g|%.17g|%.17g|%.17g|%lld|%llu|%d",
                static_cast<int>(kind), modes, occupied, static_cast<int>(family), param,
                param2, eta, nu, static_cast<long long>(trials),
                static_cast<unsigned long long>(seed), n_max);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char* p = buf; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001B3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex);
}

void ExperimentConfig::validate() const {
  if (modes < 2) throw ParameterError("experiments require at least two modes");
  if (occupied < 1 || occupied > modes) {
    throw ParameterError("occupied mode count must satisfy 1 <= N <= M");
  }
  const bool analytic_only = kind == ExperimentKind::Analytic ||
                             kind == ExperimentKind::Dilution ||
                             kind == ExperimentKind::Heatmap;
  if (trials < (analytic_only ? 0 : 1)) {
    throw ParameterError("trial count is too small for this experiment");
  }
  if (eta < 0.0 || eta > 1.0) throw ParameterError("quantum efficiency must be in [0, 1]");
  if (nu < 0.0) throw ParameterError("additive noise must be >= 0");
  if (n_max < 0) throw ParameterError("n_max must be >= 0");
  if (threads < 0) throw ParameterError("thread count must be >= 0");
  if (kind == ExperimentKind::Discriminate) {
    if (param < 0.0) throw ParameterError("target mean photon number must be >= 0");
    if (repeats < 1) throw ParameterError("repeats must be >= 1");
  }
  if (kind == ExperimentKind::Dilution) {
    if (occupied_list.empty() || total_photon_list.empty()) {
      throw ParameterError("dilution requires occupied and total-photon lists");
    }
    for (const int n : occupied_list) {
      if (n < 1 || n > modes) throw ParameterError("dilution occupied count out of range");
    }
    for (const double e : total_photon_list) {
      if (e <= 0.0) throw ParameterError("total photon number must be > 0");
    }
    if (family != FamilyKind::Squeezed && family != FamilyKind::Thermal) {
      throw ParameterError("dilution supports squeezed and thermal families");
    }
  }
  if (kind == ExperimentKind::Heatmap) {
    const bool has_eta = grid_eta.has_value();
    const bool has_nu = grid_nu.has_value();
    if (has_eta == has_nu) {
      throw ParameterError("heatmap requires exactly one of an eta grid or a nu grid");
    }
    if (grid_r.count < 1) throw ParameterError("heatmap requires an r grid");
  }
  if (kind == ExperimentKind::Truncation) {
    if (trials < 100) throw ParameterError("truncation study requires at least 100 trials");
    if (family == FamilyKind::Coherent) {
      throw ParameterError("truncation study requires zero displacement");
    }
  }
}

double family_param_for_mean_photon(FamilyKind family, double mean_photon) {
  if (mean_photon < 0.0) throw ParameterError("mean photon number must be >= 0");
  switch (family) {
    case FamilyKind::Squeezed:
      return std::asinh(std::sqrt(mean_photon));
    case FamilyKind::Thermal:
      return mean_photon;
    case FamilyKind::Coherent:
      return std::sqrt(mean_photon);
    case FamilyKind::Classical:
    default:
      return 1.0 + 4.0 * mean_photon;  // v_q with v_p = 1
  }
}

namespace {

CorrelatorSampleSet sample_correlators(const ExperimentConfig& config,
                                       const InputSpec& effective, RngPurpose purpose,
                                       std::uint64_t trial_offset,
                                       std::uint64_t sample_seed) {
  const CorrelatorEvaluator evaluate(effective);
  CorrelatorSampleSet samples;
  samples.values.resize(static_cast<std::size_t>(config.trials));
  samples.config_fingerprint = config.fingerprint();
  samples.master_seed = sample_seed;
  parallel_for(config.trials, config.threads, [&](std::int64_t i) {
    with_trial_context(i + 1, [&]() {
      RngStream rng(config.seed, purpose, trial_offset + static_cast<std::uint64_t>(i) + 1);
      const UnitaryMatrix u = sample_haar_unitary(config.modes, rng);
      samples.values[static_cast<std::size_t>(i)] = evaluate(u, 0, 1);
    });
  });
  return samples;
}

}  // namespace

SweepResult run_correlator_sweep(const ExperimentConfig& config) {
  config.validate();
  const InputSpec effective = config.effective_spec();
  SweepResult result;
  result.samples =
      sample_correlators(config, effective, RngPurpose::kHaarUnitary, 0, config.seed);
  result.effective_mean_photon = effective.mean_photon(0);
  result.effective_eccentricity = effective.eccentricity(0);
  return result;
}

SignatureExperimentResult run_signature_experiment(const ExperimentConfig& config) {
  SignatureExperimentResult result;
  result.sweep = run_correlator_sweep(config);
  result.estimated = estimate_by_method(result.sweep.samples, config);
  const HaarMoments m =
      analytic_moments(config.modes, config.occupied, result.sweep.effective_mean_photon,
                       result.sweep.effective_eccentricity);
  result.analytic = signatures_from_moments(m.m1, m.m2, m.m3, config.modes, config.occupied);
  return result;
}

DiscriminationResult run_discrimination(const ExperimentConfig& config) {
  config.validate();
  const double n_target = config.param;

  auto family_config = [&config, n_target](FamilyKind family) {
    ExperimentConfig c = config;
    c.kind = ExperimentKind::Sweep;
    c.family = family;
    c.param = family_param_for_mean_photon(family, n_target);
    c.param2 = 0.0;
    return c;
  };
  const ExperimentConfig squeezed_config = family_config(FamilyKind::Squeezed);
  const ExperimentConfig thermal_config = family_config(FamilyKind::Thermal);
  const InputSpec squeezed_spec = squeezed_config.effective_spec();
  const InputSpec thermal_spec = thermal_config.effective_spec();

  DiscriminationResult result;
  result.runs.reserve(static_cast<std::size_t>(config.repeats));
  const auto trials_u = static_cast<std::uint64_t>(config.trials);
  for (int rep = 0; rep < config.repeats; ++rep) {
    const std::uint64_t offset = trials_u * static_cast<std::uint64_t>(rep);
    const RngPurpose purpose_b = config.paired_unitaries
                                     ? RngPurpose::kHaarUnitary
                                     : RngPurpose::kHaarUnitarySecondary;
    CorrelatorSampleSet samples_s =
        sample_correlators(squeezed_config, squeezed_spec, RngPurpose::kHaarUnitary,
                           offset, derive_seed(config.seed, 0xA5, 2 * rep));
    CorrelatorSampleSet samples_t =
        sample_correlators(thermal_config, thermal_spec, purpose_b, offset,
                           derive_seed(config.seed, 0xA5, 2 * rep + 1));

    DiscriminationReport report;
    report.metric = config.metric;
    report.squeezed = estimate_by_method(samples_s, squeezed_config);
    report.thermal = estimate_by_method(samples_t, thermal_config);
    double se_s = 0.0, se_t = 0.0;
    report.value_squeezed = metric_value(report.squeezed, config.metric, &se_s);
    report.value_thermal = metric_value(report.thermal, config.metric, &se_t);
    report.delta = report.value_squeezed - report.value_thermal;
    report.sigma = std::hypot(se_s, se_t);
    if (report.sigma <= 0.0) {
      throw NumericalError("degenerate samples: zero combined standard error");
    }
    report.significance = std::abs(report.delta) / report.sigma;
    report.significant = report.significance > 3.0;
    result.significant_count += report.significant ? 1 : 0;
    result.runs.push_back(std::move(report));
  }
  return result;
}

DilutionResult run_dilution_study(const ExperimentConfig& config) {
  config.validate();
  DilutionResult result;
  std::uint64_t cell_index = 0;
  for (const double total : config.total_photon_list) {
    for (const int n_occ : config.occupied_list) {
      const double n = total / static_cast<double>(n_occ);
      const double eps =
          config.family == FamilyKind::Squeezed ? std::sqrt(n * (n + 1.0)) : 0.0;
      const double n_eff = config.eta * n + config.nu / 2.0;
      const double eps_eff = config.eta * eps;
      const HaarMoments m = analytic_moments(config.modes, n_occ, n_eff, eps_eff);
      DilutionCell cell;
      cell.total_photon = total;
      cell.occupied = n_occ;
      cell.mean_photon = n_eff;
      cell.eccentricity = eps_eff;
      cell.nm_analytic =
          m.m1 * static_cast<double>(config.modes) * static_cast<double>(config.modes) /
          static_cast<double>(n_occ);
      if (config.trials > 0) {
        ExperimentConfig cell_config = config;
        cell_config.kind = ExperimentKind::Sweep;
        cell_config.occupied = n_occ;
        cell_config.param = family_param_for_mean_photon(config.family, n);
        cell_config.param2 = 0.0;
        cell_config.seed = derive_seed(config.seed, 0xD1, cell_index);
        const SweepResult sweep = run_correlator_sweep(cell_config);
        cell.samples_histogram = freedman_diaconis_histogram(sweep.samples.values);
      }
      result.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  return result;
}

HeatmapResult run_heatmap(const ExperimentConfig& config) {
  config.validate();
  HeatmapResult result;
  result.noise_axis = config.grid_nu.has_value();
  const std::vector<double> rs = config.grid_r.values();
  const std::vector<double> channel =
      result.noise_axis ? config.grid_nu->values() : config.grid_eta->values();
  for (const double r : rs) {
    if (r < 0.0) throw ParameterError("squeezing grid values must be >= 0");
    const double n = std::sinh(r) * std::sinh(r);
    const double eps = std::sinh(2.0 * r) / 2.0;
    for (const double c : channel) {
      double n_eff = 0.0, eps_eff = 0.0;
      if (result.noise_axis) {
        if (c < 0.0) throw ParameterError("noise grid values must be >= 0");
        n_eff = n + c / 2.0;
        eps_eff = eps;
      } else {
        if (c < 0.0 || c > 1.0) throw ParameterError("eta grid values must be in [0, 1]");
        n_eff = c * n;
        eps_eff = c * eps;
      }
      const HaarMoments m = analytic_moments(config.modes, config.occupied, n_eff, eps_eff);
      HeatmapCell cell;
      cell.r = r;
      cell.channel_value = c;
      cell.mean_photon = n_eff;
      cell.eccentricity = eps_eff;
      cell.analytic =
          signatures_from_moments(m.m1, m.m2, m.m3, config.modes, config.occupied);
      result.cells.push_back(cell);
    }
  }
  if (result.noise_axis) {
    for (const double nu : channel) {
      result.boundary.emplace_back(nu, squeezing_threshold(nu));
    }
  }
  return result;
}

TruncationResult run_truncation_study(const ExperimentConfig& config) {
  config.validate();
  const InputSpec effective = config.effective_spec();
  if (effective.has_displacement()) {
    throw ParameterError("truncation study requires zero displacement");
  }
  const CorrelatorEvaluator evaluate(effective);
  const GaussianState input_state = effective.to_state();
  std::vector<int> n_max_list(static_cast<std::size_t>(config.n_max) + 1);
  std::iota(n_max_list.begin(), n_max_list.end(), 0);

  // Outcome per trial: >= 0 threshold, -1 zero exact value, -2 never converged.
  std::vector<int> outcome(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](std::int64_t i) {
    with_trial_context(i + 1, [&]() {
      RngStream rng(config.seed, RngPurpose::kHaarUnitary,
                    static_cast<std::uint64_t>(i) + 1);
      const UnitaryMatrix u = sample_haar_unitary(config.modes, rng);
      const double exact = evaluate(u, 0, 1);
      if (exact == 0.0) {
        outcome[static_cast<std::size_t>(i)] = -1;
        return;
      }
      const ReducedTwoModeState reduced = reduce_two_modes(evolve(input_state, u), 0, 1);
      const ConvergenceProfile profile = convergence_profile(reduced, exact, n_max_list);
      outcome[static_cast<std::size_t>(i)] =
          profile.threshold_n_max.has_value() ? *profile.threshold_n_max : -2;
    });
  });

  TruncationResult result;
  for (const int o : outcome) {
    if (o == -1) {
      ++result.excluded_zero_exact;
    } else if (o == -2) {
      ++result.never_converged;
    } else {
      result.thresholds.push_back(o);
    }
  }
  if (!result.thresholds.empty()) {
    result.mean_threshold =
        std::accumulate(result.thresholds.begin(), result.thresholds.end(), 0.0) /
        static_cast<double>(result.thresholds.size());
    std::vector<double> as_double(result.thresholds.begin(), result.thresholds.end());
    result.histogram = freedman_diaconis_histogram(std::move(as_double));
  }
  return result;
}

PairsResult run_fixed_unitary_pairs(const ExperimentConfig& config) {
  config.validate();
  const InputSpec effective = config.effective_spec();
  const CorrelatorEvaluator evaluate(effective);
  const int m = config.modes;
  const std::int64_t pairs_per_trial =
      static_cast<std::int64_t>(m) * (m - 1) / 2;
  PairsResult result;
  result.samples.resize(static_cast<std::size_t>(config.trials * pairs_per_trial));
  parallel_for(config.trials, config.threads, [&](std::int64_t i) {
    with_trial_context(i + 1, [&]() {
      RngStream rng(config.seed, RngPurpose::kFixedUnitary,
                    static_cast<std::uint64_t>(i) + 1);
      const UnitaryMatrix u = sample_haar_unitary(m, rng);
      std::size_t slot = static_cast<std::size_t>(i * pairs_per_trial);
      for (int j = 0; j < m; ++j) {
        for (int k = j + 1; k < m; ++k) {
          result.samples[slot++] = PairSample{i + 1, j, k, evaluate(u, j, k)};
        }
      }
    });
  });
  return result;
}

}  // namespace gbs
