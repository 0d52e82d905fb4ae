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

#ifndef GBSBENCH_CORE_EXPERIMENTS_HPP
#define GBSBENCH_CORE_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/channels.hpp"
#include "core/correlator.hpp"
#include "core/fock.hpp"
#include "core/stats.hpp"

namespace gbs {

enum class ExperimentKind {
  Sweep,
  Signatures,
  Analytic,
  Discriminate,
  Dilution,
  Heatmap,
  Truncation,
  Pairs,
};

enum class FamilyKind { Squeezed, Thermal, Coherent, Classical };

enum class OutputFormat { Csv, Json };

enum class StderrMethod { Bootstrap, Delta };

enum class Metric { Nm, Cv, Sk };

/// Inclusive linear grid.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  std::vector<double> values() const;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Sweep;
  int modes = 8;
  int occupied = 2;
  FamilyKind family = FamilyKind::Squeezed;
  /// Family parameter: r (squeezed), nbar (thermal), Re(alpha) (coherent),
  /// v_q (classical). For `discriminate` this is the target mean photon
  /// number shared by both families.
  double param = 0.0;
  /// Secondary family parameter: Im(alpha) for coherent, v_p for classical.
  double param2 = 0.0;
  double eta = 1.0;
  double nu = 0.0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  int n_max = 40;
  int bootstrap_rounds = 1000;
  StderrMethod stderr_method = StderrMethod::Bootstrap;
  int threads = 0;  ///< 0 = hardware concurrency
  std::string out_path;
  OutputFormat format = OutputFormat::Json;

  // discriminate
  Metric metric = Metric::Nm;
  int repeats = 1;
  bool paired_unitaries = false;

  // dilution
  std::vector<int> occupied_list;
  std::vector<double> total_photon_list;

  // heatmap
  GridSpec grid_r;
  std::optional<GridSpec> grid_eta;
  std::optional<GridSpec> grid_nu;

  /// Input description before channels.
  InputSpec input_spec() const;
  /// Input description after loss (first) and additive noise (second).
  InputSpec effective_spec() const;
  /// Short stable hash of the physics-relevant fields, recorded with sample
  /// sets for provenance.
  std::string fingerprint() const;

  void validate() const;
};

/// Family parameter that yields a given per-mode mean photon number.
double family_param_for_mean_photon(FamilyKind family, double mean_photon);

struct SweepResult {
  CorrelatorSampleSet samples;
  double effective_mean_photon = 0.0;
  double effective_eccentricity = 0.0;
};

/// Fixed outputs (1, 2), one Haar-random network per trial; the correlator is
/// evaluated through the input-output formula, never through Fock statistics.
SweepResult run_correlator_sweep(const ExperimentConfig& config);

struct SignatureExperimentResult {
  SweepResult sweep;
  SignatureSummary estimated;
  SignatureSummary analytic;
};

/// Monte Carlo signature estimates side by side with the closed-form values
/// for the channel-transformed input scalars.
SignatureExperimentResult run_signature_experiment(const ExperimentConfig& config);

struct DiscriminationReport {
  Metric metric = Metric::Nm;
  double value_squeezed = 0.0;
  double value_thermal = 0.0;
  double delta = 0.0;
  double sigma = 0.0;        ///< combined standard error of delta
  double significance = 0.0; ///< |delta| / sigma
  bool significant = false;  ///< |delta| > 3 sigma
  SignatureSummary squeezed;
  SignatureSummary thermal;
};

struct DiscriminationResult {
  std::vector<DiscriminationReport> runs;
  int significant_count = 0;
};

/// Squeezed-vs-thermal discrimination at matched mean photon number
/// (config.param), repeated config.repeats times with independent Haar draws
/// per family (or shared draws when paired_unitaries is set).
DiscriminationResult run_discrimination(const ExperimentConfig& config);

struct DilutionCell {
  double total_photon;
  int occupied;
  double mean_photon;
  double eccentricity;
  double nm_analytic;
  std::optional<Histogram> samples_histogram;
};

struct DilutionResult {
  std::vector<DilutionCell> cells;
};

/// Constant total energy spread over a varying number of occupied modes;
/// analytic NM per cell plus optional sampled histograms when trials > 0.
DilutionResult run_dilution_study(const ExperimentConfig& config);

struct HeatmapCell {
  double r;
  double channel_value;  ///< eta or nu, depending on the grid
  double mean_photon;
  double eccentricity;
  SignatureSummary analytic;
};

struct HeatmapResult {
  bool noise_axis = false;  ///< false: (r, eta) grid; true: (r, nu) grid
  std::vector<HeatmapCell> cells;
  /// For noise grids: the subvacuum boundary r_min(nu).
  std::vector<std::pair<double, double>> boundary;
};

/// Analytic signature landscape for squeezed inputs over (r, eta) or (r, nu).
HeatmapResult run_heatmap(const ExperimentConfig& config);

struct TruncationResult {
  std::vector<int> thresholds;  ///< one per converged trial, trial order
  int excluded_zero_exact = 0;
  int never_converged = 0;
  double mean_threshold = 0.0;
  Histogram histogram;
};

/// Per trial: evolve, reduce to the first two outputs, and locate the
/// smallest photon-number cutoff whose truncated correlator is within
/// relative 1e-3 of the formula value.
TruncationResult run_truncation_study(const ExperimentConfig& config);

struct PairSample {
  std::int64_t trial;
  int j;
  int k;
  double value;
};

struct PairsResult {
  std::vector<PairSample> samples;
};

/// The fixed-network variant: per trial one Haar unitary, correlators for all
/// output pairs j < k.
PairsResult run_fixed_unitary_pairs(const ExperimentConfig& config);

}  // namespace gbs

#endif
