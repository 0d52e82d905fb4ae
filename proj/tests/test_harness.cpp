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
#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "core/io.hpp"

using namespace gbs;

namespace {

const double kRUnit = std::log(1.0 + std::sqrt(2.0));

ExperimentConfig base_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.modes = 8;
  c.occupied = 2;
  c.family = FamilyKind::Squeezed;
  c.param = kRUnit;
  c.trials = 1000;
  c.seed = 404;
  c.bootstrap_rounds = 200;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_path(const char* name) {
  return std::string("harness_io_") + name;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("coherent sweeps are identically zero") {
  ExperimentConfig c = base_config(ExperimentKind::Sweep);
  c.family = FamilyKind::Coherent;
  c.param = 1.0;
  c.trials = 100;
  const SweepResult result = run_correlator_sweep(c);
  for (const double v : result.samples.values) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("squeezed samples are broader than thermal samples") {
  ExperimentConfig sq = base_config(ExperimentKind::Sweep);
  sq.trials = 4000;
  ExperimentConfig th = sq;
  th.family = FamilyKind::Thermal;
  th.param = 1.0;
  const double var_sq = sample_variance(run_correlator_sweep(sq).samples.values);
  const double var_th = sample_variance(run_correlator_sweep(th).samples.values);
  CHECK(var_sq / var_th > 2.0);
}

TEST_CASE("sweeps are reproducible and schedule-independent") {
  ExperimentConfig c = base_config(ExperimentKind::Sweep);
  c.trials = 64;
  c.threads = 1;
  const SweepResult serial = run_correlator_sweep(c);
  c.threads = 4;
  const SweepResult parallel = run_correlator_sweep(c);
  REQUIRE(serial.samples.values.size() == parallel.samples.values.size());
  for (std::size_t i = 0; i < serial.samples.values.size(); ++i) {
    CHECK(serial.samples.values[i] == parallel.samples.values[i]);
  }
  const SweepResult again = run_correlator_sweep(c);
  for (std::size_t i = 0; i < serial.samples.values.size(); ++i) {
    CHECK(again.samples.values[i] == serial.samples.values[i]);
  }
}

TEST_CASE("byte-identical persisted outputs across thread counts") {
  ExperimentConfig c = base_config(ExperimentKind::Sweep);
  c.trials = 50;
  c.format = OutputFormat::Csv;
  c.out_path = temp_path("sweep_a.csv");
  c.threads = 1;
  run_experiment(c);
  ExperimentConfig c2 = c;
  c2.out_path = temp_path("sweep_b.csv");
  c2.threads = 4;
  run_experiment(c2);
  const std::string a = slurp(c.out_path);
  const std::string b = slurp(c2.out_path);
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(a.substr(0, 10) == std::string("trial,C12\n"));
  std::remove(c.out_path.c_str());
  std::remove(c2.out_path.c_str());
}

TEST_CASE("signature experiment against the closed forms") {
  ExperimentConfig c = base_config(ExperimentKind::Signatures);
  c.trials = 10000;
  c.seed = 505;
  const SignatureExperimentResult result = run_signature_experiment(c);
  CHECK(result.analytic.nm == doctest::Approx(2.5397).epsilon(1e-4));
  int within = 0;
  within += std::abs(result.estimated.nm - result.analytic.nm) <=
            3.0 * result.estimated.stderr_nm;
  within += std::abs(result.estimated.cv - result.analytic.cv) <=
            3.0 * result.estimated.stderr_cv;
  within += std::abs(result.estimated.sk - result.analytic.sk) <=
            3.0 * result.estimated.stderr_sk;
  CHECK(within >= 2);
}

TEST_CASE("thermal analytic signatures are flat in the photon number") {
  double cv_ref = 0.0, sk_ref = 0.0;
  bool first = true;
  for (const double nbar : {0.25, 0.5, 1.0, 2.0}) {
    ExperimentConfig c = base_config(ExperimentKind::Signatures);
    c.family = FamilyKind::Thermal;
    c.param = nbar;
    c.trials = 10;
    c.bootstrap_rounds = 100;
    const SignatureExperimentResult result = run_signature_experiment(c);
    if (first) {
      cv_ref = result.analytic.cv;
      sk_ref = result.analytic.sk;
      first = false;
    } else {
      CHECK(std::abs(result.analytic.cv - cv_ref) <= 1e-12);
      CHECK(std::abs(result.analytic.sk - sk_ref) <= 1e-12);
    }
  }
}

TEST_CASE("system size does not change relative uncertainties" * doctest::timeout(600)) {
  auto relative_stderr = [](int modes, int occupied, std::uint64_t seed) {
    ExperimentConfig c = base_config(ExperimentKind::Signatures);
    c.modes = modes;
    c.occupied = occupied;
    c.trials = 2000;
    c.seed = seed;
    const SignatureExperimentResult r = run_signature_experiment(c);
    return r.estimated.stderr_nm / r.estimated.nm;
  };
  const double small = relative_stderr(8, 2, 71);
  const double large = relative_stderr(120, 10, 72);
  CHECK(large / small > 1.0 / 3.0);
  CHECK(large / small < 3.0);
}

TEST_CASE("discrimination at matched mean photon number") {
  ExperimentConfig c = base_config(ExperimentKind::Discriminate);
  c.param = 1.0;  // target <n>
  c.eta = 0.2;
  c.trials = 50;
  c.repeats = 3;
  c.seed = 606;
  const DiscriminationResult result = run_discrimination(c);
  REQUIRE(result.runs.size() == 3);
  for (const DiscriminationReport& run : result.runs) {
    CHECK(run.delta == doctest::Approx(run.value_squeezed - run.value_thermal));
    CHECK(run.significance == doctest::Approx(std::abs(run.delta) / run.sigma));
    CHECK(run.significant == (run.significance > 3.0));
    // matched channel-transformed mean photon number on both arms
    CHECK(run.squeezed.m1 > run.thermal.m1);
  }
  SUBCASE("ten trials are typically insufficient") {
    ExperimentConfig few = c;
    few.trials = 10;
    few.repeats = 5;
    few.seed = 607;
    const DiscriminationResult weak = run_discrimination(few);
    CHECK(weak.significant_count <= 2);
  }
  SUBCASE("paired unitaries reduce the variance of the difference") {
    ExperimentConfig paired = c;
    paired.paired_unitaries = true;
    paired.repeats = 1;
    CHECK_NOTHROW(run_discrimination(paired));
  }
}

TEST_CASE("dilution study") {
  ExperimentConfig c = base_config(ExperimentKind::Dilution);
  c.modes = 10;
  c.occupied_list = {1, 2, 4};
  c.total_photon_list = {1.0, 2.0, 3.0, 4.0};
  c.trials = 0;
  const DilutionResult result = run_dilution_study(c);
  REQUIRE(result.cells.size() == 12);
  for (std::size_t i = 0; i < result.cells.size(); i += 3) {
    CHECK(result.cells[i].nm_analytic > result.cells[i + 1].nm_analytic);
    CHECK(result.cells[i + 1].nm_analytic > result.cells[i + 2].nm_analytic);
  }
  SUBCASE("thermal values are smaller at equal energy") {
    ExperimentConfig th = c;
    th.family = FamilyKind::Thermal;
    const DilutionResult thermal = run_dilution_study(th);
    for (std::size_t i = 0; i < thermal.cells.size(); ++i) {
      CHECK(thermal.cells[i].nm_analytic < result.cells[i].nm_analytic);
    }
  }
  SUBCASE("full occupation keeps only the phase-sensitive term") {
    ExperimentConfig full = c;
    full.occupied_list = {10};
    full.total_photon_list = {2.0};
    const DilutionResult r = run_dilution_study(full);
    const double n = 0.2;
    const double e2 = n * (n + 1.0);
    CHECK(r.cells.at(0).nm_analytic ==
          doctest::Approx(100.0 / 10.0 * 10.0 * e2 / (10.0 * 11.0)).epsilon(1e-12));
  }
  SUBCASE("histograms appear when trials are requested") {
    ExperimentConfig sampled = c;
    sampled.occupied_list = {2};
    sampled.total_photon_list = {1.0};
    sampled.trials = 500;
    const DilutionResult r = run_dilution_study(sampled);
    REQUIRE(r.cells.at(0).samples_histogram.has_value());
    std::int64_t count = 0;
    for (const auto b : r.cells.at(0).samples_histogram->counts) count += b;
    CHECK(count == 500);
  }
  SUBCASE("occupied count above the mode count is rejected") {
    ExperimentConfig bad = c;
    bad.occupied_list = {11};
    CHECK_THROWS_AS(run_dilution_study(bad), ParameterError);
  }
}

TEST_CASE("heatmap studies") {
  SUBCASE("loss landscape: CV and Sk are constant along eta") {
    ExperimentConfig c = base_config(ExperimentKind::Heatmap);
    c.grid_r = GridSpec{0.2, 1.4, 4};
    c.grid_eta = GridSpec{0.1, 1.0, 5};
    const HeatmapResult result = run_heatmap(c);
    REQUIRE(result.cells.size() == 20);
    for (std::size_t base = 0; base < result.cells.size(); base += 5) {
      for (std::size_t i = base + 1; i < base + 5; ++i) {
        CHECK(std::abs(result.cells[i].analytic.cv - result.cells[base].analytic.cv) <=
              1e-12);
        CHECK(std::abs(result.cells[i].analytic.sk - result.cells[base].analytic.sk) <=
              1e-12);
      }
    }
  }
  SUBCASE("noise landscape carries the subvacuum boundary") {
    ExperimentConfig c = base_config(ExperimentKind::Heatmap);
    c.grid_r = GridSpec{0.0, 1.0, 3};
    c.grid_nu = GridSpec{0.0, 0.8, 5};
    const HeatmapResult result = run_heatmap(c);
    REQUIRE(result.boundary.size() == 5);
    for (const auto& [nu, r_min] : result.boundary) {
      CHECK(r_min == doctest::Approx(squeezing_threshold(nu)));
    }
    // nu = 0 column equals the clean values
    const HaarMoments clean = analytic_moments(8, 2, std::sinh(1.0) * std::sinh(1.0),
                                               std::sinh(2.0) / 2.0);
    const SignatureSummary expected =
        signatures_from_moments(clean.m1, clean.m2, clean.m3, 8, 2);
    const HeatmapCell& last_r_first_nu = result.cells[2 * 5];
    CHECK(last_r_first_nu.r == doctest::Approx(1.0));
    CHECK(last_r_first_nu.channel_value == 0.0);
    CHECK(last_r_first_nu.analytic.nm == doctest::Approx(expected.nm).epsilon(1e-13));
  }
  SUBCASE("exactly one channel grid is required") {
    ExperimentConfig c = base_config(ExperimentKind::Heatmap);
    c.grid_r = GridSpec{0.0, 1.0, 3};
    CHECK_THROWS_AS(run_heatmap(c), ParameterError);
    c.grid_eta = GridSpec{0.1, 1.0, 2};
    c.grid_nu = GridSpec{0.0, 0.5, 2};
    CHECK_THROWS_AS(run_heatmap(c), ParameterError);
  }
}

TEST_CASE("truncation study smoke run" * doctest::timeout(600)) {
  ExperimentConfig c = base_config(ExperimentKind::Truncation);
  c.eta = 0.2;
  c.trials = 150;
  c.n_max = 40;
  const TruncationResult result = run_truncation_study(c);
  CHECK(result.thresholds.size() + result.never_converged +
            result.excluded_zero_exact ==
        150);
  CHECK(result.excluded_zero_exact == 0);
  CHECK(result.mean_threshold <= 11.0);
  CHECK_THROWS_AS(
      [&]() {
        ExperimentConfig bad = c;
        bad.trials = 50;
        run_truncation_study(bad);
      }(),
      ParameterError);
}

TEST_CASE("fixed-network pair collection") {
  ExperimentConfig c = base_config(ExperimentKind::Pairs);
  c.modes = 5;
  c.occupied = 2;
  c.trials = 2;
  const PairsResult result = run_fixed_unitary_pairs(c);
  REQUIRE(result.samples.size() == 2 * 10);
  const InputSpec spec = c.effective_spec();
  for (const PairSample& s : result.samples) {
    RngStream rng(c.seed, RngPurpose::kFixedUnitary,
                  static_cast<std::uint64_t>(s.trial));
    const UnitaryMatrix u = sample_haar_unitary(5, rng);
    CHECK(s.value ==
          correlator_identical_inputs(CorrelatorInputs::from_spec(spec), u, s.j, s.k));
  }
}

TEST_CASE("configuration parsing and serialization") {
  SUBCASE("round trip") {
    ExperimentConfig c = base_config(ExperimentKind::Heatmap);
    c.grid_r = GridSpec{0.0, 1.5, 16};
    c.grid_nu = GridSpec{0.0, 0.9, 10};
    c.out_path = "somewhere.csv";
    c.format = OutputFormat::Csv;
    const ExperimentConfig back = config_from_json(config_to_json(c));
    CHECK(back.kind == c.kind);
    CHECK(back.modes == c.modes);
    CHECK(back.param == c.param);
    CHECK(back.out_path == c.out_path);
    CHECK(back.format == OutputFormat::Csv);
    REQUIRE(back.grid_nu.has_value());
    CHECK(back.grid_nu->count == 10);
  }
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"modez", 8}}), ParameterError);
  }
  SUBCASE("grids accept the compact array form") {
    const ExperimentConfig c = config_from_json(
        nlohmann::json{{"experiment", "heatmap"}, {"grid_r", {0.0, 1.0, 5}}});
    CHECK(c.grid_r.count == 5);
    CHECK(c.grid_r.hi == 1.0);
  }
  SUBCASE("17 significant digits survive the round trip") {
    CHECK(format_g17(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_g17(0.75) == "0.75");
  }
}

TEST_CASE("experiment dispatcher writes summaries and files") {
  ExperimentConfig c = base_config(ExperimentKind::Signatures);
  c.trials = 300;
  c.out_path = temp_path("signatures.json");
  const nlohmann::ordered_json summary = run_experiment(c);
  CHECK(summary.at("experiment") == "signatures");
  CHECK(summary.at("version") == std::string("0.1.0"));
  CHECK(summary.at("seed") == 404);
  CHECK(summary.contains("estimated"));
  CHECK(summary.contains("analytic"));
  CHECK(summary.at("config").at("modes") == 8);
  const std::string persisted = slurp(c.out_path);
  CHECK(!persisted.empty());
  const nlohmann::json parsed = nlohmann::json::parse(persisted);
  CHECK(parsed.at("estimated").contains("nm"));
  std::remove(c.out_path.c_str());

  SUBCASE("undefined signatures serialize as null") {
    // vacuum input: every sample is exactly zero, so CV and Sk are undefined
    ExperimentConfig vac = base_config(ExperimentKind::Signatures);
    vac.family = FamilyKind::Thermal;
    vac.param = 0.0;
    vac.trials = 64;
    const nlohmann::ordered_json s = run_experiment(vac);
    CHECK(s.at("estimated").at("cv").is_null());
    CHECK(s.at("estimated").at("sk").is_null());
  }
}

TEST_SUITE_END();
