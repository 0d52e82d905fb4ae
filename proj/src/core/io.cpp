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

#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "core/version.hpp"

namespace gbs {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "sweep") return ExperimentKind::Sweep;
  if (name == "signatures") return ExperimentKind::Signatures;
  if (name == "analytic") return ExperimentKind::Analytic;
  if (name == "discriminate") return ExperimentKind::Discriminate;
  if (name == "dilution") return ExperimentKind::Dilution;
  if (name == "heatmap") return ExperimentKind::Heatmap;
  if (name == "truncation") return ExperimentKind::Truncation;
  if (name == "pairs") return ExperimentKind::Pairs;
  throw ParameterError("unknown experiment kind: " + name);
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Signatures: return "signatures";
    case ExperimentKind::Analytic: return "analytic";
    case ExperimentKind::Discriminate: return "discriminate";
    case ExperimentKind::Dilution: return "dilution";
    case ExperimentKind::Heatmap: return "heatmap";
    case ExperimentKind::Truncation: return "truncation";
    case ExperimentKind::Pairs: return "pairs";
  }
  return "unknown";
}

FamilyKind family_from_string(const std::string& name) {
  if (name == "squeezed") return FamilyKind::Squeezed;
  if (name == "thermal") return FamilyKind::Thermal;
  if (name == "coherent") return FamilyKind::Coherent;
  if (name == "classical") return FamilyKind::Classical;
  throw ParameterError("unknown state family: " + name);
}

std::string to_string(FamilyKind family) {
  switch (family) {
    case FamilyKind::Squeezed: return "squeezed";
    case FamilyKind::Thermal: return "thermal";
    case FamilyKind::Coherent: return "coherent";
    case FamilyKind::Classical: return "classical";
  }
  return "unknown";
}

namespace {

std::string metric_to_string(Metric metric) {
  switch (metric) {
    case Metric::Nm: return "nm";
    case Metric::Cv: return "cv";
    case Metric::Sk: return "sk";
  }
  return "unknown";
}

Metric metric_from_string(const std::string& name) {
  if (name == "nm") return Metric::Nm;
  if (name == "cv") return Metric::Cv;
  if (name == "sk") return Metric::Sk;
  throw ParameterError("unknown metric: " + name);
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  if (j.is_array()) {
    if (j.size() != 3) throw ParameterError("grid arrays must be [lo, hi, count]");
    g.lo = j.at(0).get<double>();
    g.hi = j.at(1).get<double>();
    g.count = j.at(2).get<int>();
  } else if (j.is_object()) {
    g.lo = j.at("lo").get<double>();
    g.hi = j.at("hi").get<double>();
    g.count = j.at("count").get<int>();
  } else {
    throw ParameterError("grid must be an object or a [lo, hi, count] array");
  }
  return g;
}

ordered_json grid_to_json(const GridSpec& g) {
  return ordered_json{{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}};
}

ordered_json histogram_to_json(const Histogram& h) {
  return ordered_json{{"lo", h.lo}, {"bin_width", h.bin_width}, {"counts", h.counts}};
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ParameterError("configuration must be a JSON object");
  static const std::set<std::string> known = {
      "experiment", "modes", "occupied", "family", "param", "param2", "eta", "nu",
      "trials", "seed", "nmax", "bootstrap_rounds", "stderr_method", "threads", "out",
      "format", "metric", "repeats", "paired_unitaries", "occupied_list",
      "total_photon_list", "grid_r", "grid_eta", "grid_nu"};
  for (const auto& item : doc.items()) {
    if (known.find(item.key()) == known.end()) {
      throw ParameterError("unknown configuration key: " + item.key());
    }
  }
  ExperimentConfig c;
  if (doc.contains("experiment")) {
    c.kind = experiment_kind_from_string(doc.at("experiment").get<std::string>());
  }
  if (doc.contains("modes")) c.modes = doc.at("modes").get<int>();
  if (doc.contains("occupied")) c.occupied = doc.at("occupied").get<int>();
  if (doc.contains("family")) c.family = family_from_string(doc.at("family").get<std::string>());
  if (doc.contains("param")) c.param = doc.at("param").get<double>();
  if (doc.contains("param2")) c.param2 = doc.at("param2").get<double>();
  if (doc.contains("eta")) c.eta = doc.at("eta").get<double>();
  if (doc.contains("nu")) c.nu = doc.at("nu").get<double>();
  if (doc.contains("trials")) c.trials = doc.at("trials").get<std::int64_t>();
  if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("nmax")) c.n_max = doc.at("nmax").get<int>();
  if (doc.contains("bootstrap_rounds")) {
    c.bootstrap_rounds = doc.at("bootstrap_rounds").get<int>();
  }
  if (doc.contains("stderr_method")) {
    const std::string m = doc.at("stderr_method").get<std::string>();
    if (m == "bootstrap") {
      c.stderr_method = StderrMethod::Bootstrap;
    } else if (m == "delta") {
      c.stderr_method = StderrMethod::Delta;
    } else {
      throw ParameterError("stderr_method must be 'bootstrap' or 'delta'");
    }
  }
  if (doc.contains("threads")) c.threads = doc.at("threads").get<int>();
  if (doc.contains("out")) c.out_path = doc.at("out").get<std::string>();
  if (doc.contains("format")) {
    const std::string f = doc.at("format").get<std::string>();
    if (f == "csv") {
      c.format = OutputFormat::Csv;
    } else if (f == "json") {
      c.format = OutputFormat::Json;
    } else {
      throw ParameterError("format must be 'csv' or 'json'");
    }
  }
  if (doc.contains("metric")) c.metric = metric_from_string(doc.at("metric").get<std::string>());
  if (doc.contains("repeats")) c.repeats = doc.at("repeats").get<int>();
  if (doc.contains("paired_unitaries")) {
    c.paired_unitaries = doc.at("paired_unitaries").get<bool>();
  }
  if (doc.contains("occupied_list")) {
    c.occupied_list = doc.at("occupied_list").get<std::vector<int>>();
  }
  if (doc.contains("total_photon_list")) {
    c.total_photon_list = doc.at("total_photon_list").get<std::vector<double>>();
  }
  if (doc.contains("grid_r")) c.grid_r = grid_from_json(doc.at("grid_r"));
  if (doc.contains("grid_eta")) c.grid_eta = grid_from_json(doc.at("grid_eta"));
  if (doc.contains("grid_nu")) c.grid_nu = grid_from_json(doc.at("grid_nu"));
  return c;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json out;
  out["experiment"] = to_string(c.kind);
  out["modes"] = c.modes;
  out["occupied"] = c.occupied;
  out["family"] = to_string(c.family);
  out["param"] = c.param;
  out["param2"] = c.param2;
  out["eta"] = c.eta;
  out["nu"] = c.nu;
  out["trials"] = c.trials;
  out["seed"] = c.seed;
  out["nmax"] = c.n_max;
  out["bootstrap_rounds"] = c.bootstrap_rounds;
  out["stderr_method"] =
      c.stderr_method == StderrMethod::Bootstrap ? "bootstrap" : "delta";
  out["threads"] = c.threads;
  if (!c.out_path.empty()) out["out"] = c.out_path;
  out["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  if (c.kind == ExperimentKind::Discriminate) {
    out["metric"] = metric_to_string(c.metric);
    out["repeats"] = c.repeats;
    out["paired_unitaries"] = c.paired_unitaries;
  }
  if (c.kind == ExperimentKind::Dilution) {
    out["occupied_list"] = c.occupied_list;
    out["total_photon_list"] = c.total_photon_list;
  }
  if (c.kind == ExperimentKind::Heatmap) {
    out["grid_r"] = grid_to_json(c.grid_r);
    if (c.grid_eta.has_value()) out["grid_eta"] = grid_to_json(*c.grid_eta);
    if (c.grid_nu.has_value()) out["grid_nu"] = grid_to_json(*c.grid_nu);
  }
  return out;
}

ordered_json signature_to_json(const SignatureSummary& s) {
  ordered_json out;
  out["m1"] = s.m1;
  out["m2"] = s.m2;
  out["m3"] = s.m3;
  out["nm"] = s.nm;
  out["nm_stderr"] = s.stderr_nm;
  if (s.cv_defined) {
    out["cv"] = s.cv;
    out["cv_stderr"] = s.stderr_cv;
  } else {
    out["cv"] = nullptr;
    out["cv_stderr"] = nullptr;
  }
  if (s.sk_defined) {
    out["sk"] = s.sk;
    out["sk_stderr"] = s.stderr_sk;
  } else {
    out["sk"] = nullptr;
    out["sk_stderr"] = nullptr;
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string out = "trial,C12\n";
  for (std::size_t i = 0; i < result.samples.values.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_g17(result.samples.values[i]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw ParameterError("cannot open output file: " + path);
  stream << content;
  if (!stream) throw ParameterError("failed while writing output file: " + path);
}

namespace {

ordered_json summary_envelope(const ExperimentConfig& config) {
  ordered_json out;
  out["experiment"] = to_string(config.kind);
  out["version"] = kVersion;
  out["seed"] = config.seed;
  out["fingerprint"] = config.fingerprint();
  out["config"] = config_to_json(config);
  return out;
}

void attach_output_note(ordered_json& summary, const ExperimentConfig& config) {
  if (config.out_path.empty()) return;
  summary["output"] = ordered_json{
      {"path", config.out_path},
      {"format", config.format == OutputFormat::Csv ? "csv" : "json"}};
}

SignatureSummary analytic_signatures_for(const ExperimentConfig& config) {
  const InputSpec effective = config.effective_spec();
  const HaarMoments m = analytic_moments(config.modes, config.occupied,
                                         effective.mean_photon(0), effective.eccentricity(0));
  return signatures_from_moments(m.m1, m.m2, m.m3, config.modes, config.occupied);
}

ordered_json run_sweep_like(const ExperimentConfig& config) {
  ordered_json summary = summary_envelope(config);
  const SignatureExperimentResult result = run_signature_experiment(config);
  summary["effective_mean_photon"] = result.sweep.effective_mean_photon;
  summary["effective_eccentricity"] = result.sweep.effective_eccentricity;
  summary["estimated"] = signature_to_json(result.estimated);
  summary["analytic"] = signature_to_json(result.analytic);

  if (!config.out_path.empty()) {
    if (config.format == OutputFormat::Csv) {
      if (config.kind == ExperimentKind::Sweep) {
        write_text_file(config.out_path, sweep_to_csv(result.sweep));
      } else {
        const SignatureSummary& e = result.estimated;
        const SignatureSummary& a = result.analytic;
        std::string csv =
            "m1,m2,m3,NM,NM_stderr,CV,CV_stderr,Sk,Sk_stderr,"
            "NM_analytic,CV_analytic,Sk_analytic\n";
        csv += format_g17(e.m1) + "," + format_g17(e.m2) + "," + format_g17(e.m3) + "," +
               format_g17(e.nm) + "," + format_g17(e.stderr_nm) + "," + format_g17(e.cv) +
               "," + format_g17(e.stderr_cv) + "," + format_g17(e.sk) + "," +
               format_g17(e.stderr_sk) + "," + format_g17(a.nm) + "," + format_g17(a.cv) +
               "," + format_g17(a.sk) + "\n";
        write_text_file(config.out_path, csv);
      }
    } else {
      ordered_json doc = summary;
      if (config.kind == ExperimentKind::Sweep) {
        doc["samples"] = result.sweep.samples.values;
      }
      write_text_file(config.out_path, doc.dump(2) + "\n");
    }
  }
  attach_output_note(summary, config);
  return summary;
}

ordered_json run_analytic(const ExperimentConfig& config) {
  config.validate();
  ordered_json summary = summary_envelope(config);
  const InputSpec effective = config.effective_spec();
  summary["effective_mean_photon"] = effective.mean_photon(0);
  summary["effective_eccentricity"] = effective.eccentricity(0);
  summary["analytic"] = signature_to_json(analytic_signatures_for(config));
  if (!config.out_path.empty()) {
    if (config.format == OutputFormat::Csv) {
      const SignatureSummary s = analytic_signatures_for(config);
      std::string csv = "m1,m2,m3,NM,CV,Sk\n";
      csv += format_g17(s.m1) + "," + format_g17(s.m2) + "," + format_g17(s.m3) + "," +
             format_g17(s.nm) + "," + format_g17(s.cv) + "," + format_g17(s.sk) + "\n";
      write_text_file(config.out_path, csv);
    } else {
      write_text_file(config.out_path, summary.dump(2) + "\n");
    }
  }
  attach_output_note(summary, config);
  return summary;
}

ordered_json run_discriminate(const ExperimentConfig& config) {
  ordered_json summary = summary_envelope(config);
  const DiscriminationResult result = run_discrimination(config);
  summary["metric"] = metric_to_string(config.metric);
  summary["repeats"] = config.repeats;
  summary["significant_count"] = result.significant_count;
  ordered_json runs = ordered_json::array();
  std::string csv =
      "run,metric,value_squeezed,value_thermal,delta,sigma,significance,significant\n";
  int run_index = 1;
  for (const DiscriminationReport& r : result.runs) {
    ordered_json jr;
    jr["metric"] = metric_to_string(r.metric);
    jr["value_squeezed"] = r.value_squeezed;
    jr["value_thermal"] = r.value_thermal;
    jr["delta"] = r.delta;
    jr["sigma"] = r.sigma;
    jr["significance"] = r.significance;
    jr["significant"] = r.significant;
    jr["squeezed"] = signature_to_json(r.squeezed);
    jr["thermal"] = signature_to_json(r.thermal);
    runs.push_back(std::move(jr));
    csv += std::to_string(run_index++) + "," + metric_to_string(r.metric) + "," +
           format_g17(r.value_squeezed) + "," + format_g17(r.value_thermal) + "," +
           format_g17(r.delta) + "," + format_g17(r.sigma) + "," +
           format_g17(r.significance) + "," + (r.significant ? "1" : "0") + "\n";
  }
  summary["runs"] = std::move(runs);
  if (!config.out_path.empty()) {
    if (config.format == OutputFormat::Csv) {
      write_text_file(config.out_path, csv);
    } else {
      write_text_file(config.out_path, summary.dump(2) + "\n");
    }
  }
  attach_output_note(summary, config);
  return summary;
}

ordered_json run_dilution(const ExperimentConfig& config) {
  ordered_json summary = summary_envelope(config);
  const DilutionResult result = run_dilution_study(config);
  ordered_json cells = ordered_json::array();
  std::string csv = "total_photon,occupied,mean_photon,eccentricity,NM\n";
  for (const DilutionCell& cell : result.cells) {
    ordered_json jc;
    jc["total_photon"] = cell.total_photon;
    jc["occupied"] = cell.occupied;
    jc["mean_photon"] = cell.mean_photon;
    jc["eccentricity"] = cell.eccentricity;
    jc["nm"] = cell.nm_analytic;
    if (cell.samples_histogram.has_value()) {
      jc["histogram"] = histogram_to_json(*cell.samples_histogram);
    }
    cells.push_back(std::move(jc));
    csv += format_g17(cell.total_photon) + "," + std::to_string(cell.occupied) + "," +
           format_g17(cell.mean_photon) + "," + format_g17(cell.eccentricity) + "," +
           format_g17(cell.nm_analytic) + "\n";
  }
  summary["cells"] = std::move(cells);
  if (!config.out_path.empty()) {
    write_text_file(config.out_path, config.format == OutputFormat::Csv
                                         ? csv
                                         : summary.dump(2) + "\n");
  }
  attach_output_note(summary, config);
  return summary;
}

ordered_json run_heatmap_io(const ExperimentConfig& config) {
  ordered_json summary = summary_envelope(config);
  const HeatmapResult result = run_heatmap(config);
  const std::string channel_name = result.noise_axis ? "nu" : "eta";
  ordered_json cells = ordered_json::array();
  std::string csv = "r," + channel_name + ",mean_photon,eccentricity,NM,CV,Sk\n";
  for (const HeatmapCell& cell : result.cells) {
    ordered_json jc;
    jc["r"] = cell.r;
    jc[channel_name] = cell.channel_value;
    jc["mean_photon"] = cell.mean_photon;
    jc["eccentricity"] = cell.eccentricity;
    jc["signatures"] = signature_to_json(cell.analytic);
    cells.push_back(std::move(jc));
    csv += format_g17(cell.r) + "," + format_g17(cell.channel_value) + "," +
           format_g17(cell.mean_photon) + "," + format_g17(cell.eccentricity) + "," +
           format_g17(cell.analytic.nm) + "," + format_g17(cell.analytic.cv) + "," +
           format_g17(cell.analytic.sk) + "\n";
  }
  summary["cells"] = std::move(cells);
  if (result.noise_axis) {
    ordered_json boundary = ordered_json::array();
    for (const auto& [nu, r_min] : result.boundary) {
      boundary.push_back(ordered_json{{"nu", nu}, {"r_min", r_min}});
    }
    summary["subvacuum_boundary"] = std::move(boundary);
  }
  if (!config.out_path.empty()) {
    write_text_file(config.out_path, config.format == OutputFormat::Csv
                                         ? csv
                                         : summary.dump(2) + "\n");
  }
  attach_output_note(summary, config);
  return summary;
}

ordered_json run_truncation_io(const ExperimentConfig& config) {
  ordered_json summary = summary_envelope(config);
  const TruncationResult result = run_truncation_study(config);
  summary["converged_trials"] = result.thresholds.size();
  summary["excluded_zero_exact"] = result.excluded_zero_exact;
  summary["never_converged"] = result.never_converged;
  summary["mean_threshold"] = result.mean_threshold;
  summary["thresholds"] = result.thresholds;
  if (!result.thresholds.empty()) {
    summary["histogram"] = histogram_to_json(result.histogram);
  }
  if (!config.out_path.empty()) {
    if (config.format == OutputFormat::Csv) {
      std::string csv = "threshold_n_max\n";
      for (const int t : result.thresholds) csv += std::to_string(t) + "\n";
      write_text_file(config.out_path, csv);
    } else {
      write_text_file(config.out_path, summary.dump(2) + "\n");
    }
  }
  attach_output_note(summary, config);
  return summary;
}

ordered_json run_pairs_io(const ExperimentConfig& config) {
  ordered_json summary = summary_envelope(config);
  const PairsResult result = run_fixed_unitary_pairs(config);
  std::vector<double> values;
  values.reserve(result.samples.size());
  std::string csv = "trial,j,k,C\n";
  for (const PairSample& s : result.samples) {
    values.push_back(s.value);
    csv += std::to_string(s.trial) + "," + std::to_string(s.j + 1) + "," +
           std::to_string(s.k + 1) + "," + format_g17(s.value) + "\n";
  }
  const RawMoments m = raw_moments(values);
  summary["pair_count"] = result.samples.size();
  summary["moments"] = ordered_json{{"m1", m.m1}, {"m2", m.m2}, {"m3", m.m3}};
  if (!config.out_path.empty()) {
    if (config.format == OutputFormat::Csv) {
      write_text_file(config.out_path, csv);
    } else {
      ordered_json doc = summary;
      doc["samples"] = values;
      write_text_file(config.out_path, doc.dump(2) + "\n");
    }
  }
  attach_output_note(summary, config);
  return summary;
}

}  // namespace

ordered_json run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Sweep:
    case ExperimentKind::Signatures:
      return run_sweep_like(config);
    case ExperimentKind::Analytic:
      return run_analytic(config);
    case ExperimentKind::Discriminate:
      return run_discriminate(config);
    case ExperimentKind::Dilution:
      return run_dilution(config);
    case ExperimentKind::Heatmap:
      return run_heatmap_io(config);
    case ExperimentKind::Truncation:
      return run_truncation_io(config);
    case ExperimentKind::Pairs:
      return run_pairs_io(config);
  }
  throw ParameterError("unknown experiment kind");
}

ordered_json run_experiment_json(const json& config_doc) {
  return run_experiment(config_from_json(config_doc));
}

}  // namespace gbs
