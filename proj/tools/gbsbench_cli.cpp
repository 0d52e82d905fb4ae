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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbsbench/gbsbench.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParameterError = 2;
constexpr int kExitNumericalError = 3;

struct CommonOptions {
  int modes = 8;
  int occupied = 2;
  std::string family = "squeezed";
  double param = 0.0;
  double param2 = 0.0;
  double eta = 1.0;
  double nu = 0.0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  int nmax = 40;
  int bootstrap_rounds = 1000;
  std::string stderr_method = "bootstrap";
  int threads = 0;
  std::string out;
  std::string format = "json";
  std::string config_path;

  std::string metric = "nm";
  int repeats = 1;
  bool paired = false;

  std::string occupied_list;
  std::string nsigma_list;
  std::string grid_r;
  std::string grid_eta;
  std::string grid_nu;
};

void add_common_options(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--modes", opt->modes, "number of network modes M");
  cmd->add_option("--occupied", opt->occupied, "number of occupied input modes N");
  cmd->add_option("--family", opt->family, "input family")
      ->check(CLI::IsMember({"squeezed", "thermal", "coherent", "classical"}));
  cmd->add_option("--param", opt->param,
                  "family parameter (r | nbar | Re alpha | v_q); for `discriminate` "
                  "the shared target mean photon number");
  cmd->add_option("--param2", opt->param2,
                  "secondary family parameter (Im alpha | v_p)");
  cmd->add_option("--eta", opt->eta, "overall quantum efficiency in [0, 1]");
  cmd->add_option("--nu", opt->nu, "uniform additive quadrature noise >= 0");
  cmd->add_option("--trials", opt->trials, "number of Haar-random trials");
  cmd->add_option("--seed", opt->seed, "master seed");
  cmd->add_option("--nmax", opt->nmax, "photon-number cutoff");
  cmd->add_option("--bootstrap-rounds", opt->bootstrap_rounds,
                  "bootstrap resampling rounds (>= 100)");
  cmd->add_option("--stderr-method", opt->stderr_method, "standard error estimator")
      ->check(CLI::IsMember({"bootstrap", "delta"}));
  cmd->add_option("--threads", opt->threads, "worker threads (0 = hardware)");
  cmd->add_option("--out", opt->out, "output file path");
  cmd->add_option("--format", opt->format, "output file format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", opt->config_path,
                  "JSON configuration file; explicit flags override its values");
}

json parse_list_int(const std::string& text) {
  json arr = json::array();
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) arr.push_back(std::stoi(item));
  return arr;
}

json parse_list_double(const std::string& text) {
  json arr = json::array();
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) arr.push_back(std::stod(item));
  return arr;
}

// "lo:hi:count" -> [lo, hi, count]
json parse_grid(const std::string& text) {
  std::stringstream stream(text);
  std::string lo, hi, count;
  if (!std::getline(stream, lo, ':') || !std::getline(stream, hi, ':') ||
      !std::getline(stream, count, ':')) {
    throw CLI::ValidationError("grid", "expected lo:hi:count");
  }
  return json::array({std::stod(lo), std::stod(hi), std::stoi(count)});
}

/// Collects the values of explicitly supplied flags into a JSON fragment.
json flags_to_json(const CLI::App& cmd, const CommonOptions& opt) {
  json doc = json::object();
  auto set_if = [&cmd, &doc](const char* flag, const char* key, const json& value) {
    const CLI::Option* o = cmd.get_option_no_throw(flag);
    if (o != nullptr && o->count() > 0) doc[key] = value;
  };
  set_if("--modes", "modes", opt.modes);
  set_if("--occupied", "occupied", opt.occupied);
  set_if("--family", "family", opt.family);
  set_if("--param", "param", opt.param);
  set_if("--param2", "param2", opt.param2);
  set_if("--eta", "eta", opt.eta);
  set_if("--nu", "nu", opt.nu);
  set_if("--trials", "trials", opt.trials);
  set_if("--seed", "seed", opt.seed);
  set_if("--nmax", "nmax", opt.nmax);
  set_if("--bootstrap-rounds", "bootstrap_rounds", opt.bootstrap_rounds);
  set_if("--stderr-method", "stderr_method", opt.stderr_method);
  set_if("--threads", "threads", opt.threads);
  set_if("--out", "out", opt.out);
  set_if("--format", "format", opt.format);
  set_if("--metric", "metric", opt.metric);
  set_if("--repeats", "repeats", opt.repeats);
  set_if("--paired", "paired_unitaries", opt.paired);
  if (const CLI::Option* o = cmd.get_option_no_throw("--occupied-list");
      o != nullptr && o->count() > 0) {
    doc["occupied_list"] = parse_list_int(opt.occupied_list);
  }
  if (const CLI::Option* o = cmd.get_option_no_throw("--nsigma-list");
      o != nullptr && o->count() > 0) {
    doc["total_photon_list"] = parse_list_double(opt.nsigma_list);
  }
  if (const CLI::Option* o = cmd.get_option_no_throw("--grid-r");
      o != nullptr && o->count() > 0) {
    doc["grid_r"] = parse_grid(opt.grid_r);
  }
  if (const CLI::Option* o = cmd.get_option_no_throw("--grid-eta");
      o != nullptr && o->count() > 0) {
    doc["grid_eta"] = parse_grid(opt.grid_eta);
  }
  if (const CLI::Option* o = cmd.get_option_no_throw("--grid-nu");
      o != nullptr && o->count() > 0) {
    doc["grid_nu"] = parse_grid(opt.grid_nu);
  }
  return doc;
}

int run(const std::string& experiment, const CLI::App& cmd, const CommonOptions& opt) {
  json config = json::object();
  if (!opt.config_path.empty()) {
    std::ifstream file(opt.config_path);
    if (!file) {
      std::cerr << "error: cannot open config file: " << opt.config_path << "\n";
      return kExitParameterError;
    }
    try {
      file >> config;
    } catch (const json::exception& e) {
      std::cerr << "error: invalid config file: " << e.what() << "\n";
      return kExitParameterError;
    }
    if (!config.is_object()) {
      std::cerr << "error: config file must contain a JSON object\n";
      return kExitParameterError;
    }
  }
  const json overrides = flags_to_json(cmd, opt);
  for (const auto& item : overrides.items()) config[item.key()] = item.value();
  config["experiment"] = experiment;

  char* summary = nullptr;
  const int status = gbsb_run_experiment(config.dump().c_str(), &summary);
  if (status != GBSB_OK) {
    std::cerr << "error: " << gbsb_last_error() << "\n";
    return (status == GBSB_ERR_PARAM || status == GBSB_ERR_UNSUPPORTED)
               ? kExitParameterError
               : kExitNumericalError;
  }
  std::cout << summary;
  gbsb_string_free(summary);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-point photon-number correlator benchmarks for Gaussian states in "
      "Haar-random linear-optical networks"};
  app.set_version_flag("--version", std::string(gbsb_version()));
  app.require_subcommand(1);

  struct Sub {
    std::string name;
    std::string description;
    CommonOptions opt;
    CLI::App* cmd = nullptr;
  };
  std::vector<Sub> subs = {
      {"sweep", "sample C12 over Haar-random networks, one value per trial", {}, nullptr},
      {"signatures", "estimate NM/CV/Sk from a sweep and compare to closed forms", {}, nullptr},
      {"analytic", "closed-form NM/CV/Sk for the configured input", {}, nullptr},
      {"discriminate", "squeezed-vs-thermal significance test at matched mean photon "
                       "number (--param)", {}, nullptr},
      {"dilution", "constant total energy spread over a varying number of inputs", {}, nullptr},
      {"heatmap", "analytic signature landscape over (r, eta) or (r, nu)", {}, nullptr},
      {"truncation", "photon-number-resolution thresholds for the correlator", {}, nullptr},
      {"pairs", "fixed-network variant: all output pairs of one unitary per trial", {}, nullptr},
  };
  for (auto& sub : subs) {
    sub.cmd = app.add_subcommand(sub.name, sub.description);
    add_common_options(sub.cmd, &sub.opt);
    if (sub.name == "discriminate") {
      sub.cmd->add_option("--metric", sub.opt.metric, "discrimination metric")
          ->check(CLI::IsMember({"nm", "cv", "sk"}));
      sub.cmd->add_option("--repeats", sub.opt.repeats, "independent repetitions");
      sub.cmd->add_flag("--paired", sub.opt.paired,
                        "reuse the same unitaries for both families");
    }
    if (sub.name == "dilution") {
      sub.cmd->add_option("--occupied-list", sub.opt.occupied_list,
                          "comma-separated occupied counts, e.g. 1,2,4");
      sub.cmd->add_option("--nsigma-list", sub.opt.nsigma_list,
                          "comma-separated total mean photon numbers, e.g. 1,2,3,4");
    }
    if (sub.name == "heatmap") {
      sub.cmd->add_option("--grid-r", sub.opt.grid_r, "squeezing grid lo:hi:count");
      sub.cmd->add_option("--grid-eta", sub.opt.grid_eta, "efficiency grid lo:hi:count");
      sub.cmd->add_option("--grid-nu", sub.opt.grid_nu, "noise grid lo:hi:count");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParameterError;
  }

  for (const auto& sub : subs) {
    if (sub.cmd->parsed()) return run(sub.name, *sub.cmd, sub.opt);
  }
  std::cerr << "error: no subcommand selected\n";
  return kExitParameterError;
}
