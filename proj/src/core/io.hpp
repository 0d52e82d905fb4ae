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

#ifndef GBSBENCH_CORE_IO_HPP
#define GBSBENCH_CORE_IO_HPP

#include <string>

#include <json.hpp>

#include "core/experiments.hpp"

namespace gbs {

/// 17-significant-digit decimal rendering; round-trips any double exactly.
std::string format_g17(double value);

ExperimentKind experiment_kind_from_string(const std::string& name);
std::string to_string(ExperimentKind kind);
FamilyKind family_from_string(const std::string& name);
std::string to_string(FamilyKind family);

/// Parses a configuration document. Unknown keys are rejected so typos fail
/// loudly. The "experiment" key selects the kind.
ExperimentConfig config_from_json(const nlohmann::json& doc);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

nlohmann::ordered_json signature_to_json(const SignatureSummary& s);

/// Sample CSV: header "trial,C12", one row per trial, 17 significant digits.
std::string sweep_to_csv(const SweepResult& result);

/// Runs the experiment selected by the config, writes the requested output
/// file (if any), and returns the JSON summary document (config echo, raw
/// moments, signatures with standard errors, analytic references, seeds and
/// software version, as applicable to the experiment kind).
nlohmann::ordered_json run_experiment(const ExperimentConfig& config);

/// Same, from a JSON document.
nlohmann::ordered_json run_experiment_json(const nlohmann::json& config_doc);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gbs

#endif
