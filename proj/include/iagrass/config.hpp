// SPDX-License-Identifier: Apache-2.0
//
// iagrass: interference alignment with quantized Grassmannian CSI feedback
// Copyright (C) 2026 The iagrass authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IAGRASS_CONFIG_HPP
#define IAGRASS_CONFIG_HPP

#include "iagrass/harness.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace iagrass {

using ConfigMap = std::map<std::string, std::string>;

// Flat "key = value" text. '#' starts a comment, blank lines are skipped,
// a repeated key keeps its last value. Throws ConfigError on a line without
// '=' or with an empty key.
ConfigMap parse_config_text(const std::string& text);

// Throws IoError when the file cannot be read.
ConfigMap read_config_file(const std::filesystem::path& path);

// Builds a config from preset (key "preset", optional) plus overrides.
// Recognized keys: preset, dims (K,M,N,d), snr, scheme, bits, trials, seed,
// solver, metric, max_quantizer_bits, threads, out, format,
// altmin_tolerance, altmin_max_iterations, failure_budget.
// "bits" without "scheme" replaces the schedule of every non-perfect scheme;
// "snr" drops per-scheme grids. Throws ConfigError on unknown keys or
// malformed values; the result is validated.
ExperimentConfig build_config(const ConfigMap& entries);

} // namespace iagrass

#endif
