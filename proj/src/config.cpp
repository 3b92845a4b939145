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

#include "iagrass/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace iagrass {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string& key, const std::string& value, long long lo, long long hi)
{
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE || v < lo || v > hi)
        throw ConfigError(key + ": expected an integer in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "], got '" + value + "'");
    return v;
}

std::uint64_t parse_seed(const std::string& value)
{
    errno = 0;
    char* end = nullptr;
    if (value.empty() || value[0] == '-')
        throw ConfigError("seed: expected a non-negative integer, got '" + value + "'");
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || errno == ERANGE)
        throw ConfigError("seed: expected a non-negative integer, got '" + value + "'");
    return v;
}

double parse_non_negative(const std::string& key, const std::string& value)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE || !(v >= 0.0))
        throw ConfigError(key + ": expected a non-negative number, got '" + value + "'");
    return v;
}

SystemDims parse_dims(const std::string& value)
{
    std::vector<int> v;
    std::istringstream is(value);
    std::string tok;
    while (std::getline(is, tok, ','))
        v.push_back(static_cast<int>(parse_integer("dims", trim(tok), 1, 64)));
    if (v.size() != 4)
        throw ConfigError("dims: expected K,M,N,d, got '" + value + "'");
    return SystemDims{v[0], v[1], v[2], v[3]};
}

const char* const kKnownKeys[] = {"preset", "dims", "snr", "scheme", "bits", "trials", "seed",
                                  "solver", "metric", "max_quantizer_bits", "threads", "out",
                                  "format", "altmin_tolerance", "altmin_max_iterations",
                                  "failure_budget"};

} // namespace

ConfigMap parse_config_text(const std::string& text)
{
    ConfigMap out;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

ConfigMap read_config_file(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

ExperimentConfig build_config(const ConfigMap& entries)
{
    for (const auto& [key, value] : entries) {
        bool known = false;
        for (const char* k : kKnownKeys)
            known = known || key == k;
        if (!known)
            throw ConfigError("unknown config key '" + key + "'");
    }
    auto get = [&](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;
    if (const auto* v = get("preset")) {
        cfg = preset(*v);
    } else {
        cfg.snr_db = parse_snr_grid("0:40:5");
    }

    if (const auto* v = get("dims"))
        cfg.dims = parse_dims(*v);
    if (const auto* v = get("snr")) {
        cfg.snr_db = parse_snr_grid(*v);
        for (auto& s : cfg.schemes)
            s.snr_db.clear();
    }
    if (const auto* v = get("metric"))
        cfg.metric = parse_metric(*v);
    if (const auto* v = get("trials"))
        cfg.trials = static_cast<int>(parse_integer("trials", *v, 1, 100'000'000));
    if (const auto* v = get("seed"))
        cfg.base_seed = parse_seed(*v);
    if (const auto* v = get("solver")) {
        try {
            cfg.solver = parse_solver(*v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (const auto* v = get("max_quantizer_bits"))
        cfg.max_quantizer_bits = static_cast<int>(parse_integer("max_quantizer_bits", *v, 0, 30));
    if (const auto* v = get("threads"))
        cfg.threads = static_cast<int>(parse_integer("threads", *v, 0, 4096));
    if (const auto* v = get("out")) {
        if (v->empty())
            throw ConfigError("out: empty path");
        cfg.out = *v;
    }
    if (const auto* v = get("format"))
        cfg.format = parse_format(*v);
    if (const auto* v = get("altmin_tolerance"))
        cfg.altmin.tolerance = parse_non_negative("altmin_tolerance", *v);
    if (const auto* v = get("altmin_max_iterations"))
        cfg.altmin.max_iterations = static_cast<int>(parse_integer("altmin_max_iterations", *v, 1, 10'000'000));
    if (const auto* v = get("failure_budget"))
        cfg.failure_budget = parse_non_negative("failure_budget", *v);

    const auto* bits = get("bits");
    std::optional<BitSchedule> sched;
    if (bits)
        sched = parse_schedule(*bits);
    if (const auto* v = get("scheme")) {
        cfg.schemes = parse_scheme_list(*v, sched ? &*sched : nullptr);
    } else if (sched) {
        std::vector<SchemeSpec> replaced;
        for (SchemeSpec s : cfg.schemes) {
            if (s.kind != SeriesKind::perfect)
                s.schedule = *sched;
            bool dup = false;
            for (const auto& r : replaced)
                dup = dup || (r.label() == s.label() && r.snr_db == s.snr_db);
            if (!dup)
                replaced.push_back(std::move(s));
        }
        cfg.schemes = std::move(replaced);
    }

    cfg.validate();
    return cfg;
}

} // namespace iagrass
