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

// Command-line front end: Monte-Carlo sweeps and codebook files.
//
// Exit codes: 0 success, 2 configuration error, 3 solver-failure budget
// exceeded, 4 I/O error, 1 anything unexpected.

#include "iagrass/config.hpp"
#include "iagrass/grassmann.hpp"
#include "iagrass/harness.hpp"
#include "iagrass/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct RunFlags {
    std::string config;
    std::map<std::string, std::string> values; // flag name -> config key value
    bool quiet = false;
};

int run_sweep(const RunFlags& flags)
{
    using namespace iagrass;
    ConfigMap entries;
    if (!flags.config.empty())
        entries = read_config_file(flags.config);
    for (const auto& [k, v] : flags.values)
        entries[k] = v;
    const ExperimentConfig cfg = build_config(entries);

    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentResult res = run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool to_stdout = cfg.out == "-";
    if (to_stdout && cfg.format != OutputFormat::csv)
        throw ConfigError("out = - only works with format = csv");
    if (cfg.format != OutputFormat::plot) {
        if (to_stdout)
            std::cout << format_csv(res.rows);
        else
            emit_csv(res.rows, cfg.out);
    }
    if (cfg.format != OutputFormat::csv) {
        std::filesystem::path plot = cfg.out;
        plot.replace_extension(".gp");
        emit_plot(res.rows, plot, flags.values.count("preset") ? flags.values.at("preset") : "");
    }
    if (!flags.quiet) {
        std::fprintf(stderr, "%zu rows, %d trials, %d thread(s), %.1f s\n", res.rows.size(), cfg.trials,
                     res.threads, secs);
        for (const auto& d : res.diagnostics)
            if (d.failures > 0)
                std::fprintf(stderr, "  %s: %d of %d trials dropped (%s)\n", d.series.c_str(), d.failures,
                             d.attempts, d.messages.empty() ? "" : d.messages.front().c_str());
    }
    return kExitOk;
}

int export_codebook(const std::string& kind, int n, int p, int bits, std::uint64_t seed,
                    const std::string& out)
{
    using namespace iagrass;
    CodebookShape shape;
    if (kind == "subspace")
        shape.kind = ManifoldKind::subspace;
    else if (kind == "composite")
        shape.kind = ManifoldKind::composite;
    else
        throw ConfigError("codebook kind must be subspace or composite");
    shape.n = n;
    shape.p = p;
    Codebook cb = [&] {
        try {
            return rvq_codebook(shape, bits, seed);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    save_codebook(cb, out);
    return kExitOk;
}

int inspect_codebook(const std::string& path)
{
    using namespace iagrass;
    const Codebook cb = load_codebook(path);
    std::printf("kind=%s n=%d p=%d bits=%d seed=%llu entries=%zu\n",
                cb.shape().kind == ManifoldKind::subspace ? "subspace" : "composite", cb.shape().n,
                cb.shape().p, cb.bits(), static_cast<unsigned long long>(cb.seed()), cb.size());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interference alignment with quantized Grassmannian feedback: Monte-Carlo sweeps"};
    app.set_version_flag("--version", "iagrass 0.1.0");

    RunFlags flags;
    app.add_option("--config", flags.config, "flat key = value config file; flags override it");
    auto flag = [&](const char* name, const char* key, const char* help) {
        return app.add_option_function<std::string>(
            name, [&flags, key](const std::string& v) { flags.values[key] = v; }, help);
    };
    flag("--preset", "preset", "fig1, fig2, fig3, fig4 or asym-dof");
    flag("--trials", "trials", "Monte-Carlo trials per point");
    flag("--seed", "seed", "base seed; trial t uses seed + t");
    flag("--snr", "snr", "SNR grid in dB: start:stop:step or a comma list");
    flag("--bits", "bits", "bit schedule: 10, scaled, scaled*0.5, or per user 10/scaled/scaled");
    flag("--scheme", "scheme", "comma list of perfect|proposed|ncq|perturbed|bound[:schedule]");
    flag("--solver", "solver", "auto, closed-form or altmin");
    flag("--out", "out", "CSV path ('-' for stdout); the plot script takes the .gp extension");
    flag("--format", "format", "csv, plot or both")->check(CLI::IsMember({"csv", "plot", "both"}));
    flag("--dims", "dims", "K,M,N,d");
    flag("--metric", "metric", "optimal (unfiltered receivers) or projected (after G_i)");
    flag("--threads", "threads", "worker threads, 0 = all cores (IA_GRASSMANN_THREADS caps it)");
    flag("--max-quantizer-bits", "max_quantizer_bits", "largest budget run through the real quantizer");
    app.add_flag("-q,--quiet", flags.quiet, "no summary on stderr");

    auto* cb_export = app.add_subcommand("codebook-export", "write an RVQ codebook file");
    std::string cb_kind = "subspace", cb_out;
    int cb_n = 4, cb_p = 2, cb_bits = 10;
    std::uint64_t cb_seed = 1;
    cb_export->add_option("--kind", cb_kind, "subspace or composite")->capture_default_str();
    cb_export->add_option("--n", cb_n, "ambient dimension (vector length for composite)")->capture_default_str();
    cb_export->add_option("--p", cb_p, "subspace dimension (vector count for composite)")->capture_default_str();
    cb_export->add_option("--bits", cb_bits, "log2 of the entry count")->capture_default_str();
    cb_export->add_option("--seed", cb_seed, "codebook seed")->capture_default_str();
    cb_export->add_option("--out", cb_out, "output file")->required();

    auto* cb_info = app.add_subcommand("codebook-info", "print the header of a codebook file");
    std::string cb_path;
    cb_info->add_option("file", cb_path, "codebook file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*cb_export)
            return export_codebook(cb_kind, cb_n, cb_p, cb_bits, cb_seed, cb_out);
        if (*cb_info)
            return inspect_codebook(cb_path);
        return run_sweep(flags);
    } catch (const iagrass::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const iagrass::FailureBudgetError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitSolver;
    } catch (const iagrass::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInternal;
    }
}
