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

#ifndef IAGRASS_HARNESS_HPP
#define IAGRASS_HARNESS_HPP

#include "iagrass/common.hpp"
#include "iagrass/feedback.hpp"
#include "iagrass/ia.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace iagrass {

// Invalid experiment description (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Some series lost more trials to solver failures than allowed (exit code 3).
class FailureBudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RateMetric {
    optimal,   // unfiltered receivers
    projected, // after the receive filters G_i
};

std::string to_string(RateMetric metric);
RateMetric parse_metric(const std::string& name);

enum class SeriesKind {
    perfect,
    proposed,  // RVQ up to max_quantizer_bits, perturbation model above
    ncq,
    perturbed, // perturbation model for every non-zero budget
    bound,     // perfect-CSI rates minus the RVQ rate-loss penalty of the budget
};

std::string to_string(SeriesKind kind);
SeriesKind parse_series_kind(const std::string& name);

struct SchemeSpec {
    SeriesKind kind = SeriesKind::perfect;
    BitSchedule schedule;       // ignored for perfect
    std::vector<double> snr_db; // empty: use the experiment grid

    // e.g. "perfect", "proposed N_f=10", "bound N_f=scaled".
    std::string label() const;
};

enum class OutputFormat { csv, plot, both };

std::string to_string(OutputFormat format);
OutputFormat parse_format(const std::string& name);

struct ExperimentConfig {
    SystemDims dims;
    std::vector<double> snr_db;
    std::vector<SchemeSpec> schemes;
    int trials = 2000;
    std::uint64_t base_seed = 1;
    SolverKind solver = SolverKind::automatic;
    AltMinOptions altmin; // seed is replaced per trial
    RateMetric metric = RateMetric::projected;
    int max_quantizer_bits = 15; // larger proposed budgets use the perturbation model
    double failure_budget = 0.01;
    int threads = 0; // 0: hardware concurrency
    std::filesystem::path out = "results.csv";
    OutputFormat format = OutputFormat::csv;

    // Throws ConfigError naming the first violated constraint.
    void validate() const;
};

struct CurveRow {
    std::string scheme; // effective path: perfect, proposed, ncq, perturbed or bound
    double snr_db = 0.0;
    std::vector<int> bits; // per user; empty for perfect CSI
    double mean_sum_rate = 0.0;
    double std_error = 0.0;    // sample std / sqrt(trials)
    double mean_leakage = 0.0; // per-user leakage averaged over users and trials (0 for bound)
    int trials = 0;            // successful trials behind the row

    // Not serialized to CSV.
    std::string series;
    std::vector<double> mean_user_rate;
};

struct SeriesDiagnostics {
    std::string series;
    int attempts = 0;
    int failures = 0;
    std::vector<std::string> messages; // first few distinct failure reasons
};

struct ExperimentResult {
    std::vector<CurveRow> rows; // sorted, see sort_rows
    std::vector<SeriesDiagnostics> diagnostics;
    int threads = 1;
};

// Trial t uses seed base_seed + t for the channel and for every derived
// random object, so all series of one trial share the channel draw. Results
// do not depend on the thread count. Throws FailureBudgetError when a series
// fails on more than failure_budget * trials trials.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Worker count: `requested` (0 = hardware concurrency), capped by
// IA_GRASSMANN_THREADS when set. Throws ConfigError on a malformed variable.
int resolve_threads(int requested);

// fig1, fig2, fig3, fig4, asym-dof.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Rows ordered by (scheme, snr_db, bits, series).
void sort_rows(std::vector<CurveRow>& rows);

std::string to_string(const BitSchedule& sched);

// "10", "scaled", "scaled*0.5", or one entry per user joined by '/'.
BitSchedule parse_schedule(const std::string& text);

// "0:40:5" (inclusive range) or "0,5.25,9.75".
std::vector<double> parse_snr_grid(const std::string& text);

// Comma-separated "kind[:schedule]"; entries without a schedule take
// `default_schedule`, which must then be present for every kind but perfect.
std::vector<SchemeSpec> parse_scheme_list(const std::string& text,
                                          const BitSchedule* default_schedule);

} // namespace iagrass

#endif
