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

#include "iagrass/harness.hpp"

#include "iagrass/channel.hpp"
#include "iagrass/metrics.hpp"
#include "iagrass/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace iagrass {

std::string to_string(RateMetric metric)
{
    return metric == RateMetric::optimal ? "optimal" : "projected";
}

RateMetric parse_metric(const std::string& name)
{
    if (name == "optimal")
        return RateMetric::optimal;
    if (name == "projected")
        return RateMetric::projected;
    throw ConfigError("unknown rate metric '" + name + "' (expected optimal or projected)");
}

std::string to_string(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::perfect:
        return "perfect";
    case SeriesKind::proposed:
        return "proposed";
    case SeriesKind::ncq:
        return "ncq";
    case SeriesKind::perturbed:
        return "perturbed";
    case SeriesKind::bound:
        return "bound";
    }
    return "perfect";
}

SeriesKind parse_series_kind(const std::string& name)
{
    for (SeriesKind k : {SeriesKind::perfect, SeriesKind::proposed, SeriesKind::ncq,
                         SeriesKind::perturbed, SeriesKind::bound})
        if (to_string(k) == name)
            return k;
    throw ConfigError("unknown scheme '" + name + "'");
}

std::string to_string(OutputFormat format)
{
    switch (format) {
    case OutputFormat::csv:
        return "csv";
    case OutputFormat::plot:
        return "plot";
    case OutputFormat::both:
        return "both";
    }
    return "csv";
}

OutputFormat parse_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "plot")
        return OutputFormat::plot;
    if (name == "both")
        return OutputFormat::both;
    throw ConfigError("unknown output format '" + name + "' (expected csv, plot or both)");
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double parse_real(const std::string& text, const char* what)
{
    const std::string t = trim(text);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(std::string("invalid ") + what + " '" + text + "'");
    return v;
}

int parse_count(const std::string& text, const char* what)
{
    const std::string t = trim(text);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < 0 || v > 1'000'000'000)
        throw ConfigError(std::string("invalid ") + what + " '" + text + "'");
    return static_cast<int>(v);
}

std::string format_alpha(double alpha)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

} // namespace

std::string to_string(const BitSchedule& sched)
{
    std::string out;
    for (std::size_t k = 0; k < sched.users.size(); ++k) {
        const UserBits& u = sched.users[k];
        if (k)
            out += '/';
        if (!u.scaled)
            out += std::to_string(u.bits);
        else if (u.alpha == 1.0)
            out += "scaled";
        else
            out += "scaled*" + format_alpha(u.alpha);
    }
    return out;
}

BitSchedule parse_schedule(const std::string& text)
{
    BitSchedule sched;
    for (const std::string& tok : split(text, '/')) {
        if (tok.empty())
            throw ConfigError("empty entry in bit schedule '" + text + "'");
        if (tok.rfind("scaled", 0) == 0) {
            UserBits u{true, 0, 1.0};
            if (tok.size() > 6) {
                if (tok[6] != '*')
                    throw ConfigError("invalid scaled schedule '" + tok + "'");
                u.alpha = parse_real(tok.substr(7), "schedule scale");
                if (u.alpha < 0.0)
                    throw ConfigError("schedule scale must be non-negative");
            }
            sched.users.push_back(u);
        } else {
            sched.users.push_back(UserBits{false, parse_count(tok, "bit budget"), 0.0});
        }
    }
    if (sched.users.empty())
        throw ConfigError("empty bit schedule");
    return sched;
}

std::vector<double> parse_snr_grid(const std::string& text)
{
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw ConfigError("SNR range must be start:stop:step, got '" + text + "'");
        const double a = parse_real(parts[0], "SNR start");
        const double b = parse_real(parts[1], "SNR stop");
        const double s = parse_real(parts[2], "SNR step");
        if (!(s > 0.0) || b < a)
            throw ConfigError("SNR range needs step > 0 and stop >= start");
        const long n = static_cast<long>(std::floor((b - a) / s + 1e-9));
        if (n > 100000)
            throw ConfigError("SNR range has too many points");
        for (long k = 0; k <= n; ++k)
            out.push_back(a + static_cast<double>(k) * s);
        return out;
    }
    for (const std::string& tok : split(text, ','))
        out.push_back(parse_real(tok, "SNR value"));
    if (out.empty())
        throw ConfigError("empty SNR grid");
    return out;
}

std::vector<SchemeSpec> parse_scheme_list(const std::string& text,
                                          const BitSchedule* default_schedule)
{
    std::vector<SchemeSpec> out;
    if (trim(text).empty() || trim(text) == "none")
        return out;
    for (const std::string& tok : split(text, ',')) {
        SchemeSpec spec;
        const auto colon = tok.find(':');
        spec.kind = parse_series_kind(trim(tok.substr(0, colon)));
        if (colon != std::string::npos) {
            if (spec.kind == SeriesKind::perfect)
                throw ConfigError("perfect CSI takes no bit schedule");
            spec.schedule = parse_schedule(tok.substr(colon + 1));
        } else if (spec.kind != SeriesKind::perfect) {
            if (!default_schedule)
                throw ConfigError("scheme '" + tok + "' needs a bit schedule (kind:bits or --bits)");
            spec.schedule = *default_schedule;
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::string SchemeSpec::label() const
{
    if (kind == SeriesKind::perfect)
        return "perfect";
    return to_string(kind) + " N_f=" + to_string(schedule);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

ManifoldKind manifold_of(SeriesKind kind)
{
    return kind == SeriesKind::ncq ? ManifoldKind::composite : ManifoldKind::subspace;
}

void check_grid(const std::vector<double>& grid, const std::string& what)
{
    for (double v : grid)
        if (!std::isfinite(v))
            throw ConfigError(what + " contains a non-finite SNR");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw ConfigError(what + " must be strictly increasing");
}

// Highest budget the quantizer itself runs at for this kind; above it the
// perturbation model takes over.
int quantizer_cap(SeriesKind kind, const ExperimentConfig& cfg)
{
    if (kind == SeriesKind::perturbed)
        return 0;
    return cfg.max_quantizer_bits;
}

} // namespace

void ExperimentConfig::validate() const
{
    try {
        dims.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid dims: ") + e.what());
    }
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (threads < 0)
        throw ConfigError("threads must be non-negative");
    if (!(failure_budget >= 0.0 && failure_budget <= 1.0))
        throw ConfigError("failure_budget must lie in [0, 1]");
    if (max_quantizer_bits < 0 || max_quantizer_bits > 30)
        throw ConfigError("max_quantizer_bits must lie in [0, 30]");
    if (!(altmin.tolerance > 0.0) || altmin.max_iterations < 1)
        throw ConfigError("alternating minimization needs tolerance > 0 and max_iterations >= 1");
    if (solver == SolverKind::closed_form && !closed_form_applicable(dims))
        throw ConfigError("closed-form solver needs K = 3, M = N and 2d <= M; dims are " +
                          to_string(dims));
    check_grid(snr_db, "snr grid");

    const bool can_perturb = dims.interference_dim() >= 2 * dims.N;
    for (const SchemeSpec& s : schemes) {
        const std::string label = s.label();
        const auto& grid = s.snr_db.empty() ? snr_db : s.snr_db;
        check_grid(s.snr_db, "snr grid of " + label);
        if (grid.empty())
            throw ConfigError(label + " has an empty SNR grid");
        if (s.kind == SeriesKind::perfect)
            continue;
        const auto& users = s.schedule.users;
        if (users.size() != 1 && users.size() != static_cast<std::size_t>(dims.K))
            throw ConfigError(label + ": schedule needs one entry or one per user");
        for (const UserBits& u : users)
            if (!u.scaled ? u.bits < 0 : !(u.alpha >= 0.0 && std::isfinite(u.alpha)))
                throw ConfigError(label + ": invalid schedule entry");
        if (s.kind == SeriesKind::bound)
            continue;
        const int cap = quantizer_cap(s.kind, *this);
        for (double snr : grid) {
            const auto bits = schedule_bits(s.schedule, dims, db_to_linear(snr), manifold_of(s.kind));
            for (int b : bits) {
                if (b <= cap)
                    continue;
                if (s.kind == SeriesKind::ncq)
                    throw ConfigError(label + " needs " + std::to_string(b) +
                                      " bits at " + format_alpha(snr) +
                                      " dB; NCQ has no perturbation model, limit is max_quantizer_bits = " +
                                      std::to_string(max_quantizer_bits));
                if (!can_perturb)
                    throw ConfigError(label + ": the perturbation model needs (K-1)M >= 2N");
                if (b > 100000)
                    throw ConfigError(label + ": bit budget out of range");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Experiment

int resolve_threads(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char* env = std::getenv("IA_GRASSMANN_THREADS")) {
        const std::string text = trim(env);
        if (!text.empty()) {
            const int cap = parse_count(text, "IA_GRASSMANN_THREADS");
            if (cap >= 1)
                n = std::min(n, cap);
        }
    }
    return n;
}

namespace {

enum class PathClass { perfect, subspace, ncq };

struct PipelineKey {
    PathClass cls = PathClass::perfect;
    std::vector<int> bits;
    std::vector<bool> perturbed; // per receiver, subspace path only
    auto operator<=>(const PipelineKey&) const = default;
};

struct Pipeline {
    PipelineKey key;
    int cap = 0; // reproduces key.perturbed through feedback_subspace
};

struct Series {
    std::string label;
    SeriesKind kind;
};

struct Point {
    std::size_t series = 0;
    double snr_db = 0.0;
    std::size_t pipeline = 0;
    std::vector<int> bits; // scheduled budgets, empty for perfect CSI
};

struct Sample {
    bool ok = false;
    double sum_rate = 0.0;
    double leakage = 0.0;
    std::vector<double> user_rate;
    std::string error;
};

struct PipelineOut {
    bool ok = false;
    std::string error;
    FeedbackReport report;
    std::vector<CMatrix> V;
    std::vector<CMatrix> filters;
};

struct Plan {
    std::vector<Series> series;
    std::vector<Pipeline> pipelines;
    std::vector<Point> points;
};

Plan make_plan(const ExperimentConfig& cfg)
{
    Plan plan;
    std::map<PipelineKey, std::size_t> index;
    for (const SchemeSpec& s : cfg.schemes) {
        const std::size_t sid = plan.series.size();
        plan.series.push_back({s.label(), s.kind});
        const auto& grid = s.snr_db.empty() ? cfg.snr_db : s.snr_db;
        for (double snr : grid) {
            Pipeline p;
            std::vector<int> bits;
            if (s.kind != SeriesKind::perfect)
                bits = schedule_bits(s.schedule, cfg.dims, db_to_linear(snr), manifold_of(s.kind));
            if (s.kind == SeriesKind::perfect || s.kind == SeriesKind::bound) {
                // the bound is an analytic penalty on perfect-CSI rates
                p.key.cls = PathClass::perfect;
            } else {
                p.key.cls = s.kind == SeriesKind::ncq ? PathClass::ncq : PathClass::subspace;
                p.key.bits = bits;
                if (p.key.cls == PathClass::subspace) {
                    p.cap = quantizer_cap(s.kind, cfg);
                    for (int b : p.key.bits)
                        p.key.perturbed.push_back(b > p.cap);
                }
            }
            auto [it, fresh] = index.try_emplace(p.key, plan.pipelines.size());
            if (fresh)
                plan.pipelines.push_back(p);
            plan.points.push_back({sid, snr, it->second, std::move(bits)});
        }
    }
    return plan;
}

PipelineOut run_pipeline(const ChannelRealization& ch, const Pipeline& p,
                         const ExperimentConfig& cfg, std::uint64_t trial_seed)
{
    PipelineOut out;
    try {
        switch (p.key.cls) {
        case PathClass::perfect:
            out.report = feedback_perfect(ch);
            break;
        case PathClass::ncq:
            out.report = feedback_ncq_rvq(ch, p.key.bits, trial_seed);
            break;
        case PathClass::subspace:
            out.report = feedback_subspace(ch, p.key.bits, trial_seed, p.cap);
            break;
        }
        AltMinOptions opts = cfg.altmin;
        opts.seed = derive_seed(trial_seed, Stream::solver_init);
        IASolution sol = solve_ia(out.report.surrogates(), cfg.dims, cfg.solver, opts);
        if (!sol.converged) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "alignment solver did not converge (residual %.3g)",
                          sol.residual);
            out.error = buf;
            return out;
        }
        out.filters = out.report.receive_filters(sol);
        out.V = std::move(sol.V);
        out.ok = true;
    } catch (const SolverError& e) {
        out.error = e.what();
    } catch (const RankDeficientError& e) {
        out.error = e.what();
    }
    return out;
}

Sample evaluate(const ChannelRealization& ch, const PipelineOut& pipe, SeriesKind kind,
                const Point& pt, const ExperimentConfig& cfg)
{
    Sample s;
    if (!pipe.ok) {
        s.error = pipe.error;
        return s;
    }
    const double P = db_to_linear(pt.snr_db);
    try {
        RatePoint rp = cfg.metric == RateMetric::optimal ? sum_rate_optimal(ch, pipe.V, P)
                                                         : sum_rate_projected(ch, pipe.V, pipe.filters, P);
        s.user_rate = std::move(rp.per_user_rate);
        s.sum_rate = rp.sum_rate;
        if (kind == SeriesKind::bound) {
            // R_p of user i is its perfect-CSI rate; the bound subtracts the
            // RVQ rate-loss penalty of its budget.
            for (std::size_t i = 0; i < s.user_rate.size(); ++i)
                s.user_rate[i] = rvq_rate_loss_lower_bound(cfg.dims, pt.bits[i], P, s.user_rate[i]);
            s.sum_rate = std::accumulate(s.user_rate.begin(), s.user_rate.end(), 0.0);
        }
        if (kind != SeriesKind::bound) {
            const auto leak = leakage(ch, pipe.V, pipe.filters, P);
            s.leakage = std::accumulate(leak.begin(), leak.end(), 0.0) / static_cast<double>(leak.size());
        }
        s.ok = std::isfinite(s.sum_rate);
        if (!s.ok)
            s.error = "non-finite rate";
    } catch (const SolverError& e) {
        s.error = e.what();
    }
    return s;
}

std::string row_scheme(SeriesKind kind, const PipelineKey& key)
{
    switch (kind) {
    case SeriesKind::perfect:
    case SeriesKind::ncq:
    case SeriesKind::bound:
        return to_string(kind);
    case SeriesKind::proposed:
    case SeriesKind::perturbed:
        break;
    }
    const bool any = std::any_of(key.perturbed.begin(), key.perturbed.end(), [](bool b) { return b; });
    return any ? "perturbed" : "proposed";
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    const Plan plan = make_plan(cfg);
    const std::size_t T = static_cast<std::size_t>(cfg.trials);

    ExperimentResult result;
    result.threads = std::min(resolve_threads(cfg.threads), cfg.trials);
    if (plan.points.empty())
        return result;

    // samples[t * points + k]
    std::vector<Sample> samples(T * plan.points.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr fatal;
    std::mutex fatal_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= T)
                return;
            try {
                const std::uint64_t seed = cfg.base_seed + t;
                const ChannelRealization ch = gen_channel(cfg.dims, seed);
                std::vector<PipelineOut> pipes;
                pipes.reserve(plan.pipelines.size());
                for (const Pipeline& p : plan.pipelines)
                    pipes.push_back(run_pipeline(ch, p, cfg, seed));
                for (std::size_t k = 0; k < plan.points.size(); ++k) {
                    const Point& pt = plan.points[k];
                    samples[t * plan.points.size() + k] =
                        evaluate(ch, pipes[pt.pipeline], plan.series[pt.series].kind, pt, cfg);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(fatal_mutex);
                if (!fatal)
                    fatal = std::current_exception();
                next.store(T);
                return;
            }
        }
    };

    if (result.threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < result.threads; ++w)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (fatal)
        std::rethrow_exception(fatal);

    // Deterministic reduction: every statistic is accumulated in trial order.
    result.diagnostics.resize(plan.series.size());
    for (std::size_t sid = 0; sid < plan.series.size(); ++sid) {
        auto& diag = result.diagnostics[sid];
        diag.series = plan.series[sid].label;
        diag.attempts = cfg.trials;
        for (std::size_t t = 0; t < T; ++t) {
            bool failed = false;
            for (std::size_t k = 0; k < plan.points.size(); ++k) {
                const Sample& s = samples[t * plan.points.size() + k];
                if (plan.points[k].series != sid || s.ok)
                    continue;
                failed = true;
                if (diag.messages.size() < 5 &&
                    std::find(diag.messages.begin(), diag.messages.end(), s.error) == diag.messages.end())
                    diag.messages.push_back(s.error);
            }
            diag.failures += failed ? 1 : 0;
        }
    }

    for (std::size_t k = 0; k < plan.points.size(); ++k) {
        const Point& pt = plan.points[k];
        const Pipeline& pipe = plan.pipelines[pt.pipeline];
        CurveRow row;
        row.series = plan.series[pt.series].label;
        row.scheme = row_scheme(plan.series[pt.series].kind, pipe.key);
        row.snr_db = pt.snr_db;
        row.bits = pt.bits;
        std::vector<const Sample*> ok;
        for (std::size_t t = 0; t < T; ++t) {
            const Sample& s = samples[t * plan.points.size() + k];
            if (s.ok)
                ok.push_back(&s);
        }
        row.trials = static_cast<int>(ok.size());
        const double n = static_cast<double>(ok.size());
        if (ok.empty()) {
            row.mean_sum_rate = row.std_error = row.mean_leakage = std::nan("");
        } else {
            double sum = 0.0, leak = 0.0;
            row.mean_user_rate.assign(ok.front()->user_rate.size(), 0.0);
            for (const Sample* s : ok) {
                sum += s->sum_rate;
                leak += s->leakage;
                for (std::size_t u = 0; u < row.mean_user_rate.size(); ++u)
                    row.mean_user_rate[u] += s->user_rate[u];
            }
            row.mean_sum_rate = sum / n;
            row.mean_leakage = leak / n;
            for (double& u : row.mean_user_rate)
                u /= n;
            double ss = 0.0;
            for (const Sample* s : ok)
                ss += (s->sum_rate - row.mean_sum_rate) * (s->sum_rate - row.mean_sum_rate);
            row.std_error = ok.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
        }
        result.rows.push_back(std::move(row));
    }
    sort_rows(result.rows);

    std::string over;
    for (const auto& d : result.diagnostics) {
        if (static_cast<double>(d.failures) <= cfg.failure_budget * cfg.trials)
            continue;
        over += "\n  " + d.series + ": " + std::to_string(d.failures) + " of " +
                std::to_string(d.attempts) + " trials failed";
        for (const auto& m : d.messages)
            over += "\n    - " + m;
    }
    if (!over.empty())
        throw FailureBudgetError("solver failures exceed the budget of " +
                                 format_alpha(100.0 * cfg.failure_budget) + "% of trials:" + over);
    return result;
}

void sort_rows(std::vector<CurveRow>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const CurveRow& a, const CurveRow& b) {
        if (a.scheme != b.scheme)
            return a.scheme < b.scheme;
        if (a.snr_db != b.snr_db)
            return a.snr_db < b.snr_db;
        if (a.bits != b.bits)
            return a.bits < b.bits;
        return a.series < b.series;
    });
}

// ---------------------------------------------------------------------------
// Presets

namespace {

std::vector<double> range_db(double a, double b, double step)
{
    std::vector<double> out;
    for (double v = a; v <= b + 1e-9; v += step)
        out.push_back(v);
    return out;
}

SchemeSpec spec(SeriesKind kind, BitSchedule sched = {}, std::vector<double> grid = {})
{
    return SchemeSpec{kind, std::move(sched), std::move(grid)};
}

// SNRs at which N_f = (N_G/2) log2 P takes the values 0, 7, 13, 20, 26 (and
// 33, 40, 47, 53 for the extended grid) after rounding.
const std::vector<double> kScaledGrid{0.0, 5.25, 9.75, 15.0, 19.5};
const std::vector<double> kScaledGridLong{0.0, 5.25, 9.75, 15.0, 19.5, 24.85, 30.1, 35.4, 39.9};

} // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "asym-dof"}; }

ExperimentConfig preset(const std::string& name)
{
    ExperimentConfig cfg;
    cfg.dims = SystemDims{3, 2, 2, 1};
    cfg.snr_db = range_db(0.0, 40.0, 5.0);
    cfg.trials = 2000;
    cfg.base_seed = 1;
    using B = BitSchedule;
    using K = SeriesKind;
    if (name == "fig1") {
        cfg.metric = RateMetric::optimal;
        cfg.schemes = {spec(K::perfect), spec(K::proposed, B::fixed(5)), spec(K::proposed, B::fixed(10)),
                       spec(K::ncq, B::fixed(5)), spec(K::ncq, B::fixed(10))};
    } else if (name == "fig2") {
        cfg.schemes = {spec(K::perfect), spec(K::proposed, B::fixed(5)), spec(K::proposed, B::fixed(10)),
                       spec(K::proposed, B::fixed(15)), spec(K::proposed, B::scaled(), kScaledGrid)};
    } else if (name == "fig3") {
        cfg.trials = 5000;
        for (int b : {5, 10, 15}) {
            cfg.schemes.push_back(spec(K::proposed, B::fixed(b)));
            cfg.schemes.push_back(spec(K::perturbed, B::fixed(b)));
        }
        cfg.schemes.push_back(spec(K::proposed, B::scaled(), kScaledGrid));
        cfg.schemes.push_back(spec(K::perturbed, B::scaled(), kScaledGridLong));
    } else if (name == "fig4") {
        cfg.schemes = {spec(K::perfect), spec(K::perturbed, B::fixed(25)), spec(K::bound, B::fixed(25)),
                       spec(K::perturbed, B::scaled(), kScaledGridLong), spec(K::bound, B::scaled())};
    } else if (name == "asym-dof") {
        B sched;
        sched.users = {UserBits{false, 10, 0.0}, UserBits{true, 0, 1.0}, UserBits{true, 0, 1.0}};
        cfg.schemes = {spec(K::perfect), spec(K::proposed, sched)};
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig1, fig2, fig3, fig4 or asym-dof)");
    }
    return cfg;
}

} // namespace iagrass
