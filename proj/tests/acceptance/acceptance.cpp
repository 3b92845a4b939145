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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include "iagrass/channel.hpp"
#include "iagrass/feedback.hpp"
#include "iagrass/grassmann.hpp"
#include "iagrass/harness.hpp"
#include "iagrass/metrics.hpp"
#include "iagrass/report.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace iagrass;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [miss] " << what << ';';
        }
    }
    void note(const std::string& what) { detail << ' ' << what << ';'; }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
    return buf;
}

const SystemDims kRef{3, 2, 2, 1};

// Row lookup by (scheme, snr, uniform bits or -1 for perfect).
class RowIndex {
  public:
    explicit RowIndex(const std::vector<CurveRow>& rows)
    {
        for (const auto& r : rows)
            rows_[{r.scheme, key_snr(r.snr_db), r.bits.empty() ? -1 : r.bits.front()}] = &r;
    }
    const CurveRow* find(const std::string& scheme, double snr, int bits) const
    {
        const auto it = rows_.find({scheme, key_snr(snr), bits});
        return it == rows_.end() ? nullptr : it->second;
    }

  private:
    static long key_snr(double snr) { return std::lround(snr * 1000.0); }
    std::map<std::tuple<std::string, long, int>, const CurveRow*> rows_;
};

void check_point(Verdict& v, const RowIndex& idx, const std::string& scheme, double snr, int bits, double expected,
                 double fixed_tol)
{
    const CurveRow* r = idx.find(scheme, snr, bits);
    const std::string name = scheme + (bits >= 0 ? " N_f=" + std::to_string(bits) : "") + fmt(" @%g dB", snr);
    if (!r) {
        v.require(false, name + " missing");
        return;
    }
    const double tol = fixed_tol + 3.0 * r->std_error;
    const bool ok = std::abs(r->mean_sum_rate - expected) <= tol;
    v.require(ok, name + fmt(" %.3f vs %.3f (tol %.3f)", r->mean_sum_rate, expected, tol));
    if (ok)
        v.note(name + fmt(" %.3f vs %.2f", r->mean_sum_rate, expected));
}

// ---------------------------------------------------------------------------

Verdict criterion1()
{
    Verdict v;
    ExperimentConfig cfg = preset("fig1");
    cfg.trials = 2000;
    const auto res = run_experiment(cfg);
    const RowIndex idx(res.rows);
    const double perfect[] = {3.26, 5.73, 9.11, 13.21};
    for (int k = 0; k < 4; ++k)
        check_point(v, idx, "perfect", 5.0 * k, -1, perfect[k], 0.2);
    check_point(v, idx, "proposed", 10.0, 10, 6.99, 0.2);
    check_point(v, idx, "proposed", 20.0, 10, 9.67, 0.2);
    check_point(v, idx, "proposed", 40.0, 10, 10.65, 0.2);
    check_point(v, idx, "ncq", 20.0, 10, 7.65, 0.2);
    for (int bits : {5, 10})
        for (double snr = 10.0; snr <= 40.0; snr += 5.0) {
            const auto* p = idx.find("proposed", snr, bits);
            const auto* n = idx.find("ncq", snr, bits);
            v.require(p && n && p->mean_sum_rate > n->mean_sum_rate,
                      fmt("proposed > ncq at N_f=%g, %g dB", bits, snr));
        }
    return v;
}

Verdict criterion2()
{
    Verdict v;
    ExperimentConfig cfg;
    cfg.dims = kRef;
    cfg.metric = RateMetric::projected;
    cfg.trials = 2000;
    cfg.snr_db = {25.0, 40.0};
    cfg.schemes = {SchemeSpec{SeriesKind::proposed, BitSchedule::fixed(10), {}},
                   SchemeSpec{SeriesKind::perturbed, BitSchedule::scaled(), {15.0, 19.5}}};
    const auto res = run_experiment(cfg);
    const RowIndex idx(res.rows);
    const auto* lo = idx.find("proposed", 25.0, 10);
    const auto* hi = idx.find("proposed", 40.0, 10);
    if (lo && hi) {
        const double rise = hi->mean_sum_rate - lo->mean_sum_rate;
        v.require(rise <= 0.3, fmt("N_f=10 rises %.3f bits from 25 to 40 dB", rise));
        v.note(fmt("N_f=10 saturation %.3f -> %.3f", lo->mean_sum_rate, hi->mean_sum_rate));
    } else {
        v.require(false, "N_f=10 rows missing");
    }
    check_point(v, idx, "perturbed", 15.0, 20, 10.84, 0.25);
    check_point(v, idx, "perturbed", 19.5, 26, 14.99, 0.25);
    return v;
}

Verdict criterion3()
{
    Verdict v;
    ExperimentConfig cfg = preset("fig3");
    cfg.trials = 5000;
    cfg.schemes.erase(std::remove_if(cfg.schemes.begin(), cfg.schemes.end(),
                                     [](const SchemeSpec& s) { return s.schedule.users.front().scaled; }),
                      cfg.schemes.end());
    const auto res = run_experiment(cfg);
    const RowIndex idx(res.rows);
    double worst = 0.0;
    for (int bits : {5, 10, 15}) {
        for (double snr : cfg.snr_db) {
            const auto* q = idx.find("proposed", snr, bits);
            const auto* p = idx.find("perturbed", snr, bits);
            if (!q || !p) {
                v.require(false, fmt("rows missing at N_f=%g, %g dB", bits, snr));
                continue;
            }
            const double gap = std::abs(q->mean_sum_rate - p->mean_sum_rate);
            worst = std::max(worst, gap);
            v.require(gap <= 0.15, fmt("N_f=%g @%g dB: quantizer %.3f, model %.3f", bits, snr, q->mean_sum_rate,
                                       p->mean_sum_rate));
        }
    }
    v.note(fmt("largest gap %.3f bits over 27 points", worst));
    return v;
}

Verdict criterion4()
{
    Verdict v;
    ExperimentConfig cfg = preset("fig4");
    cfg.trials = 2000;
    cfg.schemes = {SchemeSpec{SeriesKind::perfect, {}, {}},
                   SchemeSpec{SeriesKind::perturbed, BitSchedule::scaled(), {19.5, 24.85, 30.1, 35.4, 39.9}}};
    const auto res = run_experiment(cfg);
    std::map<std::string, std::vector<RatePoint>> curves;
    for (const auto& r : res.rows) {
        RatePoint p;
        p.snr_db = r.snr_db;
        p.per_user_rate = r.mean_user_rate;
        p.sum_rate = r.mean_sum_rate;
        curves[r.scheme].push_back(p);
    }
    const auto scaled = estimate_dof(curves["perturbed"]);
    const auto perfect = estimate_dof(curves["perfect"]);
    v.require(scaled.sum >= 2.55, fmt("scaled-bits slope %.3f < 2.55", scaled.sum));
    v.require(std::abs(perfect.sum - scaled.sum) <= 0.1 * scaled.sum,
              fmt("perfect slope %.3f not within 10%% of %.3f", perfect.sum, scaled.sum));
    v.note(fmt("slopes: scaled %.3f, perfect %.3f", scaled.sum, perfect.sum));
    return v;
}

Verdict criterion5()
{
    Verdict v;
    const int trials = 10000;
    const double slack = 1e-9; // relative floating-point allowance
    long viol_lkg = 0, viol_ncq = 0, viol_rate = 0, viol_perfect = 0;
    for (int t = 0; t < trials; ++t) {
        const auto seed = static_cast<std::uint64_t>(t) + 1;
        const auto ch = gen_channel(kRef, seed);
        const int bits = 1 + t % 10;
        const double P = std::pow(10.0, (t % 5) - 0.5); // -5 .. 35 dB
        const std::vector<int> b{bits};

        const auto rep = feedback_proposed_rvq(ch, b, seed);
        const auto sol = solve_ia(rep.surrogates(), kRef, SolverKind::automatic);
        const auto G = rep.receive_filters(sol);
        const auto L = leakage(ch, sol.V, G, P);
        for (int i = 0; i < kRef.K; ++i) {
            const double dc2 = rep.receivers[i].distance * rep.receivers[i].distance;
            viol_lkg += L[i] > 2.0 * P * dc2 * (1.0 + slack) + 1e-15 * P;
            const auto rp = rate_pair_hypothetical(ch, sol.V, G[i], P, i);
            const double loss = rp.interference_free - rp.achieved;
            const double cap = kRef.d * std::log2(1.0 + 2.0 * P / kRef.d * dc2);
            viol_rate += loss < -slack || loss > cap + slack * std::max(1.0, cap);
        }

        const auto nrep = feedback_ncq_rvq(ch, b, seed);
        const auto nsol = solve_ia(nrep.surrogates(), kRef, SolverKind::automatic);
        const auto NL = leakage(ch, nsol.V, nrep.receive_filters(nsol), P);
        for (int i = 0; i < kRef.K; ++i)
            viol_ncq += NL[i] > ncq_leakage_bound(ch, nrep, i, P).bound * (1.0 + slack) + 1e-15 * P;

        const auto prep = feedback_perfect(ch);
        const auto psol = solve_ia(prep.surrogates(), kRef, SolverKind::automatic);
        for (double l : leakage(ch, psol.V, prep.receive_filters(psol), P))
            viol_perfect += l > 1e-12 * P;
    }
    v.require(viol_lkg == 0, std::to_string(viol_lkg) + " leakage-chain violations");
    v.require(viol_ncq == 0, std::to_string(viol_ncq) + " NCQ-chain violations");
    v.require(viol_rate == 0, std::to_string(viol_rate) + " rate-loss violations");
    v.require(viol_perfect == 0, std::to_string(viol_perfect) + " perfect-feedback leakage violations");
    v.note(std::to_string(trials) + " trials x 3 users per inequality");
    return v;
}

Verdict criterion6()
{
    Verdict v;
    ExperimentConfig cfg;
    cfg.dims = kRef;
    cfg.trials = 2000;
    cfg.snr_db.clear();
    for (int e : {2, 4, 6, 8})
        cfg.snr_db.push_back(10.0 * std::log10(std::exp2(e)));
    cfg.schemes = {SchemeSpec{SeriesKind::proposed, BitSchedule::scaled(), {}}};
    const auto res = run_experiment(cfg);
    if (res.rows.size() != 4) {
        v.require(false, "expected four rows");
        return v;
    }
    std::vector<const CurveRow*> by_snr;
    for (const auto& r : res.rows)
        by_snr.push_back(&r);
    std::sort(by_snr.begin(), by_snr.end(), [](auto* a, auto* b) { return a->snr_db < b->snr_db; });
    const double base = by_snr.front()->mean_leakage;
    const double headroom = 8.0 * std::pow(subspace_constants(kRef).ball_coeff, -2.0 / subspace_constants(kRef).real_dim);
    double peak = 0.0;
    std::string series;
    for (const auto* r : by_snr) {
        peak = std::max(peak, r->mean_leakage);
        series += fmt(" %.3f", r->mean_leakage) + "(" + r->scheme + ")";
    }
    v.require(peak <= 2.0 * base + headroom, fmt("peak leakage %.3f above %.3f", peak, 2.0 * base + headroom));
    v.note("mean leakage at P=2^2..2^8:" + series);
    return v;
}

Verdict criterion7()
{
    Verdict v;
    Rng rng = make_rng(7);
    boost::random::uniform_int_distribution<int> pick_bits(0, 12);
    int mismatches = 0;
    for (int inst = 0; inst < 500; ++inst) {
        const bool sub = inst % 2 == 0;
        const CodebookShape shape{sub ? ManifoldKind::subspace : ManifoldKind::composite, 4, 2};
        const int bits = pick_bits(rng);
        const auto cb = rvq_codebook(shape, bits, 10'000 + static_cast<std::uint64_t>(inst));
        CMatrix T;
        if (sub) {
            T = haar_point(4, 2, rng).basis();
        } else {
            T = haar_point(4, 1, rng).basis();
            T.conservativeResize(4, 2);
            T.col(1) = haar_point(4, 1, rng).basis();
        }
        // exhaustive scan on the distance definitions
        std::size_t best = 0;
        double best_d = 1e300;
        for (std::size_t k = 0; k < cb.size(); ++k) {
            const CMatrix e = cb.entry(k);
            double d;
            if (sub) {
                d = (T * T.adjoint() - e * e.adjoint()).norm() / std::sqrt(2.0);
            } else {
                d = 0.0;
                for (int j = 0; j < 2; ++j)
                    d += 1.0 - std::norm(e.col(j).dot(T.col(j)));
                d = std::sqrt(std::max(0.0, d));
            }
            if (d < best_d - 1e-12) {
                best_d = d;
                best = k;
            }
        }
        mismatches += quantize(T, cb).index != best;
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " of 500 indices differ from the scan");
    v.note("500 instances, both manifold kinds, bits 0..12");
    return v;
}

Verdict criterion8()
{
    Verdict v;
    const auto consts = grassmann_constants(4, 2);
    const auto m = distortion_moment_bounds(consts, 12, 2);
    const CodebookShape shape{ManifoldKind::subspace, 4, 2};
    Rng rng = make_rng(8);
    const int sources = 100000, per_codebook = 1000;
    double acc = 0.0;
    for (int c = 0; c < sources / per_codebook; ++c) {
        const auto cb = rvq_codebook(shape, 12, 80'000 + static_cast<std::uint64_t>(c));
        for (int s = 0; s < per_codebook; ++s) {
            const double d = quantize(haar_point(4, 2, rng).basis(), cb).distance;
            acc += d * d;
        }
    }
    const double mean = acc / sources;
    v.require(mean >= 0.95 * m.lower && mean <= 1.05 * m.upper,
              fmt("mean d^2 %.5f outside [%.5f, %.5f]", mean, 0.95 * m.lower, 1.05 * m.upper));
    v.note(fmt("mean d^2 %.5f, bracket (%.4f, %.4f)", mean, m.lower, m.upper));
    return v;
}

Verdict criterion9()
{
    Verdict v;
    Rng rng = make_rng(9);
    boost::random::uniform_int_distribution<int> pick_k(2, 12), pick_mn(1, 8), pick_e(0, 20);
    int systems = 0, bad = 0;
    while (systems < 100) {
        const int K = pick_k(rng), M = pick_mn(rng), N = pick_mn(rng);
        const SystemDims dims{K, M, N, 1};
        if (N * N <= K - 1 || (K - 1) * M < N)
            continue;
        ++systems;
        for (int rep = 0; rep < 5; ++rep) {
            const int e = pick_e(rng);
            const double P = std::exp2(e);
            const auto ours = schedule_bits(BitSchedule::scaled(), dims, P, ManifoldKind::subspace);
            const auto ncq = schedule_bits(BitSchedule::scaled(), dims, P, ManifoldKind::composite);
            for (int i = 0; i < K; ++i)
                bad += ncq[i] - ours[i] != (N * N - K + 1) * e;
        }
    }
    v.require(bad == 0, std::to_string(bad) + " budget mismatches");
    v.note("100 systems x 5 dyadic SNRs");
    return v;
}

Verdict criterion10()
{
    Verdict v;
    ExperimentConfig cfg = preset("fig1");
    cfg.threads = 1;
    const std::string a = format_csv(run_experiment(cfg).rows);
    cfg.threads = 3;
    const std::string b = format_csv(run_experiment(cfg).rows);
    v.require(a == b, "CSV differs between 1 and 3 workers");
    v.note(std::to_string(a.size()) + " bytes, identical across 1 and 3 workers");
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10};
    std::set<int> only;
    for (int k = 1; k < argc; ++k)
        only.insert(std::atoi(argv[k]));

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int n = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(n))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[k]();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s%s (%.1f s)\n", n, v.pass ? "PASS" : "FAIL", v.detail.str().c_str(), secs);
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
