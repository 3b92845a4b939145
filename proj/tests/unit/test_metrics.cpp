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

#include "helpers.hpp"

#include "iagrass/feedback.hpp"
#include "iagrass/grassmann.hpp"
#include "iagrass/metrics.hpp"

#include <doctest.h>

#include <numeric>

using namespace iagrass;

namespace {

struct Instance {
    ChannelRealization ch;
    FeedbackReport rep;
    IASolution sol;
    std::vector<CMatrix> G;
};

Instance quantized_instance(const SystemDims& dims, std::uint64_t seed, int bits)
{
    auto ch = gen_channel(dims, seed);
    const std::vector<int> b{bits};
    auto rep = feedback_proposed_rvq(ch, b, seed);
    auto sol = solve_ia(rep.surrogates(), dims, SolverKind::automatic);
    auto G = rep.receive_filters(sol);
    return {std::move(ch), std::move(rep), std::move(sol), std::move(G)};
}

// log2 det through the eigenvalues, independent of the Cholesky path.
double logdet_eig(const CMatrix& A)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(A);
    return eig.eigenvalues().array().log2().sum();
}

} // namespace

TEST_SUITE("metrics")
{
    TEST_CASE("leakage bound of the packing radius")
    {
        const SystemDims dims{3, 2, 2, 1};
        CHECK(subspace_leakage_bound(dims, 20, 32.0) == doctest::Approx(64.0 * 4.0 * std::pow(2.0, -19.0 / 4.0)));
        CHECK(subspace_leakage_bound(dims, 20, 32.0) == doctest::Approx(9.51).epsilon(1e-3));
        // bits = (N_G/2) log2 P keeps the bound flat in P
        const double flat = subspace_leakage_bound(dims, 4.0 * std::log2(2.0), 2.0);
        for (double P : {4.0, 10.0, 1e3, 1e6, 1e12})
            CHECK(subspace_leakage_bound(dims, 4.0 * std::log2(P), P) == doctest::Approx(flat).epsilon(1e-12));
        for (double P : {1.0, 7.0, 100.0})
            CHECK(subspace_leakage_bound(dims, 0, P) == doctest::Approx(8.0 * P * std::pow(0.5, -0.25)));
    }

    TEST_CASE("per-realization leakage never exceeds 2P d_c^2 / d")
    {
        for (const SystemDims dims : {SystemDims{3, 2, 2, 1}, SystemDims{3, 4, 4, 2}}) {
            for (std::uint64_t seed = 0; seed < 200; ++seed) {
                const auto in = quantized_instance(dims, 40 + seed, 6);
                for (double P : {1.0, 100.0, 1e4}) {
                    const auto L = leakage(in.ch, in.sol.V, in.G, P);
                    for (int i = 0; i < dims.K; ++i) {
                        const double dc = in.rep.receivers[i].distance;
                        CHECK(L[i] >= 0.0);
                        CHECK(L[i] <= 2.0 * P / dims.d * dc * dc * (1.0 + 1e-9) + 1e-12 * P);
                    }
                }
            }
        }
    }

    TEST_CASE("NCQ leakage stays under its per-realization bound")
    {
        const SystemDims dims{3, 2, 2, 1};
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto ch = gen_channel(dims, seed);
            const std::vector<int> bits{6};
            const auto rep = feedback_ncq_rvq(ch, bits, seed);
            const auto sol = solve_ia(rep.surrogates(), dims, SolverKind::automatic);
            const auto L = leakage(ch, sol.V, rep.receive_filters(sol), 50.0);
            for (int i = 0; i < 3; ++i) {
                const auto b = ncq_leakage_bound(ch, rep, i, 50.0);
                double bmax = 0.0;
                for (int j = 0; j < 3; ++j)
                    if (j != i)
                        bmax = std::max(bmax, ch(i, j).squaredNorm());
                CHECK(b.max_block_energy == doctest::Approx(bmax));
                CHECK(L[i] <= b.bound * (1.0 + 1e-9));
            }
        }
        const auto ch = gen_channel(dims, 1);
        CHECK_THROWS_AS(ncq_leakage_bound(ch, feedback_perfect(ch), 0, 1.0), std::invalid_argument);
    }

    TEST_CASE("rate loss sits between zero and the distortion bound")
    {
        const SystemDims dims{3, 2, 2, 1};
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto in = quantized_instance(dims, 1000 + seed, 5);
            for (double P : {1.0, 31.6, 1e3, 1e4}) {
                for (int i = 0; i < 3; ++i) {
                    const auto rp = rate_pair_hypothetical(in.ch, in.sol.V, in.G[i], P, i);
                    const double loss = rp.interference_free - rp.achieved;
                    const double dc = in.rep.receivers[i].distance;
                    CHECK(loss >= -1e-9);
                    CHECK(loss <= dims.d * std::log2(1.0 + 2.0 * P / dims.d * dc * dc) + 1e-9);
                }
            }
        }
        // no interference: both rates coincide
        const auto ch = gen_channel(dims, 5);
        const auto rep = feedback_perfect(ch);
        const auto sol = solve_ia(rep.surrogates(), dims, SolverKind::automatic);
        const auto G = rep.receive_filters(sol);
        const auto rp = rate_pair_hypothetical(ch, sol.V, G[0], 100.0, 0);
        CHECK(rp.achieved == doctest::Approx(rp.interference_free).epsilon(1e-9));
    }

    TEST_CASE("rates: limits, ordering, monotonicity and representative invariance")
    {
        const SystemDims dims{3, 2, 2, 1};
        Rng rng = make_rng(3);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto in = quantized_instance(dims, 5000 + seed, 7);
            CHECK(sum_rate_optimal(in.ch, in.sol.V, 1e-12).sum_rate < 1e-9);

            double prev_opt = 0.0, prev_proj = 0.0;
            for (double P : {0.1, 1.0, 10.0, 100.0, 1e3, 1e4}) {
                const auto opt = sum_rate_optimal(in.ch, in.sol.V, P);
                const auto proj = sum_rate_projected(in.ch, in.sol.V, in.G, P);
                CHECK(std::abs(opt.sum_rate - std::accumulate(opt.per_user_rate.begin(), opt.per_user_rate.end(), 0.0)) <= 1e-9);
                CHECK(proj.sum_rate <= opt.sum_rate + 1e-9);
                for (int i = 0; i < 3; ++i)
                    CHECK(proj.per_user_rate[i] <= opt.per_user_rate[i] + 1e-9);
                CHECK(opt.sum_rate >= prev_opt - 1e-9);
                CHECK(proj.sum_rate >= prev_proj - 1e-9);
                prev_opt = opt.sum_rate;
                prev_proj = proj.sum_rate;

                auto V2 = in.sol.V;
                for (auto& v : V2)
                    v = v * test::random_unitary(rng, dims.d);
                CHECK(std::abs(sum_rate_optimal(in.ch, V2, P).sum_rate - opt.sum_rate) <= 1e-9);
                CHECK(std::abs(sum_rate_projected(in.ch, V2, in.G, P).sum_rate - proj.sum_rate) <= 1e-9);
                const auto L1 = leakage(in.ch, in.sol.V, in.G, P), L2 = leakage(in.ch, V2, in.G, P);
                for (int i = 0; i < 3; ++i)
                    CHECK(std::abs(L1[i] - L2[i]) <= 1e-9 * std::max(1.0, L1[i]));
            }
        }
    }

    TEST_CASE("without cross channels the rate is the single-user log det")
    {
        const SystemDims dims{3, 2, 2, 1};
        auto ch = gen_channel(dims, 8);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j)
                    ch(i, j).setZero();
        Rng rng = make_rng(2);
        std::vector<CMatrix> V;
        for (int j = 0; j < 3; ++j)
            V.push_back(haar_point(2, 1, rng).basis());
        const double P = 20.0;
        const auto r = sum_rate_optimal(ch, V, P);
        for (int i = 0; i < 3; ++i) {
            const CMatrix s = ch(i, i) * V[i];
            const double direct = logdet_eig(CMatrix::Identity(2, 2) + P * s * s.adjoint());
            CHECK(r.per_user_rate[i] == doctest::Approx(direct).epsilon(1e-12));
            // rank one: log2(1 + P ||H v||^2)
            CHECK(r.per_user_rate[i] == doctest::Approx(std::log2(1.0 + P * s.squaredNorm())).epsilon(1e-12));
        }
    }

    TEST_CASE("log det")
    {
        Rng rng = make_rng(4);
        const CMatrix X = test::gaussian(rng, 4, 4);
        const CMatrix A = X * X.adjoint() + CMatrix::Identity(4, 4);
        CHECK(log2_det_hpd(A) == doctest::Approx(logdet_eig(A)).epsilon(1e-12));
        CHECK(log2_det_hpd(CMatrix::Identity(3, 3)) == 0.0);
        CHECK_THROWS_AS(log2_det_hpd(-CMatrix::Identity(2, 2)), SolverError);
    }

    TEST_CASE("RVQ rate-loss bound")
    {
        const SystemDims dims{3, 2, 2, 1};
        CHECK(rvq_rate_loss_lower_bound(dims, 400, 100.0, 5.0) == doctest::Approx(5.0).epsilon(1e-9));
        CHECK(rvq_rate_loss_lower_bound(dims, 10, 100.0, 5.0) < 5.0);
        CHECK(rvq_rate_loss_lower_bound(dims, 10, 100.0, 5.0) < rvq_rate_loss_lower_bound(dims, 14, 100.0, 5.0));
        // scaled bits: the penalty tends to d log2(1 + 2 Gamma(2/N_G) / (d (N_G/2) c^(2/N_G)))
        const double limit = std::log2(1.0 + 2.0 * std::tgamma(0.25) / (4.0 * std::pow(0.5, 0.25)));
        for (double lp : {10.0, 20.0, 40.0}) {
            const double gap = 7.0 - rvq_rate_loss_lower_bound(dims, 4.0 * lp, std::exp2(lp), 7.0);
            CHECK(gap == doctest::Approx(limit).epsilon(1e-9));
        }
        CHECK(limit == doctest::Approx(1.6580).epsilon(1e-4));
    }

    TEST_CASE("DoF estimate recovers planted slopes")
    {
        std::vector<RatePoint> curve;
        for (double snr : {40.0, 0.0, 10.0, 20.0, 30.0}) {
            const double lp = snr / (10.0 * std::log10(2.0));
            RatePoint p;
            p.snr_db = snr;
            p.per_user_rate = {0.9 * lp + 1.0, 0.5 * lp - 2.0, 3.0};
            p.sum_rate = std::accumulate(p.per_user_rate.begin(), p.per_user_rate.end(), 0.0);
            curve.push_back(p);
        }
        const auto dof = estimate_dof(curve);
        CHECK(dof.per_user[0] == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(dof.per_user[1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(dof.per_user[2]) < 1e-12);
        CHECK(dof.sum == doctest::Approx(1.4).epsilon(1e-12));

        // only the top window counts: bend the low-SNR end
        curve[1].per_user_rate[0] += 50.0;
        CHECK(estimate_dof(curve, 3).per_user[0] == doctest::Approx(0.9).epsilon(1e-12));

        CHECK_THROWS_AS(estimate_dof(std::span(curve).first(2)), std::invalid_argument);
        CHECK_THROWS_AS(estimate_dof(curve, 2), std::invalid_argument);
        curve[0].snr_db = 30.0;
        CHECK_THROWS_AS(estimate_dof(curve), std::invalid_argument);
    }

    TEST_CASE("shape checks")
    {
        const SystemDims dims{3, 2, 2, 1};
        const auto ch = gen_channel(dims, 1);
        std::vector<CMatrix> V(3, CMatrix::Identity(2, 1));
        CHECK_THROWS_AS(sum_rate_optimal(ch, std::vector<CMatrix>(2, CMatrix::Identity(2, 1)), 1.0), std::invalid_argument);
        CHECK_THROWS_AS(leakage(ch, V, std::vector<CMatrix>(3, CMatrix::Identity(3, 1)), 1.0), std::invalid_argument);
        CHECK_THROWS_AS(rate_pair_hypothetical(ch, V, CMatrix::Identity(2, 1), 1.0, 3), std::out_of_range);
    }
}
