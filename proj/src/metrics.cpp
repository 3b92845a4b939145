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

#include "iagrass/metrics.hpp"

#include "iagrass/grassmann.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace iagrass {

namespace {

void check_precoders(const ChannelRealization& ch, const std::vector<CMatrix>& V)
{
    const auto& dims = ch.dims();
    if (V.size() != static_cast<std::size_t>(dims.K))
        throw std::invalid_argument("need one precoder per user");
    for (const auto& v : V)
        if (v.rows() != dims.M || v.cols() != dims.d)
            throw std::invalid_argument("precoder must be M x d");
}

void check_filters(const ChannelRealization& ch, const std::vector<CMatrix>& G)
{
    const auto& dims = ch.dims();
    if (G.size() != static_cast<std::size_t>(dims.K))
        throw std::invalid_argument("need one receive filter per user");
    for (const auto& g : G)
        if (g.rows() != dims.N || g.cols() != dims.d)
            throw std::invalid_argument("receive filter must be N x d");
}

RatePoint finish(std::vector<double> rates)
{
    RatePoint out;
    out.sum_rate = std::accumulate(rates.begin(), rates.end(), 0.0);
    out.per_user_rate = std::move(rates);
    return out;
}

} // namespace

double log2_det_hpd(const CMatrix& A)
{
    Eigen::LLT<CMatrix> llt(A);
    if (llt.info() == Eigen::Success) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < A.rows(); ++k)
            acc += std::log2(llt.matrixLLT()(k, k).real());
        return 2.0 * acc;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(A, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    if (!(ev.minCoeff() > 0.0))
        throw SolverError("log-det of a matrix that is not positive definite");
    return ev.array().log2().sum();
}

std::vector<double> leakage(const ChannelRealization& ch, const std::vector<CMatrix>& V,
                            const std::vector<CMatrix>& filters, double P)
{
    check_precoders(ch, V);
    check_filters(ch, filters);
    const auto& dims = ch.dims();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(dims.K));
    for (int i = 0; i < dims.K; ++i) {
        double acc = 0.0;
        for (int j = 0; j < dims.K; ++j)
            if (j != i)
                acc += (filters[i].adjoint() * ch(i, j) * V[j]).squaredNorm();
        out.push_back(P / dims.d * acc);
    }
    return out;
}

double subspace_leakage_bound(const SystemDims& dims, double bits, double P)
{
    const double delta = packing_radius(subspace_constants(dims), bits);
    return 2.0 * P * delta * delta;
}

NcqLeakageBound ncq_leakage_bound(const ChannelRealization& ch, const FeedbackReport& report,
                                  int i, double P)
{
    if (report.scheme != Scheme::ncq)
        throw std::invalid_argument("ncq_leakage_bound needs an NCQ report");
    const auto& dims = ch.dims();
    if (i < 0 || i >= dims.K)
        throw std::out_of_range("receiver index out of range");
    NcqLeakageBound out;
    for (int j = 0; j < dims.K; ++j)
        if (j != i)
            out.max_block_energy = std::max(out.max_block_energy, ch(i, j).squaredNorm());
    const double dist = report.receivers[static_cast<std::size_t>(i)].distance;
    out.bound = 2.0 * P * dims.d * out.max_block_energy * dist * dist;
    return out;
}

RatePoint sum_rate_optimal(const ChannelRealization& ch, const std::vector<CMatrix>& V, double P)
{
    check_precoders(ch, V);
    const auto& dims = ch.dims();
    const double scale = P / dims.d;
    std::vector<double> rates;
    for (int i = 0; i < dims.K; ++i) {
        CMatrix interference = CMatrix::Identity(dims.N, dims.N);
        for (int j = 0; j < dims.K; ++j) {
            if (j == i)
                continue;
            const CMatrix x = ch(i, j) * V[j];
            interference.noalias() += scale * x * x.adjoint();
        }
        const CMatrix s = ch(i, i) * V[i];
        const CMatrix total = interference + scale * s * s.adjoint();
        rates.push_back(log2_det_hpd(total) - log2_det_hpd(interference));
    }
    return finish(std::move(rates));
}

RatePoint sum_rate_projected(const ChannelRealization& ch, const std::vector<CMatrix>& V,
                             const std::vector<CMatrix>& filters, double P)
{
    check_precoders(ch, V);
    check_filters(ch, filters);
    const auto& dims = ch.dims();
    const double scale = P / dims.d;
    std::vector<double> rates;
    for (int i = 0; i < dims.K; ++i) {
        const CMatrix& G = filters[i];
        CMatrix interference = G.adjoint() * G;
        for (int j = 0; j < dims.K; ++j) {
            if (j == i)
                continue;
            const CMatrix x = G.adjoint() * ch(i, j) * V[j];
            interference.noalias() += scale * x * x.adjoint();
        }
        const CMatrix s = G.adjoint() * ch(i, i) * V[i];
        const CMatrix total = interference + scale * s * s.adjoint();
        rates.push_back(log2_det_hpd(total) - log2_det_hpd(interference));
    }
    return finish(std::move(rates));
}

RatePair rate_pair_hypothetical(const ChannelRealization& ch, const std::vector<CMatrix>& V,
                                const CMatrix& filter, double P, int i)
{
    check_precoders(ch, V);
    const auto& dims = ch.dims();
    if (i < 0 || i >= dims.K)
        throw std::out_of_range("receiver index out of range");
    if (filter.rows() != dims.N || filter.cols() != dims.d)
        throw std::invalid_argument("receive filter must be N x d");
    const double scale = P / dims.d;
    const CMatrix eye = CMatrix::Identity(dims.d, dims.d);
    const CMatrix s = filter.adjoint() * ch(i, i) * V[i];
    const CMatrix QS = s * s.adjoint();
    CMatrix QI = CMatrix::Zero(dims.d, dims.d);
    for (int j = 0; j < dims.K; ++j) {
        if (j == i)
            continue;
        const CMatrix x = filter.adjoint() * ch(i, j) * V[j];
        QI.noalias() += x * x.adjoint();
    }
    RatePair out;
    out.interference_free = log2_det_hpd(eye + scale * QS);
    out.achieved = log2_det_hpd(eye + scale * (QS + QI)) - log2_det_hpd(eye + scale * QI);
    return out;
}

double rvq_rate_loss_lower_bound(const SystemDims& dims, double bits, double P, double R_p)
{
    const double mean_sq = distortion_moment_bounds(subspace_constants(dims), bits, 2.0).upper;
    return R_p - dims.d * std::log2(1.0 + 2.0 * P / dims.d * mean_sq);
}

DofEstimate estimate_dof(std::span<const RatePoint> curve, std::size_t window)
{
    if (window < 3)
        throw std::invalid_argument("DoF window needs at least 3 points");
    if (curve.size() < window)
        throw std::invalid_argument("insufficient points for a DoF estimate");
    std::vector<const RatePoint*> pts;
    for (const auto& p : curve)
        pts.push_back(&p);
    std::stable_sort(pts.begin(), pts.end(),
                     [](const RatePoint* a, const RatePoint* b) { return a->snr_db < b->snr_db; });
    pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(window));
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (!(pts[k]->snr_db > pts[k - 1]->snr_db))
            throw std::invalid_argument("DoF estimate needs distinct SNR points");
    const std::size_t users = pts.front()->per_user_rate.size();
    for (const auto* p : pts)
        if (p->per_user_rate.size() != users)
            throw std::invalid_argument("inconsistent user count across the curve");

    // x = log2 P = snr_db / (10 log10 2)
    std::vector<double> x;
    for (const auto* p : pts)
        x.push_back(p->snr_db / (10.0 * std::log10(2.0)));
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double sxx = 0.0;
    for (double v : x)
        sxx += (v - mean_x) * (v - mean_x);

    auto slope = [&](auto value) {
        double mean_y = 0.0;
        for (const auto* p : pts)
            mean_y += value(*p);
        mean_y /= static_cast<double>(pts.size());
        double sxy = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k)
            sxy += (x[k] - mean_x) * (value(*pts[k]) - mean_y);
        return sxy / sxx;
    };

    DofEstimate out;
    for (std::size_t u = 0; u < users; ++u)
        out.per_user.push_back(slope([u](const RatePoint& p) { return p.per_user_rate[u]; }));
    out.sum = slope([](const RatePoint& p) { return p.sum_rate; });
    return out;
}

} // namespace iagrass
