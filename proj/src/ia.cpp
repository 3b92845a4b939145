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

#include "iagrass/ia.hpp"

#include "iagrass/grassmann.hpp"
#include "iagrass/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace iagrass {

namespace {

void check_surrogates(const Surrogates& surrogates, const SystemDims& dims)
{
    dims.validate();
    if (surrogates.size() != static_cast<std::size_t>(dims.K))
        throw std::invalid_argument("need one surrogate per receiver");
    for (const auto& A : surrogates)
        if (A.rows() != dims.N || A.cols() != dims.interference_dim())
            throw std::invalid_argument("surrogate must be N x (K-1)M");
}

auto block(const CMatrix& A, const SystemDims& dims, int i, int j)
{
    return A.middleCols(interference_block_offset(i, j, dims.M), dims.M);
}

// d eigenvectors of the Hermitian matrix Q with the smallest eigenvalues.
CMatrix least_dominant(const CMatrix& Q, int d)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(Q);
    if (eig.info() != Eigen::Success)
        throw SolverError("Hermitian eigendecomposition failed");
    return eig.eigenvectors().leftCols(d);
}

// Rotates v so its first entry with magnitude above eps is real positive.
void fix_phase(Eigen::Ref<CVector> v)
{
    const double eps = 1e-12 * v.norm();
    for (Eigen::Index r = 0; r < v.size(); ++r) {
        if (std::abs(v(r)) > eps) {
            v *= std::conj(v(r)) / std::abs(v(r));
            return;
        }
    }
}

CMatrix checked_inverse(const Eigen::Ref<const CMatrix>& B)
{
    Eigen::FullPivLU<CMatrix> lu(B);
    if (!lu.isInvertible())
        throw SolverError("singular cross-channel block");
    const Eigen::JacobiSVD<CMatrix> svd(B);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > kRankTolerance * sv(0)))
        throw SolverError("ill-conditioned cross-channel block");
    return lu.inverse();
}

CMatrix precoder_from_span(const CMatrix& span)
{
    try {
        return orthonormalize(span);
    } catch (const RankDeficientError&) {
        throw SolverError("closed-form precoder lost rank");
    }
}

} // namespace

CMatrix stacked_precoders(const std::vector<CMatrix>& V, const SystemDims& dims, int i)
{
    CMatrix out = CMatrix::Zero(dims.interference_dim(), (dims.K - 1) * dims.d);
    for (int j = 0; j < dims.K; ++j) {
        if (j == i)
            continue;
        const int slot = j < i ? j : j - 1;
        out.block(slot * dims.M, slot * dims.d, dims.M, dims.d) = V[j];
    }
    return out;
}

double alignment_residual(const Surrogates& surrogates, const SystemDims& dims,
                          const std::vector<CMatrix>& V, const std::vector<CMatrix>& U)
{
    double total = 0.0;
    for (int i = 0; i < dims.K; ++i)
        for (int j = 0; j < dims.K; ++j)
            if (j != i)
                total += (U[i].adjoint() * block(surrogates[i], dims, i, j) * V[j]).squaredNorm();
    return total;
}

double surrogate_scale(const Surrogates& surrogates)
{
    return std::accumulate(surrogates.begin(), surrogates.end(), 0.0,
                           [](double acc, const CMatrix& A) { return acc + A.squaredNorm(); });
}

CMatrix interference_free_subspace(const Surrogates& surrogates, const SystemDims& dims,
                                   const std::vector<CMatrix>& V, int i)
{
    CMatrix Q = CMatrix::Zero(dims.N, dims.N);
    for (int j = 0; j < dims.K; ++j) {
        if (j == i)
            continue;
        const CMatrix x = block(surrogates[i], dims, i, j) * V[j];
        Q.noalias() += x * x.adjoint();
    }
    return least_dominant(Q, dims.d);
}

bool closed_form_applicable(const SystemDims& dims)
{
    return dims.K == 3 && dims.M == dims.N && 2 * dims.d <= dims.M;
}

IASolution solve_ia_closed_form(const Surrogates& A, const SystemDims& dims)
{
    check_surrogates(A, dims);
    if (!closed_form_applicable(dims))
        throw std::invalid_argument("closed-form solver needs K=3, M=N and 2d <= M");

    const CMatrix A01 = block(A[0], dims, 0, 1);
    const CMatrix A02 = block(A[0], dims, 0, 2);
    const CMatrix A10 = block(A[1], dims, 1, 0);
    const CMatrix A12 = block(A[1], dims, 1, 2);
    const CMatrix A20 = block(A[2], dims, 2, 0);
    const CMatrix A21 = block(A[2], dims, 2, 1);

    const CMatrix inv20 = checked_inverse(A20);
    const CMatrix inv01 = checked_inverse(A01);
    const CMatrix inv12 = checked_inverse(A12);
    const CMatrix inv21 = checked_inverse(A21);
    const CMatrix E = inv20 * A21 * inv01 * A02 * inv12 * A10;

    Eigen::ComplexEigenSolver<CMatrix> eig(E);
    if (eig.info() != Eigen::Success)
        throw SolverError("eigendecomposition of the chained cross-channel product failed");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(E.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(eig.eigenvalues()(a)) > std::abs(eig.eigenvalues()(b));
    });

    CMatrix span0(dims.M, dims.d);
    for (int k = 0; k < dims.d; ++k) {
        CVector v = eig.eigenvectors().col(order[static_cast<std::size_t>(k)]);
        if (!v.allFinite() || v.norm() == 0.0)
            throw SolverError("non-finite eigenvector");
        v.normalize();
        fix_phase(v);
        span0.col(k) = v;
    }

    IASolution sol;
    sol.V.resize(3);
    sol.V[0] = precoder_from_span(span0);
    sol.V[1] = precoder_from_span(inv21 * A20 * sol.V[0]);
    sol.V[2] = precoder_from_span(inv12 * A10 * sol.V[0]);
    sol.U.resize(3);
    for (int i = 0; i < 3; ++i)
        sol.U[i] = interference_free_subspace(A, dims, sol.V, i);
    sol.residual = alignment_residual(A, dims, sol.V, sol.U);
    sol.iterations = 1;
    sol.converged = sol.residual <= 1e-9 * surrogate_scale(A);
    if (!sol.converged)
        throw SolverError("closed-form alignment residual above tolerance");
    return sol;
}

IASolution solve_ia_altmin(const Surrogates& A, const SystemDims& dims, const AltMinOptions& opts)
{
    check_surrogates(A, dims);
    IASolution sol;
    if (!dims.ia_proper())
        sol.warnings.push_back("d(K+1) > M+N: alignment is infeasible for " + to_string(dims));

    Rng rng = make_rng(opts.seed);
    sol.V.reserve(static_cast<std::size_t>(dims.K));
    for (int j = 0; j < dims.K; ++j)
        sol.V.push_back(haar_point(dims.M, dims.d, rng).basis());
    sol.U.resize(static_cast<std::size_t>(dims.K));

    const double scale = surrogate_scale(A);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        for (int i = 0; i < dims.K; ++i)
            sol.U[i] = interference_free_subspace(A, dims, sol.V, i);
        for (int j = 0; j < dims.K; ++j) {
            CMatrix Q = CMatrix::Zero(dims.M, dims.M);
            for (int i = 0; i < dims.K; ++i) {
                if (i == j)
                    continue;
                const CMatrix x = block(A[i], dims, i, j).adjoint() * sol.U[i];
                Q.noalias() += x * x.adjoint();
            }
            sol.V[j] = least_dominant(Q, dims.d);
        }
        sol.iterations = it;
        sol.residual = alignment_residual(A, dims, sol.V, sol.U);
        sol.residual_history.push_back(sol.residual);
        if (sol.residual <= opts.tolerance * scale) {
            sol.converged = true;
            break;
        }
    }
    if (!sol.converged)
        sol.warnings.push_back("alternating minimization stopped at the iteration limit");
    return sol;
}

SolverKind parse_solver(const std::string& name)
{
    if (name == "auto" || name == "automatic")
        return SolverKind::automatic;
    if (name == "closed-form" || name == "closed_form")
        return SolverKind::closed_form;
    if (name == "altmin")
        return SolverKind::altmin;
    throw std::invalid_argument("unknown solver: " + name);
}

std::string to_string(SolverKind kind)
{
    switch (kind) {
    case SolverKind::automatic:
        return "auto";
    case SolverKind::closed_form:
        return "closed-form";
    case SolverKind::altmin:
        return "altmin";
    }
    return "auto";
}

IASolution solve_ia(const Surrogates& surrogates, const SystemDims& dims, SolverKind kind,
                    const AltMinOptions& opts)
{
    if (kind == SolverKind::closed_form)
        return solve_ia_closed_form(surrogates, dims);
    if (kind == SolverKind::automatic && closed_form_applicable(dims)) {
        try {
            return solve_ia_closed_form(surrogates, dims);
        } catch (const SolverError& e) {
            IASolution sol = solve_ia_altmin(surrogates, dims, opts);
            sol.warnings.insert(sol.warnings.begin(),
                                std::string("closed form failed, used altmin: ") + e.what());
            return sol;
        }
    }
    return solve_ia_altmin(surrogates, dims, opts);
}

CMatrix build_receive_filter(const RowSpaceFactorization& fac, const CMatrix& Fhat,
                             const CMatrix& Utilde)
{
    const Eigen::Index n = fac.C.rows();
    if (fac.C.cols() != n || fac.F.cols() != n || Fhat.rows() != fac.F.rows() ||
        Fhat.cols() != n || Utilde.rows() != n)
        throw std::invalid_argument("build_receive_filter: incompatible shapes");
    for (Eigen::Index k = 0; k < n; ++k)
        if (!(std::abs(fac.C(k, k)) > 0.0))
            throw SolverError("singular C factor");
    const CMatrix rhs = fac.F.adjoint() * Fhat * Utilde;
    return fac.C.triangularView<Eigen::Upper>().solve(rhs);
}

} // namespace iagrass
