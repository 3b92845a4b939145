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

#include "iagrass/channel.hpp"

#include "iagrass/rng.hpp"

#include <Eigen/SVD>

#include <sstream>

namespace iagrass {

void SystemDims::validate() const
{
    if (K < 2)
        throw std::invalid_argument("user count K must be at least 2");
    if (M < 1 || N < 1 || d < 1)
        throw std::invalid_argument("M, N and d must all be positive");
    if (d > M || d > N)
        throw std::invalid_argument("d must not exceed M or N");
    if ((K - 1) * M < N)
        throw std::invalid_argument("dimensions must satisfy (K-1)M >= N");
}

std::string to_string(const SystemDims& dims)
{
    std::ostringstream os;
    os << "K=" << dims.K << ",M=" << dims.M << ",N=" << dims.N << ",d=" << dims.d;
    return os.str();
}

ChannelRealization::ChannelRealization(SystemDims dims, std::vector<CMatrix> blocks)
    : dims_(dims), blocks_(std::move(blocks))
{
    dims_.validate();
    if (blocks_.size() != static_cast<std::size_t>(dims_.K * dims_.K))
        throw std::invalid_argument("channel grid must hold K*K blocks");
    for (const auto& b : blocks_) {
        if (b.rows() != dims_.N || b.cols() != dims_.M)
            throw std::invalid_argument("channel block must be N x M");
        if (!b.allFinite())
            throw std::invalid_argument("channel block has non-finite entries");
    }
}

std::size_t ChannelRealization::index(int i, int j) const
{
    if (i < 0 || j < 0 || i >= dims_.K || j >= dims_.K)
        throw std::out_of_range("user index out of range");
    return static_cast<std::size_t>(i * dims_.K + j);
}

ChannelRealization gen_channel(const SystemDims& dims, std::uint64_t seed)
{
    dims.validate();
    Rng rng = make_rng(seed);
    ComplexGaussian gauss;
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(dims.K * dims.K));
    for (int k = 0; k < dims.K * dims.K; ++k)
        blocks.push_back(gauss.matrix(rng, dims.N, dims.M));
    return ChannelRealization(dims, std::move(blocks));
}

CMatrix concat_interference(const ChannelRealization& ch, int i)
{
    const auto& dims = ch.dims();
    if (i < 0 || i >= dims.K)
        throw std::out_of_range("receiver index out of range");
    CMatrix Hi(dims.N, dims.interference_dim());
    for (int j = 0; j < dims.K; ++j) {
        if (j == i)
            continue;
        Hi.middleCols(interference_block_offset(i, j, dims.M), dims.M) = ch(i, j);
    }
    return Hi;
}

RowSpaceFactorization row_space_qr(const CMatrix& Hi)
{
    const Eigen::Index n = Hi.rows();
    if (n == 0 || Hi.cols() < n)
        throw std::invalid_argument("row_space_qr needs a wide N x (K-1)M matrix");

    const Eigen::JacobiSVD<CMatrix> svd(Hi);
    const auto& sv = svd.singularValues();
    if (!(sv(n - 1) > kRankTolerance * sv(0)))
        throw RankDeficientError("interference matrix does not have full row rank");

    const CMatrix A = Hi.adjoint();
    Eigen::HouseholderQR<CMatrix> qr(A);
    RowSpaceFactorization out;
    out.F = qr.householderQ() * CMatrix::Identity(A.rows(), n);
    out.C = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const cdouble r = out.C(k, k);
        const cdouble phase = r / std::abs(r);
        out.F.col(k) *= phase;
        out.C.row(k) *= std::conj(phase);
        out.C(k, k) = std::abs(r);
    }
    return out;
}

namespace {

void gram_schmidt(CMatrix& Q, CMatrix* R)
{
    const Eigen::Index n = Q.rows();
    const Eigen::Index p = Q.cols();
    if (p > n)
        throw std::invalid_argument("orthonormalize needs a tall matrix");
    if (R)
        R->setZero(p, p);
    for (Eigen::Index k = 0; k < p; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < k; ++j) {
                const cdouble proj = Q.col(j).dot(Q.col(k));
                Q.col(k) -= proj * Q.col(j);
                if (R)
                    (*R)(j, k) += proj;
            }
        }
        const double norm = Q.col(k).norm();
        if (!(norm > 0.0))
            throw RankDeficientError("orthonormalize: dependent columns");
        Q.col(k) /= norm;
        if (R)
            (*R)(k, k) = norm;
    }
}

} // namespace

CMatrix orthonormalize(const CMatrix& A, CMatrix* R)
{
    CMatrix Q = A;
    gram_schmidt(Q, R);
    return Q;
}

} // namespace iagrass
