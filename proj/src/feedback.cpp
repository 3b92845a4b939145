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

#include "iagrass/feedback.hpp"

#include "iagrass/rng.hpp"

#include <cmath>

namespace iagrass {

std::string to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::perfect:
        return "perfect";
    case Scheme::proposed:
        return "proposed";
    case Scheme::ncq:
        return "ncq";
    case Scheme::perturbed:
        return "perturbed";
    }
    return "perfect";
}

Scheme parse_scheme(const std::string& name)
{
    if (name == "perfect")
        return Scheme::perfect;
    if (name == "proposed")
        return Scheme::proposed;
    if (name == "ncq")
        return Scheme::ncq;
    if (name == "perturbed")
        return Scheme::perturbed;
    throw std::invalid_argument("unknown feedback scheme: " + name);
}

namespace {

bool subspace_scheme(Scheme s) { return s != Scheme::ncq; }

const Codebook& codebook_for(std::span<const Codebook> codebooks, int i, int K)
{
    if (codebooks.size() == 1)
        return codebooks[0];
    if (codebooks.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("need one shared codebook or one per receiver");
    return codebooks[static_cast<std::size_t>(i)];
}

int bits_for(std::span<const int> bits, int i, int K)
{
    if (bits.size() == 1)
        return bits[0];
    if (bits.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("need one bit budget or one per receiver");
    return bits[static_cast<std::size_t>(i)];
}

CodebookShape subspace_shape(const SystemDims& dims)
{
    return {ManifoldKind::subspace, dims.interference_dim(), dims.N};
}

CodebookShape composite_shape(const SystemDims& dims)
{
    return {ManifoldKind::composite, dims.M * dims.N, dims.K - 1};
}

ReceiverReport local_subspace(const ChannelRealization& ch, int i)
{
    ReceiverReport r;
    r.factor = row_space_qr(concat_interference(ch, i));
    r.target = r.factor.F;
    return r;
}

ReceiverReport quantized_receiver(const ChannelRealization& ch, int i, int bits, std::uint64_t seed)
{
    ReceiverReport r = local_subspace(ch, i);
    r.bits = bits;
    QuantizeResult q = quantize_rvq(r.target, subspace_shape(ch.dims()), bits,
                                    derive_seed(seed, Stream::codebook, static_cast<std::uint64_t>(i)));
    r.payload = std::move(q.codeword);
    r.index = q.index;
    r.distance = q.distance;
    return r;
}

ReceiverReport perturbed_receiver(const ChannelRealization& ch, int i, int bits, std::uint64_t seed)
{
    ReceiverReport r = local_subspace(ch, i);
    r.bits = bits;
    GrassmannPoint Fhat = perturb(GrassmannPoint(r.target), bits,
                                  derive_seed(seed, Stream::perturbation, static_cast<std::uint64_t>(i)));
    r.payload = Fhat.basis();
    r.distance = std::sqrt(chordal_distance_sq(r.target, r.payload));
    return r;
}

} // namespace

CMatrix normalized_channels(const ChannelRealization& ch, int i)
{
    const auto& dims = ch.dims();
    if (i < 0 || i >= dims.K)
        throw std::out_of_range("receiver index out of range");
    const int len = dims.M * dims.N;
    CMatrix Z(len, dims.K - 1);
    for (int j = 0; j < dims.K; ++j) {
        if (j == i)
            continue;
        const CMatrix& H = ch(i, j);
        const Eigen::Map<const CVector> v(H.data(), len);
        const double norm = v.norm();
        if (!(norm > 0.0))
            throw RankDeficientError("zero interfering channel cannot be normalized");
        Z.col(j < i ? j : j - 1) = v / norm;
    }
    return Z;
}

CMatrix unvec(const CVector& z, int rows, int cols)
{
    if (z.size() != static_cast<Eigen::Index>(rows) * cols)
        throw std::invalid_argument("unvec: length mismatch");
    return Eigen::Map<const CMatrix>(z.data(), rows, cols);
}

Surrogates FeedbackReport::surrogates() const
{
    Surrogates out;
    out.reserve(receivers.size());
    for (std::size_t i = 0; i < receivers.size(); ++i) {
        const auto& r = receivers[i];
        if (subspace_scheme(scheme)) {
            out.push_back(r.payload.adjoint());
            continue;
        }
        CMatrix A(dims.N, dims.interference_dim());
        for (int slot = 0; slot < dims.K - 1; ++slot)
            A.middleCols(slot * dims.M, dims.M) = unvec(r.payload.col(slot), dims.N, dims.M);
        out.push_back(std::move(A));
    }
    return out;
}

std::vector<CMatrix> FeedbackReport::receive_filters(const IASolution& sol) const
{
    if (sol.U.size() != receivers.size())
        throw std::invalid_argument("solution and report cover different user counts");
    std::vector<CMatrix> out;
    out.reserve(receivers.size());
    for (std::size_t i = 0; i < receivers.size(); ++i) {
        if (subspace_scheme(scheme))
            out.push_back(build_receive_filter(receivers[i].factor, receivers[i].payload, sol.U[i]));
        else
            out.push_back(sol.U[i]);
    }
    return out;
}

FeedbackReport feedback_perfect(const ChannelRealization& ch)
{
    FeedbackReport rep{Scheme::perfect, ch.dims(), {}};
    for (int i = 0; i < ch.dims().K; ++i) {
        ReceiverReport r = local_subspace(ch, i);
        r.payload = r.target;
        rep.receivers.push_back(std::move(r));
    }
    return rep;
}

FeedbackReport feedback_proposed(const ChannelRealization& ch, std::span<const Codebook> codebooks)
{
    const auto& dims = ch.dims();
    FeedbackReport rep{Scheme::proposed, dims, {}};
    for (int i = 0; i < dims.K; ++i) {
        const Codebook& cb = codebook_for(codebooks, i, dims.K);
        if (!(cb.shape() == subspace_shape(dims)))
            throw std::invalid_argument("proposed feedback needs a subspace((K-1)M, N) codebook");
        ReceiverReport r = local_subspace(ch, i);
        QuantizeResult q = quantize(r.target, cb);
        r.payload = std::move(q.codeword);
        r.index = q.index;
        r.distance = q.distance;
        r.bits = cb.bits();
        rep.receivers.push_back(std::move(r));
    }
    return rep;
}

FeedbackReport feedback_ncq(const ChannelRealization& ch, std::span<const Codebook> codebooks)
{
    const auto& dims = ch.dims();
    FeedbackReport rep{Scheme::ncq, dims, {}};
    for (int i = 0; i < dims.K; ++i) {
        const Codebook& cb = codebook_for(codebooks, i, dims.K);
        if (!(cb.shape() == composite_shape(dims)))
            throw std::invalid_argument("NCQ feedback needs a composite(MN, K-1) codebook");
        ReceiverReport r;
        r.target = normalized_channels(ch, i);
        QuantizeResult q = quantize(r.target, cb);
        r.payload = std::move(q.codeword);
        r.index = q.index;
        r.distance = q.distance;
        r.bits = cb.bits();
        rep.receivers.push_back(std::move(r));
    }
    return rep;
}

FeedbackReport feedback_proposed_rvq(const ChannelRealization& ch, std::span<const int> bits,
                                     std::uint64_t seed)
{
    const auto& dims = ch.dims();
    FeedbackReport rep{Scheme::proposed, dims, {}};
    for (int i = 0; i < dims.K; ++i)
        rep.receivers.push_back(quantized_receiver(ch, i, bits_for(bits, i, dims.K), seed));
    return rep;
}

FeedbackReport feedback_ncq_rvq(const ChannelRealization& ch, std::span<const int> bits,
                                std::uint64_t seed)
{
    const auto& dims = ch.dims();
    FeedbackReport rep{Scheme::ncq, dims, {}};
    for (int i = 0; i < dims.K; ++i) {
        ReceiverReport r;
        r.target = normalized_channels(ch, i);
        r.bits = bits_for(bits, i, dims.K);
        QuantizeResult q = quantize_rvq(r.target, composite_shape(dims), r.bits,
                                        derive_seed(seed, Stream::codebook, static_cast<std::uint64_t>(i)));
        r.payload = std::move(q.codeword);
        r.index = q.index;
        r.distance = q.distance;
        rep.receivers.push_back(std::move(r));
    }
    return rep;
}

FeedbackReport feedback_perturbed(const ChannelRealization& ch, std::span<const int> bits,
                                  std::uint64_t seed)
{
    const auto& dims = ch.dims();
    FeedbackReport rep{Scheme::perturbed, dims, {}};
    for (int i = 0; i < dims.K; ++i)
        rep.receivers.push_back(perturbed_receiver(ch, i, bits_for(bits, i, dims.K), seed));
    return rep;
}

FeedbackReport feedback_subspace(const ChannelRealization& ch, std::span<const int> bits,
                                 std::uint64_t seed, int max_quantizer_bits)
{
    const auto& dims = ch.dims();
    FeedbackReport rep{Scheme::proposed, dims, {}};
    for (int i = 0; i < dims.K; ++i) {
        const int b = bits_for(bits, i, dims.K);
        if (b <= max_quantizer_bits) {
            rep.receivers.push_back(quantized_receiver(ch, i, b, seed));
        } else {
            rep.receivers.push_back(perturbed_receiver(ch, i, b, seed));
            rep.scheme = Scheme::perturbed;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

int bits_per_log2_snr(const SystemDims& dims, ManifoldKind kind)
{
    dims.validate();
    if (kind == ManifoldKind::subspace)
        return dims.N * (dims.interference_dim() - dims.N);
    return (dims.K - 1) * (dims.M * dims.N - 1);
}

std::vector<int> schedule_bits(const BitSchedule& sched, const SystemDims& dims, double P,
                               ManifoldKind kind)
{
    if (!(P > 0.0))
        throw std::invalid_argument("SNR must be positive");
    if (sched.users.empty())
        throw std::invalid_argument("empty bit schedule");
    if (sched.users.size() != 1 && sched.users.size() != static_cast<std::size_t>(dims.K))
        throw std::invalid_argument("bit schedule needs one entry or one per user");
    const double per_log2 = bits_per_log2_snr(dims, kind);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(dims.K));
    for (int i = 0; i < dims.K; ++i) {
        const UserBits& u = sched.users.size() == 1 ? sched.users[0] : sched.users[static_cast<std::size_t>(i)];
        if (!u.scaled) {
            if (u.bits < 0)
                throw std::invalid_argument("fixed bit budget must be non-negative");
            out.push_back(u.bits);
            continue;
        }
        const double raw = u.alpha * per_log2 * std::log2(P);
        out.push_back(std::max(0, static_cast<int>(std::lround(raw))));
    }
    return out;
}

} // namespace iagrass
