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

#ifndef IAGRASS_FEEDBACK_HPP
#define IAGRASS_FEEDBACK_HPP

#include "iagrass/channel.hpp"
#include "iagrass/grassmann.hpp"
#include "iagrass/ia.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iagrass {

enum class Scheme {
    perfect,   // unquantized row space F_i
    proposed,  // F_i quantized on G((K-1)M, N)
    ncq,       // normalized channels quantized on G(MN,1)^(K-1)
    perturbed, // F_i replaced by a model draw of the quantization error
};

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

struct ReceiverReport {
    RowSpaceFactorization factor; // local QR of H_i^H (subspace schemes)
    CMatrix target;               // F_i, or Z_i for NCQ
    CMatrix payload;              // Fhat_i, or Zhat_i for NCQ
    std::size_t index = 0;        // codeword index, 0 when no codebook is used
    int bits = 0;
    double distance = 0.0;        // d_c(F_i, Fhat_i) or D_c(Z_i, Zhat_i)
};

struct FeedbackReport {
    Scheme scheme = Scheme::perfect;
    SystemDims dims;
    std::vector<ReceiverReport> receivers;

    // Channel surrogates the alignment solver sees: Fhat_i^H for subspace
    // schemes, [Hhat_ij] with vec(Hhat_ij) = zhat_ij for NCQ.
    Surrogates surrogates() const;

    // G_i = C_i^-1 F_i^H Fhat_i U_i for subspace schemes, U_i for NCQ.
    std::vector<CMatrix> receive_filters(const IASolution& sol) const;
};

// Z_i: columns vec(H_ij)/||vec(H_ij)|| for j != i, in index order.
CMatrix normalized_channels(const ChannelRealization& ch, int i);

// Column-major unvec of a length N*M vector into N x M.
CMatrix unvec(const CVector& z, int rows, int cols);

FeedbackReport feedback_perfect(const ChannelRealization& ch);

// `codebooks` holds either one shared codebook or one per receiver.
FeedbackReport feedback_proposed(const ChannelRealization& ch, std::span<const Codebook> codebooks);
FeedbackReport feedback_ncq(const ChannelRealization& ch, std::span<const Codebook> codebooks);

// RVQ feedback with receiver i's codebook drawn from
// derive_seed(seed, Stream::codebook, i); never materializes the codebook.
FeedbackReport feedback_proposed_rvq(const ChannelRealization& ch, std::span<const int> bits,
                                     std::uint64_t seed);
FeedbackReport feedback_ncq_rvq(const ChannelRealization& ch, std::span<const int> bits,
                                std::uint64_t seed);

// Fhat_i = perturb(F_i, bits_i) with receiver streams
// derive_seed(seed, Stream::perturbation, i).
FeedbackReport feedback_perturbed(const ChannelRealization& ch, std::span<const int> bits,
                                  std::uint64_t seed);

// Per receiver: the RVQ quantizer when bits_i <= max_quantizer_bits, the
// perturbation model otherwise. Each receiver's result equals what the
// single-path builders above produce for it with the same seed. The report
// is tagged perturbed as soon as one receiver was perturbed.
FeedbackReport feedback_subspace(const ChannelRealization& ch, std::span<const int> bits,
                                 std::uint64_t seed, int max_quantizer_bits);

// ---------------------------------------------------------------------------

struct UserBits {
    bool scaled = false;
    int bits = 0;       // fixed budget
    double alpha = 1.0; // scaled budget: alpha * (real_dim / 2) * log2 P
};

struct BitSchedule {
    std::vector<UserBits> users; // a single entry applies to every user

    static BitSchedule fixed(int bits) { return {{UserBits{false, bits, 0.0}}}; }
    static BitSchedule scaled(double alpha = 1.0) { return {{UserBits{true, 0, alpha}}}; }
};

// Bits per unit log2 P that keep leakage bounded: N((K-1)M-N) for the
// subspace feedback, (K-1)(MN-1) for NCQ.
int bits_per_log2_snr(const SystemDims& dims, ManifoldKind kind);

// Per-user budgets at linear SNR P; scaled entries are rounded to the nearest
// integer and floored at zero.
std::vector<int> schedule_bits(const BitSchedule& sched, const SystemDims& dims, double P,
                               ManifoldKind kind = ManifoldKind::subspace);

} // namespace iagrass

#endif
