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

#ifndef IAGRASS_CHANNEL_HPP
#define IAGRASS_CHANNEL_HPP

#include "iagrass/common.hpp"

#include <cstdint>
#include <vector>

namespace iagrass {

// One fading draw of the K-user channel: every H_ij (receiver i, transmitter
// j) including the direct links H_ii. User indices are zero based.
class ChannelRealization {
  public:
    ChannelRealization(SystemDims dims, std::vector<CMatrix> blocks);

    const SystemDims& dims() const { return dims_; }

    // H_ij, shape N x M.
    const CMatrix& operator()(int i, int j) const { return blocks_[index(i, j)]; }
    CMatrix& operator()(int i, int j) { return blocks_[index(i, j)]; }

  private:
    std::size_t index(int i, int j) const;

    SystemDims dims_;
    std::vector<CMatrix> blocks_;
};

// Economy QR of H_i^H with the positive-diagonal convention: H_i^H = F C.
struct RowSpaceFactorization {
    CMatrix F; // (K-1)M x N, orthonormal columns
    CMatrix C; // N x N, upper triangular, positive real diagonal
};

// i.i.d. CN(0,1) entries, deterministic in seed.
ChannelRealization gen_channel(const SystemDims& dims, std::uint64_t seed);

// [H_i0, ..., H_i(i-1), H_i(i+1), ..., H_i(K-1)], shape N x (K-1)M.
CMatrix concat_interference(const ChannelRealization& ch, int i);

// Column offset of transmitter j's block inside the concatenation seen by
// receiver i (j != i).
inline int interference_block_offset(int i, int j, int M) { return (j < i ? j : j - 1) * M; }

// Smallest singular value below this fraction of the largest is treated as
// rank deficient.
inline constexpr double kRankTolerance = 1e-12;

// Factorizes Hi^H = F C. Throws RankDeficientError if Hi lacks full row rank.
RowSpaceFactorization row_space_qr(const CMatrix& Hi);

// Thin QR of a tall matrix by modified Gram-Schmidt with one
// re-orthogonalization pass; R gets a positive real diagonal.
CMatrix orthonormalize(const CMatrix& A, CMatrix* R = nullptr);

} // namespace iagrass

#endif
