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

#ifndef IAGRASS_METRICS_HPP
#define IAGRASS_METRICS_HPP

#include "iagrass/channel.hpp"
#include "iagrass/feedback.hpp"
#include "iagrass/ia.hpp"

#include <span>
#include <string>
#include <vector>

namespace iagrass {

// All rates are in bits/s/Hz (log base 2).
struct RatePoint {
    double snr_db = 0.0;
    std::vector<double> per_user_rate;
    double sum_rate = 0.0;
    std::vector<double> leakage;
    std::string scheme;
};

// L_i = (P/d) ||G_i^H H_i Bdiag_{j!=i}(V_j)||_F^2 for every receiver.
std::vector<double> leakage(const ChannelRealization& ch, const std::vector<CMatrix>& V,
                            const std::vector<CMatrix>& filters, double P);

// 2 P Delta^2 for the subspace manifold; the vanishing correction factor of
// the packing bound is not included.
double subspace_leakage_bound(const SystemDims& dims, double bits, double P);

struct NcqLeakageBound {
    double max_block_energy = 0.0; // B_max = max_j ||vec(H_ij)||^2
    double bound = 0.0;            // 2 P d B_max D_c^2(Z_i, Zhat_i)
};

NcqLeakageBound ncq_leakage_bound(const ChannelRealization& ch, const FeedbackReport& report,
                                  int i, double P);

// log2 det of a Hermitian positive definite matrix.
double log2_det_hpd(const CMatrix& A);

// Sum rate with optimal (unfiltered) receivers:
// sum_i log|I + (P/d) sum_j H_ij V_j V_j^H H_ij^H| - log|I + (P/d) sum_{j!=i} ...|.
RatePoint sum_rate_optimal(const ChannelRealization& ch, const std::vector<CMatrix>& V, double P);

// Sum rate after the receive filters, with G_i^H G_i in place of I.
// Throws SolverError when a Gram matrix G_i^H G_i is singular.
RatePoint sum_rate_projected(const ChannelRealization& ch, const std::vector<CMatrix>& V,
                             const std::vector<CMatrix>& filters, double P);

struct RatePair {
    double interference_free = 0.0; // R_p: log|I + (P/d) Q_S|
    double achieved = 0.0;          // R_q: log|I + (P/d)(Q_S + Q_I)| - log|I + (P/d) Q_I|
};

RatePair rate_pair_hypothetical(const ChannelRealization& ch, const std::vector<CMatrix>& V,
                                const CMatrix& filter, double P, int i);

// Per-user lower bound on E[R_q]: R_p - d log2(1 + (2P/d) * upper k=2 moment
// bound of an RVQ codebook on the subspace manifold).
double rvq_rate_loss_lower_bound(const SystemDims& dims, double bits, double P, double R_p);

struct DofEstimate {
    std::vector<double> per_user; // slope of each user's rate vs log2 P
    double sum = 0.0;
};

// Least-squares slope over the `window` highest-SNR points (distinct SNRs,
// window >= 3). Throws std::invalid_argument when fewer points exist.
DofEstimate estimate_dof(std::span<const RatePoint> curve, std::size_t window = 3);

} // namespace iagrass

#endif
