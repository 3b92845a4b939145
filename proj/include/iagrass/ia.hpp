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

#ifndef IAGRASS_IA_HPP
#define IAGRASS_IA_HPP

#include "iagrass/channel.hpp"
#include "iagrass/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace iagrass {

// Per-receiver channel surrogate handed to an alignment solver: the matrix
// playing the role of H_i (N x (K-1)M, transmitter blocks in index order
// with the receiver's own block removed).
using Surrogates = std::vector<CMatrix>;

struct IASolution {
    std::vector<CMatrix> V; // precoders, M x d, orthonormal columns
    std::vector<CMatrix> U; // receive subspaces, N x d, orthonormal columns
    double residual = 0.0;  // sum_i ||U_i^H A_i Bdiag_{j!=i}(V_j)||_F^2
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
    std::vector<double> residual_history; // per iteration, alternating minimization only
};

// sum_i sum_{j != i} ||U_i^H A_ij V_j||_F^2.
double alignment_residual(const Surrogates& surrogates, const SystemDims& dims,
                          const std::vector<CMatrix>& V, const std::vector<CMatrix>& U);

// sum_i ||A_i||_F^2, the scale used for relative residuals.
double surrogate_scale(const Surrogates& surrogates);

// Receive subspace for receiver i: the d least-dominant eigenvectors of the
// interference covariance sum_{j != i} A_ij V_j V_j^H A_ij^H.
CMatrix interference_free_subspace(const Surrogates& surrogates, const SystemDims& dims,
                                   const std::vector<CMatrix>& V, int i);

bool closed_form_applicable(const SystemDims& dims);

// Three-user eigenvector construction for M = N, 2d <= M. V_0 spans the d
// eigenvectors of largest |eigenvalue| of A20^-1 A21 A01^-1 A02 A12^-1 A10;
// V_1 = A21^-1 A20 V_0 and V_2 = A12^-1 A10 V_0. Throws SolverError on a
// singular cross block or degenerate eigenvectors.
IASolution solve_ia_closed_form(const Surrogates& surrogates, const SystemDims& dims);

struct AltMinOptions {
    double tolerance = 1e-9; // on residual / surrogate_scale
    int max_iterations = 5000;
    std::uint64_t seed = 0; // Haar initialization of V
};

// Alternating leakage minimization. Non-convergence is reported through
// IASolution::converged, not thrown.
IASolution solve_ia_altmin(const Surrogates& surrogates, const SystemDims& dims,
                           const AltMinOptions& opts = {});

enum class SolverKind {
    automatic,   // closed form when applicable, alternating minimization otherwise
    closed_form,
    altmin,
};

SolverKind parse_solver(const std::string& name);
std::string to_string(SolverKind kind);

IASolution solve_ia(const Surrogates& surrogates, const SystemDims& dims, SolverKind kind,
                    const AltMinOptions& opts = {});

// G = C^-1 F^H Fhat Utilde (N x d).
CMatrix build_receive_filter(const RowSpaceFactorization& fac, const CMatrix& Fhat,
                             const CMatrix& Utilde);

// Bdiag(V_j, j != i), shape (K-1)M x (K-1)d.
CMatrix stacked_precoders(const std::vector<CMatrix>& V, const SystemDims& dims, int i);

} // namespace iagrass

#endif
