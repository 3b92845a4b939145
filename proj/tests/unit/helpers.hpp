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

#ifndef IAGRASS_TEST_HELPERS_HPP
#define IAGRASS_TEST_HELPERS_HPP

#include "iagrass/common.hpp"
#include "iagrass/rng.hpp"

#include <Eigen/QR>

namespace iagrass::test {

inline CMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols)
{
    ComplexGaussian g;
    return g.matrix(rng, rows, cols);
}

// Unitary matrix from Eigen's Householder QR, independent of the library's
// Gram-Schmidt.
inline CMatrix random_unitary(Rng& rng, Eigen::Index n)
{
    Eigen::HouseholderQR<CMatrix> qr(gaussian(rng, n, n));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

inline double max_abs(const CMatrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

inline double orthonormality_error(const CMatrix& Q)
{
    return max_abs(Q.adjoint() * Q - CMatrix::Identity(Q.cols(), Q.cols()));
}

} // namespace iagrass::test

#endif
