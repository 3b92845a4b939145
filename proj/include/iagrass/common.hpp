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

#ifndef IAGRASS_COMMON_HPP
#define IAGRASS_COMMON_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace iagrass {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Input matrix is rank deficient (within the library's rank tolerance).
class RankDeficientError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Iterative or closed-form solver could not produce a usable result.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A file could not be opened, read, written, or is malformed.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Dimensions of the symmetric K-user MIMO interference channel.
// K users, M transmit antennas, N receive antennas, d streams per user.
struct SystemDims {
    int K = 3;
    int M = 2;
    int N = 2;
    int d = 1;

    // Throws std::invalid_argument when K < 2, any size < 1, d > min(M, N)
    // or (K-1)M < N.
    void validate() const;

    // Row count of the concatenated interference matrix H_i^H, i.e. (K-1)M.
    int interference_dim() const { return (K - 1) * M; }

    // Necessary feasibility condition d(K+1) <= M+N.
    bool ia_proper() const { return d * (K + 1) <= M + N; }

    bool operator==(const SystemDims&) const = default;
};

std::string to_string(const SystemDims& dims);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace iagrass

#endif
