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

#ifndef IAGRASS_GRASSMANN_HPP
#define IAGRASS_GRASSMANN_HPP

#include "iagrass/common.hpp"
#include "iagrass/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace iagrass {

// Point on the complex Grassmann manifold G(n, p), held as an n x p matrix
// with orthonormal columns. Any representative Q U (U unitary) denotes the
// same point.
class GrassmannPoint {
  public:
    // Throws std::invalid_argument if Q^H Q deviates from I by more than tol.
    explicit GrassmannPoint(CMatrix basis, double tol = 1e-10);

    Eigen::Index n() const { return basis_.rows(); }
    Eigen::Index p() const { return basis_.cols(); }
    const CMatrix& basis() const { return basis_; }

  private:
    CMatrix basis_;
};

// Haar-distributed point: orthonormalized n x p standard complex Gaussian.
GrassmannPoint haar_point(int n, int p, std::uint64_t seed);
GrassmannPoint haar_point(int n, int p, Rng& rng);

// d_c(X, Y) = ||X X^H - Y Y^H||_F / sqrt(2).
double chordal_distance(const GrassmannPoint& X, const GrassmannPoint& Y);

// Squared chordal distance from orthonormal bases, p - ||X^H Y||_F^2.
double chordal_distance_sq(const CMatrix& X, const CMatrix& Y);

// Distance on the composite manifold G(MN,1)^(K-1): columns of Z and T are the
// K-1 unit vectors; D_c = sqrt(sum_j (1 - |t_j^H z_j|^2)).
double composite_distance(const CMatrix& Z, const CMatrix& T);

// ---------------------------------------------------------------------------
// Codebooks

enum class ManifoldKind : std::uint32_t {
    subspace = 0,  // G(n, p)
    composite = 1, // p unit vectors of length n
};

struct CodebookShape {
    ManifoldKind kind = ManifoldKind::subspace;
    int n = 0;
    int p = 0;

    bool operator==(const CodebookShape&) const = default;
};

// Materialized codebooks larger than 2^kMaxCodebookBits are refused.
inline constexpr int kMaxCodebookBits = 22;

// 2^bits entries, each an n x p matrix stored column-major in one buffer.
class Codebook {
  public:
    Codebook(CodebookShape shape, int bits, std::uint64_t seed, std::vector<cdouble> data);

    const CodebookShape& shape() const { return shape_; }
    int bits() const { return bits_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return std::size_t{1} << bits_; }

    Eigen::Map<const CMatrix> entry(std::size_t k) const;
    const std::vector<cdouble>& data() const { return data_; }

  private:
    CodebookShape shape_;
    int bits_;
    std::uint64_t seed_;
    std::vector<cdouble> data_;
};

// i.i.d. Haar codebook: subspace entries are Haar points of G(n,p), composite
// entries are p independent uniform unit vectors of length n.
Codebook rvq_codebook(const CodebookShape& shape, int bits, std::uint64_t seed);

struct QuantizeResult {
    std::size_t index = 0;
    double distance = 0.0; // chordal (subspace) or composite distance
    CMatrix codeword;
};

// Nearest codeword under the manifold's distance; ties go to the lowest index.
QuantizeResult quantize(const CMatrix& target, const Codebook& cb);

// Same result as quantize(target, rvq_codebook(shape, bits, seed)) without
// materializing the codebook.
QuantizeResult quantize_rvq(const CMatrix& target, const CodebookShape& shape, int bits,
                            std::uint64_t seed);

// Binary codebook file: 8-byte magic "IAGCB001", then little-endian u32 kind,
// u32 n, u32 p, u32 bits, u64 seed, followed by 2^bits entries, each n x p in
// row-major order with every complex value written as (re, im) float64.
void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Analytic constants

struct ManifoldConstants {
    double real_dim = 0.0;   // N_G
    double ball_coeff = 0.0; // c
};

// c for G(n, p): [1/(p(n-p))!] prod_{i=1..p} (n-i)! / prod_{i=1..p} (p-i)!.
double grassmann_ball_coeff(int n, int p);
ManifoldConstants grassmann_constants(int n, int p);

// Constants of G((K-1)M, N), the manifold of the proposed feedback.
double ball_volume_coeff(const SystemDims& dims);
ManifoldConstants subspace_constants(const SystemDims& dims);

// Constants of the composite manifold G(MN,1)^(K-1) used by NCQ. The ball
// coefficient follows from the product of K-1 unit-coefficient balls of
// real dimension 2(MN-1).
ManifoldConstants composite_constants(const SystemDims& dims);

// Delta = 2 / (c 2^bits)^(1/N_G).
double packing_radius(const ManifoldConstants& consts, double bits);

struct MomentBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Bounds on E[d_c^k] for an RVQ codebook of 2^bits entries.
MomentBounds distortion_moment_bounds(const ManifoldConstants& consts, double bits, double k);

// ---------------------------------------------------------------------------
// Quantization-error model

struct PerturbationModel {
    double mean = 0.0;     // r-bar, k=2 upper moment bound
    double variance = 0.0; // sigma_r^2 from the k=4 and k=2 upper bounds
    double max_sq = 0.0;   // Delta^2, upper truncation point
};

PerturbationModel perturbation_model(const ManifoldConstants& consts, int bits);

// Draws r from N(mean, variance) truncated to (0, max_sq) by rejection.
// Throws SolverError after kMaxRejections failed draws.
inline constexpr long kMaxRejections = 1'000'000;
double sample_squared_distance(const PerturbationModel& model, Rng& rng);

// Point at squared chordal distance r from F: principal angles theta_i with
// sin theta_i = s_i sqrt(r) / ||s||, s_i ~ U(0,1), rotated into a random
// orthonormal direction orthogonal to F. Requires n >= 2p and 0 <= r <= p.
GrassmannPoint perturb_at_distance(const GrassmannPoint& F, double r, Rng& rng);

// Random point around F whose squared distance follows the model for a
// 2^bits RVQ codebook on F's manifold.
GrassmannPoint perturb(const GrassmannPoint& F, int bits, std::uint64_t seed);
GrassmannPoint perturb(const GrassmannPoint& F, int bits, Rng& rng);

} // namespace iagrass

#endif
