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

#include "iagrass/grassmann.hpp"

#include "iagrass/channel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>

namespace iagrass {

namespace {

void check_orthonormal(const CMatrix& Q, double tol)
{
    if (Q.cols() > Q.rows() || Q.cols() == 0)
        throw std::invalid_argument("Grassmann point needs 0 < p <= n");
    const CMatrix gram = Q.adjoint() * Q;
    const double err = (gram - CMatrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
    if (!(err <= tol))
        throw std::invalid_argument("basis is not orthonormal");
}

void check_unit_columns(const CMatrix& Z, double tol)
{
    for (Eigen::Index j = 0; j < Z.cols(); ++j)
        if (!(std::abs(Z.col(j).norm() - 1.0) <= tol))
            throw std::invalid_argument("composite point needs unit-norm columns");
}

// conj(a)^T b over n entries, spelled out in real arithmetic: std::complex
// products go through the NaN-aware library routine and dominate the scan.
inline cdouble cdot(const cdouble* a, const cdouble* b, int n)
{
    double re = 0.0;
    double im = 0.0;
    for (int r = 0; r < n; ++r) {
        const double ar = a[r].real(), ai = a[r].imag();
        const double br = b[r].real(), bi = b[r].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

// Two-pass modified Gram-Schmidt on a column-major n x p block.
void orthonormalize_raw(cdouble* q, int n, int p)
{
    for (int k = 0; k < p; ++k) {
        cdouble* col = q + static_cast<std::ptrdiff_t>(k) * n;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                const cdouble* prev = q + static_cast<std::ptrdiff_t>(j) * n;
                const cdouble c = cdot(prev, col, n);
                for (int r = 0; r < n; ++r)
                    col[r] -= cdouble{c.real() * prev[r].real() - c.imag() * prev[r].imag(),
                                      c.real() * prev[r].imag() + c.imag() * prev[r].real()};
            }
        }
        double sq = 0.0;
        for (int r = 0; r < n; ++r)
            sq += std::norm(col[r]);
        if (!(sq > 0.0))
            throw RankDeficientError("codeword draw produced dependent columns");
        const double inv = 1.0 / std::sqrt(sq);
        for (int r = 0; r < n; ++r)
            col[r] *= inv;
    }
}

// Fills one codeword into `out` (n*p values, column-major).
void draw_codeword(const CodebookShape& shape, Rng& rng, ComplexGaussian& gauss, cdouble* out)
{
    const int n = shape.n;
    const int p = shape.p;
    for (int k = 0; k < n * p; ++k)
        out[k] = gauss(rng);
    if (shape.kind == ManifoldKind::subspace) {
        orthonormalize_raw(out, n, p);
        return;
    }
    // composite: each column normalized independently
    for (int j = 0; j < p; ++j)
        orthonormalize_raw(out + static_cast<std::ptrdiff_t>(j) * n, n, 1);
}

// sum_j |<target_j, word_j>|^2 for composite, ||target^H word||_F^2 for
// subspace. Either way the squared distance is p minus this score.
double codeword_score(const CodebookShape& shape, const cdouble* target, const cdouble* word)
{
    const int n = shape.n;
    const int p = shape.p;
    double score = 0.0;
    if (shape.kind == ManifoldKind::subspace) {
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                score += std::norm(cdot(target + a * n, word + b * n, n));
    } else {
        for (int a = 0; a < p; ++a)
            score += std::norm(cdot(target + a * n, word + a * n, n));
    }
    return score;
}

void check_target(const CMatrix& target, const CodebookShape& shape)
{
    if (target.rows() != shape.n || target.cols() != shape.p)
        throw std::invalid_argument("quantization target shape does not match codebook");
    if (shape.kind == ManifoldKind::subspace)
        check_orthonormal(target, 1e-8);
    else
        check_unit_columns(target, 1e-8);
}

void check_shape(const CodebookShape& shape)
{
    if (shape.n < 1 || shape.p < 1)
        throw std::invalid_argument("codebook shape must be positive");
    if (shape.kind == ManifoldKind::subspace && shape.p > shape.n)
        throw std::invalid_argument("subspace codebook needs p <= n");
}

void check_bits(int bits)
{
    if (bits < 0)
        throw std::invalid_argument("codebook bits must be non-negative");
    if (bits > kMaxCodebookBits)
        throw std::invalid_argument("codebook exceeds the 2^22 entry cap; use the perturbation model");
}

} // namespace

GrassmannPoint::GrassmannPoint(CMatrix basis, double tol) : basis_(std::move(basis))
{
    check_orthonormal(basis_, tol);
}

GrassmannPoint haar_point(int n, int p, Rng& rng)
{
    if (p < 1 || p > n)
        throw std::invalid_argument("haar_point needs 1 <= p <= n");
    ComplexGaussian gauss;
    return GrassmannPoint(orthonormalize(gauss.matrix(rng, n, p)));
}

GrassmannPoint haar_point(int n, int p, std::uint64_t seed)
{
    Rng rng = make_rng(seed);
    return haar_point(n, p, rng);
}

double chordal_distance_sq(const CMatrix& X, const CMatrix& Y)
{
    if (X.rows() != Y.rows() || X.cols() != Y.cols())
        throw std::invalid_argument("chordal distance needs matching (n, p)");
    return std::max(0.0, static_cast<double>(X.cols()) - (X.adjoint() * Y).squaredNorm());
}

double chordal_distance(const GrassmannPoint& X, const GrassmannPoint& Y)
{
    if (X.n() != Y.n() || X.p() != Y.p())
        throw std::invalid_argument("chordal distance needs matching (n, p)");
    const CMatrix diff = X.basis() * X.basis().adjoint() - Y.basis() * Y.basis().adjoint();
    return diff.norm() / std::sqrt(2.0);
}

double composite_distance(const CMatrix& Z, const CMatrix& T)
{
    if (Z.rows() != T.rows() || Z.cols() != T.cols())
        throw std::invalid_argument("composite distance needs equal list lengths");
    check_unit_columns(Z, 1e-8);
    check_unit_columns(T, 1e-8);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < Z.cols(); ++j)
        sum += 1.0 - std::norm(T.col(j).dot(Z.col(j)));
    return std::sqrt(std::max(0.0, sum));
}

// ---------------------------------------------------------------------------

Codebook::Codebook(CodebookShape shape, int bits, std::uint64_t seed, std::vector<cdouble> data)
    : shape_(shape), bits_(bits), seed_(seed), data_(std::move(data))
{
    check_shape(shape_);
    check_bits(bits_);
    const std::size_t stride = static_cast<std::size_t>(shape_.n) * shape_.p;
    if (data_.size() != size() * stride)
        throw std::invalid_argument("codebook buffer size does not match 2^bits entries");
    for (std::size_t k = 0; k < size(); ++k) {
        if (shape_.kind == ManifoldKind::subspace)
            check_orthonormal(entry(k), 1e-10);
        else
            check_unit_columns(entry(k), 1e-10);
    }
}

Eigen::Map<const CMatrix> Codebook::entry(std::size_t k) const
{
    if (k >= size())
        throw std::out_of_range("codebook index out of range");
    const std::size_t stride = static_cast<std::size_t>(shape_.n) * shape_.p;
    return Eigen::Map<const CMatrix>(data_.data() + k * stride, shape_.n, shape_.p);
}

Codebook rvq_codebook(const CodebookShape& shape, int bits, std::uint64_t seed)
{
    check_shape(shape);
    check_bits(bits);
    const std::size_t count = std::size_t{1} << bits;
    const std::size_t stride = static_cast<std::size_t>(shape.n) * shape.p;
    std::vector<cdouble> data(count * stride);
    Rng rng = make_rng(seed);
    ComplexGaussian gauss;
    for (std::size_t k = 0; k < count; ++k)
        draw_codeword(shape, rng, gauss, data.data() + k * stride);
    return Codebook(shape, bits, seed, std::move(data));
}

QuantizeResult quantize(const CMatrix& target, const Codebook& cb)
{
    if (cb.size() == 0)
        throw std::invalid_argument("empty codebook");
    const auto& shape = cb.shape();
    check_target(target, shape);
    const std::size_t stride = static_cast<std::size_t>(shape.n) * shape.p;
    const cdouble* base = cb.data().data();
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t k = 0; k < cb.size(); ++k) {
        const double score = codeword_score(shape, target.data(), base + k * stride);
        if (score > best_score) {
            best_score = score;
            best = k;
        }
    }
    QuantizeResult out;
    out.index = best;
    out.codeword = cb.entry(best);
    out.distance = std::sqrt(std::max(0.0, shape.p - best_score));
    return out;
}

QuantizeResult quantize_rvq(const CMatrix& target, const CodebookShape& shape, int bits,
                            std::uint64_t seed)
{
    check_shape(shape);
    if (bits < 0 || bits > 62)
        throw std::invalid_argument("quantize_rvq: bits out of range");
    check_target(target, shape);
    const std::size_t count = std::size_t{1} << bits;
    Rng rng = make_rng(seed);
    ComplexGaussian gauss;
    CMatrix word(shape.n, shape.p);
    CMatrix best_word(shape.n, shape.p);
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t k = 0; k < count; ++k) {
        draw_codeword(shape, rng, gauss, word.data());
        const double score = codeword_score(shape, target.data(), word.data());
        if (score > best_score) {
            best_score = score;
            best = k;
            best_word = word;
        }
    }
    QuantizeResult out;
    out.index = best;
    out.codeword = std::move(best_word);
    out.distance = std::sqrt(std::max(0.0, shape.p - best_score));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<char, 8> kCodebookMagic{'I', 'A', 'G', 'C', 'B', '0', '0', '1'};

template <class UInt>
void write_le(std::ostream& os, UInt v)
{
    std::array<char, sizeof(UInt)> bytes{};
    for (std::size_t b = 0; b < sizeof(UInt); ++b)
        bytes[b] = static_cast<char>((v >> (8 * b)) & 0xff);
    os.write(bytes.data(), bytes.size());
}

template <class UInt>
UInt read_le(std::istream& is)
{
    std::array<unsigned char, sizeof(UInt)> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    UInt v = 0;
    for (std::size_t b = 0; b < sizeof(UInt); ++b)
        v |= static_cast<UInt>(bytes[b]) << (8 * b);
    return v;
}

} // namespace

void save_codebook(const Codebook& cb, const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open codebook file for writing: " + path.string());
    os.write(kCodebookMagic.data(), kCodebookMagic.size());
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(cb.shape().kind));
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(cb.shape().n));
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(cb.shape().p));
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(cb.bits()));
    write_le<std::uint64_t>(os, cb.seed());
    for (std::size_t k = 0; k < cb.size(); ++k) {
        const auto e = cb.entry(k);
        for (Eigen::Index r = 0; r < e.rows(); ++r)
            for (Eigen::Index c = 0; c < e.cols(); ++c) {
                write_le(os, std::bit_cast<std::uint64_t>(e(r, c).real()));
                write_le(os, std::bit_cast<std::uint64_t>(e(r, c).imag()));
            }
    }
    if (!os)
        throw IoError("failed writing codebook file: " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open codebook file: " + path.string());
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kCodebookMagic)
        throw IoError("not a codebook file: " + path.string());
    const auto kind = read_le<std::uint32_t>(is);
    const auto n = read_le<std::uint32_t>(is);
    const auto p = read_le<std::uint32_t>(is);
    const auto bits = read_le<std::uint32_t>(is);
    const auto seed = read_le<std::uint64_t>(is);
    if (!is || kind > 1 || n == 0 || p == 0 || n > (1u << 16) || p > (1u << 16) ||
        bits > static_cast<std::uint32_t>(kMaxCodebookBits))
        throw IoError("corrupt codebook header: " + path.string());
    CodebookShape shape{static_cast<ManifoldKind>(kind), static_cast<int>(n), static_cast<int>(p)};
    const std::size_t count = std::size_t{1} << bits;
    const std::size_t stride = static_cast<std::size_t>(n) * p;
    std::vector<cdouble> data(count * stride);
    for (std::size_t k = 0; k < count; ++k) {
        Eigen::Map<CMatrix> e(data.data() + k * stride, n, p);
        for (Eigen::Index r = 0; r < e.rows(); ++r)
            for (Eigen::Index c = 0; c < e.cols(); ++c) {
                const double re = std::bit_cast<double>(read_le<std::uint64_t>(is));
                const double im = std::bit_cast<double>(read_le<std::uint64_t>(is));
                e(r, c) = {re, im};
            }
    }
    if (!is)
        throw IoError("truncated codebook file: " + path.string());
    if (is.peek() != std::char_traits<char>::eof())
        throw IoError("trailing data in codebook file: " + path.string());
    return Codebook(shape, static_cast<int>(bits), seed, std::move(data));
}

// ---------------------------------------------------------------------------

double grassmann_ball_coeff(int n, int p)
{
    if (p < 1 || p > n)
        throw std::invalid_argument("grassmann_ball_coeff needs 1 <= p <= n");
    double log_c = -std::lgamma(static_cast<double>(p) * (n - p) + 1.0);
    for (int i = 1; i <= p; ++i) {
        log_c += std::lgamma(static_cast<double>(n - i) + 1.0);
        log_c -= std::lgamma(static_cast<double>(p - i) + 1.0);
    }
    return std::exp(log_c);
}

ManifoldConstants grassmann_constants(int n, int p)
{
    return {2.0 * p * (n - p), grassmann_ball_coeff(n, p)};
}

double ball_volume_coeff(const SystemDims& dims)
{
    if (dims.interference_dim() < dims.N)
        throw std::invalid_argument("ball_volume_coeff needs (K-1)M >= N");
    return grassmann_ball_coeff(dims.interference_dim(), dims.N);
}

ManifoldConstants subspace_constants(const SystemDims& dims)
{
    dims.validate();
    return grassmann_constants(dims.interference_dim(), dims.N);
}

ManifoldConstants composite_constants(const SystemDims& dims)
{
    dims.validate();
    const double m = static_cast<double>(dims.M) * dims.N - 1.0;
    const double copies = dims.K - 1.0;
    const double log_c = copies * std::lgamma(m + 1.0) - std::lgamma(copies * m + 1.0);
    return {2.0 * copies * m, std::exp(log_c)};
}

double packing_radius(const ManifoldConstants& consts, double bits)
{
    if (bits < 0.0)
        throw std::invalid_argument("bits must be non-negative");
    if (consts.real_dim <= 0.0)
        return 0.0;
    const double log2_base = std::log2(consts.ball_coeff) + bits;
    return 2.0 * std::exp2(-log2_base / consts.real_dim);
}

MomentBounds distortion_moment_bounds(const ManifoldConstants& consts, double bits, double k)
{
    if (!(k >= 1.0))
        throw std::invalid_argument("moment order k must be >= 1");
    if (consts.real_dim <= 0.0)
        return {};
    const double dim = consts.real_dim;
    const double scale = std::exp2(-(std::log2(consts.ball_coeff) + bits) * k / dim);
    return {dim / (dim + k) * scale, std::tgamma(k / dim) / (dim / k) * scale};
}

// ---------------------------------------------------------------------------

PerturbationModel perturbation_model(const ManifoldConstants& consts, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("perturbation model needs bits >= 1");
    const double mean = distortion_moment_bounds(consts, bits, 2.0).upper;
    const double fourth = distortion_moment_bounds(consts, bits, 4.0).upper;
    const double delta = packing_radius(consts, bits);
    return {mean, fourth - mean * mean, delta * delta};
}

double sample_squared_distance(const PerturbationModel& model, Rng& rng)
{
    if (!std::isfinite(model.variance) || !(model.variance > 0.0) || !std::isfinite(model.mean))
        throw std::invalid_argument("perturbation model has non-finite or non-positive variance");
    boost::random::normal_distribution<double> normal(model.mean, std::sqrt(model.variance));
    for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
        const double r = normal(rng);
        if (r > 0.0 && r < model.max_sq)
            return r;
    }
    throw SolverError("truncated-normal rejection sampler exhausted its attempt budget");
}

GrassmannPoint perturb_at_distance(const GrassmannPoint& F, double r, Rng& rng)
{
    const Eigen::Index n = F.n();
    const Eigen::Index p = F.p();
    if (n < 2 * p)
        throw std::invalid_argument("perturbation needs n >= 2p");
    if (!(r >= 0.0) || r > static_cast<double>(p))
        throw std::invalid_argument("squared distance must lie in [0, p]");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd sines(p);
    for (long attempt = 0;; ++attempt) {
        if (attempt == kMaxRejections)
            throw SolverError("could not split squared distance into valid principal angles");
        Eigen::VectorXd s(p);
        for (Eigen::Index i = 0; i < p; ++i) {
            double v = 0.0;
            while (v == 0.0)
                v = unit(rng);
            s(i) = v;
        }
        sines = s * (std::sqrt(r) / s.norm());
        if (sines.maxCoeff() <= 1.0)
            break;
    }

    ComplexGaussian gauss;
    const CMatrix& basis = F.basis();
    CMatrix comp = gauss.matrix(rng, n, p);
    for (int pass = 0; pass < 2; ++pass)
        comp -= basis * (basis.adjoint() * comp);
    comp = orthonormalize(comp);

    CMatrix out(n, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const double sn = sines(i);
        const double cs = std::sqrt(std::max(0.0, 1.0 - sn * sn));
        out.col(i) = cs * basis.col(i) + sn * comp.col(i);
    }
    return GrassmannPoint(std::move(out));
}

GrassmannPoint perturb(const GrassmannPoint& F, int bits, Rng& rng)
{
    const auto n = static_cast<int>(F.n());
    const auto p = static_cast<int>(F.p());
    if (n < 2 * p)
        throw std::invalid_argument("perturbation needs n >= 2p");
    PerturbationModel model = perturbation_model(grassmann_constants(n, p), bits);
    model.max_sq = std::min(model.max_sq, static_cast<double>(p));
    const double r = sample_squared_distance(model, rng);
    return perturb_at_distance(F, r, rng);
}

GrassmannPoint perturb(const GrassmannPoint& F, int bits, std::uint64_t seed)
{
    Rng rng = make_rng(seed);
    return perturb(F, bits, rng);
}

} // namespace iagrass
