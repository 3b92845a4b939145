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

#ifndef IAGRASS_RNG_HPP
#define IAGRASS_RNG_HPP

#include "iagrass/common.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>

namespace iagrass {

// Same sequence as std::mt19937_64, noticeably faster in this toolchain.
using Rng = boost::random::mt19937_64;

// Purpose tag mixed into derived seeds so that independent random objects of
// one trial never share a stream.
enum class Stream : std::uint64_t {
    channel = 1,
    codebook = 2,
    perturbation = 3,
    solver_init = 4,
};

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of the random object (stream, receiver) belonging to one trial seed.
constexpr std::uint64_t derive_seed(std::uint64_t trial_seed, Stream stream, std::uint64_t receiver = 0)
{
    std::uint64_t h = mix64(trial_seed);
    h = mix64(h ^ static_cast<std::uint64_t>(stream));
    return mix64(h ^ (receiver + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

// Circularly-symmetric complex Gaussian sampler, CN(0,1) per entry.
class ComplexGaussian {
  public:
    cdouble operator()(Rng& rng) { return {normal_(rng), normal_(rng)}; }

    CMatrix matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols)
    {
        CMatrix out(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                out(r, c) = (*this)(rng);
        return out;
    }

  private:
    // Ziggurat sampler; each real part has variance 1/2.
    boost::random::normal_distribution<double> normal_{0.0, 0.70710678118654752440};
};

} // namespace iagrass

#endif
