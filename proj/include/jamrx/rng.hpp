// SPDX-License-Identifier: Apache-2.0
//
// jamrx - jamming resistant receive combining for the massive MIMO uplink
// Copyright (C) 2026 jamrx contributors
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

#ifndef JAMRX_RNG_HPP
#define JAMRX_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "types.hpp"

namespace jamrx
{

/// SplitMix64 finalizer. Used to hash (master seed, stream id, index)
/// triples into well-separated engine seeds so that every Monte-Carlo
/// realization owns an independent stream, regardless of how the work is
/// partitioned across threads.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream,
                                   std::uint64_t index)
{
    return std::mt19937_64(derive_seed(master, stream, index));
}

/// One draw of a unit-variance circularly symmetric complex Gaussian,
/// CN(0,1), via the polar Box-Muller transform. Real and imaginary parts
/// carry variance 1/2 each. std::normal_distribution is avoided on
/// purpose: its output sequence is implementation-defined, which would
/// break the bit-reproducibility contract of the samplers.
template <typename Scalar>
Complex<Scalar> sample_unit_cgauss(std::mt19937_64& rng)
{
    // u1 in (0,1], u2 in [0,1)
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return Complex<Scalar>(static_cast<Scalar>(radius * std::cos(angle)),
                           static_cast<Scalar>(radius * std::sin(angle)));
}

/// Vector with i.i.d. CN(0, variance) entries, filled front to back.
template <typename Scalar>
CVector<Scalar> sample_cgauss_vector(Index n, Scalar variance, std::mt19937_64& rng)
{
    const Scalar amp = std::sqrt(variance);
    CVector<Scalar> v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = amp * sample_unit_cgauss<Scalar>(rng);
    return v;
}

/// Matrix with i.i.d. CN(0, variance) entries, filled column by column.
template <typename Scalar>
CMatrix<Scalar> sample_cgauss_matrix(Index rows, Index cols, Scalar variance,
                                     std::mt19937_64& rng)
{
    const Scalar amp = std::sqrt(variance);
    CMatrix<Scalar> m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            m(i, j) = amp * sample_unit_cgauss<Scalar>(rng);
    return m;
}

/// Compensated (Kahan) accumulator; keeps long Monte-Carlo reductions
/// reproducible to well below 1e-10 relative independent of length.
template <typename Scalar>
class KahanSum
{
public:
    void add(Scalar x) noexcept
    {
        const Scalar y = x - m_comp;
        const Scalar t = m_sum + y;
        m_comp = (t - m_sum) - y;
        m_sum = t;
    }
    Scalar value() const noexcept { return m_sum; }

private:
    Scalar m_sum{0};
    Scalar m_comp{0};
};

} // namespace jamrx

#endif // JAMRX_RNG_HPP
