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

#ifndef JAMRX_MODEL_HPP
#define JAMRX_MODEL_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "rng.hpp"
#include "types.hpp"

namespace jamrx
{

/// Scalar parameters of the single-user uplink under a jamming attack.
/// All powers and fading coefficients are linear (not dB); dB conversion
/// belongs to the configuration layer.
template <typename Scalar>
struct SystemParams
{
    Index num_antennas = 0; // M, base-station array size
    Index pilot_len = 0;    // tau, pilot symbols per coherence block
    Index block_len = 0;    // T, coherence block length in symbols

    Scalar user_pilot_power{0}; // p_t
    Scalar user_data_power{0};  // p_d
    Scalar jam_pilot_power{0};  // q_t
    Scalar jam_data_power{0};   // q_d
    Scalar user_fading{0};      // beta_u, large-scale fading user -> BS
    Scalar jam_fading{0};       // beta_j, large-scale fading jammer -> BS

    void validate() const
    {
        if (num_antennas < 1)
            throw std::invalid_argument("SystemParams: num_antennas must be >= 1");
        if (pilot_len < 2)
            throw std::invalid_argument("SystemParams: pilot_len must be >= 2");
        if (block_len <= pilot_len)
            throw std::invalid_argument("SystemParams: block_len must exceed pilot_len");
        for (const Scalar v : {user_pilot_power, user_data_power, jam_pilot_power,
                               jam_data_power, user_fading, jam_fading})
        {
            if (!(v >= Scalar(0)) || !std::isfinite(v))
                throw std::invalid_argument(
                    "SystemParams: powers and fadings must be finite and nonnegative");
        }
    }
};

/// Orthonormal pilot codebook. Columns of `sequences` are the pilots; one
/// column is assigned to the user and one is kept deliberately unused so
/// the receiver can sound the jamming channel through it.
template <typename Scalar>
struct PilotCodebook
{
    CMatrix<Scalar> sequences; // pilot_len x pilot_len, orthonormal columns
    Index used = 0;
    Index unused = 1;

    Index size() const { return sequences.cols(); }
    CVector<Scalar> used_sequence() const { return sequences.col(used); }
    CVector<Scalar> unused_sequence() const { return sequences.col(unused); }
};

/// All random draws belonging to one coherence block.
template <typename Scalar>
struct BlockRealization
{
    CVector<Scalar> user_channel; // h ~ CN(0, beta_u I)
    CVector<Scalar> jam_channel;  // g ~ CN(0, beta_j I)
    CVector<Scalar> jam_sequence; // s_j, unit norm
    CMatrix<Scalar> pilot_noise;  // N_t, M x tau, CN(0,1) entries
    CVector<Scalar> data_noise;   // n_d, CN(0,1) entries
};

/// Builds the pilot codebook as the columns of the unitary DFT matrix
/// scaled by 1/sqrt(pilot_len). This fixes an exactly orthonormal,
/// deterministic construction for any pilot length.
template <typename Scalar = double>
PilotCodebook<Scalar> build_codebook(Index pilot_len)
{
    if (pilot_len < 2)
        throw std::invalid_argument("build_codebook: pilot_len must be >= 2");

    const Scalar amp = Scalar(1) / std::sqrt(Scalar(pilot_len));
    PilotCodebook<Scalar> book;
    book.sequences.resize(pilot_len, pilot_len);
    for (Index k = 0; k < pilot_len; ++k)
    {
        for (Index n = 0; n < pilot_len; ++n)
        {
            // reduce n*k mod pilot_len first so the phase stays in [0, 2*pi)
            const Scalar phase = Scalar(-2) * std::numbers::pi_v<Scalar> *
                                 Scalar((n * k) % pilot_len) / Scalar(pilot_len);
            book.sequences(n, k) = std::polar(amp, phase);
        }
    }
    return book;
}

/// Draws a jamming sequence uniformly distributed over the complex unit
/// sphere: an i.i.d. CN(0,1) vector normalized to unit norm.
template <typename Scalar = double>
CVector<Scalar> sample_jamming_sequence(Index pilot_len, std::mt19937_64& rng)
{
    if (pilot_len < 2)
        throw std::invalid_argument("sample_jamming_sequence: pilot_len must be >= 2");

    CVector<Scalar> s = sample_cgauss_vector<Scalar>(pilot_len, Scalar(1), rng);
    Scalar norm = s.norm();
    while (norm == Scalar(0)) // probability-zero guard
    {
        s = sample_cgauss_vector<Scalar>(pilot_len, Scalar(1), rng);
        norm = s.norm();
    }
    return s / norm;
}

/// Draws the user and jamming channels, h ~ CN(0, beta_u I_M) and
/// g ~ CN(0, beta_j I_M), mutually independent. h is drawn first.
template <typename Scalar>
std::pair<CVector<Scalar>, CVector<Scalar>> sample_channels(const SystemParams<Scalar>& params,
                                                            std::mt19937_64& rng)
{
    params.validate();
    CVector<Scalar> h = sample_cgauss_vector<Scalar>(params.num_antennas, params.user_fading, rng);
    CVector<Scalar> g = sample_cgauss_vector<Scalar>(params.num_antennas, params.jam_fading, rng);
    return {std::move(h), std::move(g)};
}

/// Draws one full coherence block. Order of consumption from `rng` is
/// fixed: h, g, s_j, N_t (column-major), n_d.
template <typename Scalar>
BlockRealization<Scalar> sample_block(const SystemParams<Scalar>& params, std::mt19937_64& rng)
{
    params.validate();
    BlockRealization<Scalar> block;
    auto [h, g] = sample_channels(params, rng);
    block.user_channel = std::move(h);
    block.jam_channel = std::move(g);
    block.jam_sequence = sample_jamming_sequence<Scalar>(params.pilot_len, rng);
    block.pilot_noise =
        sample_cgauss_matrix<Scalar>(params.num_antennas, params.pilot_len, Scalar(1), rng);
    block.data_noise = sample_cgauss_vector<Scalar>(params.num_antennas, Scalar(1), rng);
    return block;
}

/// Received pilot block:
///   Y_t = sqrt(tau p_t) h s_u^T + sqrt(tau q_t) g s_j^T + N_t.
template <typename Scalar>
CMatrix<Scalar> pilot_rx(const SystemParams<Scalar>& params, const CVector<Scalar>& user_channel,
                         const CVector<Scalar>& jam_channel, const CVector<Scalar>& user_sequence,
                         const CVector<Scalar>& jam_sequence, const CMatrix<Scalar>& pilot_noise)
{
    const Index m = pilot_noise.rows();
    const Index tau = pilot_noise.cols();
    if (user_channel.size() != m || jam_channel.size() != m || user_sequence.size() != tau ||
        jam_sequence.size() != tau || tau != params.pilot_len)
        throw std::invalid_argument("pilot_rx: dimension mismatch");

    const Scalar user_amp = std::sqrt(Scalar(tau) * params.user_pilot_power);
    const Scalar jam_amp = std::sqrt(Scalar(tau) * params.jam_pilot_power);
    return user_amp * user_channel * user_sequence.transpose() +
           jam_amp * jam_channel * jam_sequence.transpose() + pilot_noise;
}

/// Received data-phase signal for one symbol:
///   y_d = sqrt(p_d) h x_u + sqrt(q_d) g x_j + n_d.
template <typename Scalar>
CVector<Scalar> data_rx(const SystemParams<Scalar>& params, const CVector<Scalar>& user_channel,
                        const CVector<Scalar>& jam_channel, Complex<Scalar> user_symbol,
                        Complex<Scalar> jam_symbol, const CVector<Scalar>& data_noise)
{
    const Index m = data_noise.size();
    if (user_channel.size() != m || jam_channel.size() != m)
        throw std::invalid_argument("data_rx: dimension mismatch");

    return std::sqrt(params.user_data_power) * user_symbol * user_channel +
           std::sqrt(params.jam_data_power) * jam_symbol * jam_channel + data_noise;
}

} // namespace jamrx

#endif // JAMRX_MODEL_HPP
