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

#ifndef JAMRX_ESTIMATION_HPP
#define JAMRX_ESTIMATION_HPP

#include <cmath>
#include <stdexcept>

#include "model.hpp"
#include "types.hpp"

namespace jamrx
{

/// Scalar coefficients describing both channel estimates, conditioned on
/// the jamming sequence through its correlations with the pilot pair.
///
/// With corr_used = s_j^T s_u^* and corr_unused = s_j^T s_ubar^*, the
/// despread user estimate decomposes as
///   h_hat = user_gain * h + jam_leak * g + lmmse_scale * (N_t s_u^*)
/// and the sounding estimate as
///   g_hat = jam_gain * g + N_t s_ubar^*.
///
/// The correlations are treated as known inputs throughout the library.
/// (At large array sizes they could be estimated from the received pilot
/// power; no such estimator is provided here.)
template <typename Scalar>
struct Coefficients
{
    Scalar lmmse_scale{0};          // c_u, LMMSE scaling of the despread pilot
    Scalar user_gain{0};            // alpha_1 = c_u sqrt(tau p_t)
    Complex<Scalar> jam_leak{0};    // alpha_2 = c_u sqrt(tau q_t) corr_used
    Complex<Scalar> jam_gain{0};    // b = sqrt(tau q_t) corr_unused
    Scalar jam_sound_power{1};      // gamma_j = |b|^2 beta_j + 1
    Scalar residual_power{1};       // sigma, estimation-error-plus-noise power
};

/// User estimate plus jamming estimate plus their shared coefficients.
template <typename Scalar>
struct ChannelEstimates
{
    CVector<Scalar> user_estimate; // h_hat
    CVector<Scalar> jam_estimate;  // g_hat
    Coefficients<Scalar> coeffs;
};

/// Correlates the received pilot block with one pilot sequence:
/// returns Y_t * conj(s).
template <typename MatY, typename VecS>
auto despread(const Eigen::MatrixBase<MatY>& pilot_block, const Eigen::MatrixBase<VecS>& sequence)
    -> CVector<typename Eigen::NumTraits<typename MatY::Scalar>::Real>
{
    if (pilot_block.cols() != sequence.size())
        throw std::invalid_argument("despread: dimension mismatch");
    return pilot_block * sequence.conjugate();
}

/// LMMSE scaling of the despread pilot observation:
///   c_u = sqrt(tau p_t) beta_u / (tau p_t beta_u + q_t beta_j + 1).
/// The denominator is at least 1, so this is always well defined.
template <typename Scalar>
Scalar lmmse_scale(const SystemParams<Scalar>& params)
{
    const Scalar pilot_energy = Scalar(params.pilot_len) * params.user_pilot_power;
    return std::sqrt(pilot_energy) * params.user_fading /
           (pilot_energy * params.user_fading + params.jam_pilot_power * params.jam_fading +
            Scalar(1));
}

/// LMMSE estimate of the user channel from the despread pilot signal:
/// h_hat = c_u * y_t.
template <typename Scalar>
CVector<Scalar> estimate_h(const CVector<Scalar>& despread_pilot, const SystemParams<Scalar>& params)
{
    params.validate();
    return lmmse_scale(params) * despread_pilot;
}

/// Estimate of the jamming channel obtained by projecting the received
/// pilot block onto the reserved (unused) pilot sequence. The projection
/// removes the user's pilot exactly because the two sequences are
/// orthogonal; what remains is the jamming component plus noise.
template <typename Scalar>
CVector<Scalar> estimate_g(const CMatrix<Scalar>& pilot_block, const CVector<Scalar>& used_sequence,
                           const CVector<Scalar>& unused_sequence)
{
    if (pilot_block.cols() != unused_sequence.size() ||
        used_sequence.size() != unused_sequence.size())
        throw std::invalid_argument("estimate_g: dimension mismatch");
    if (std::abs(used_sequence.dot(unused_sequence)) > Scalar(1e-9))
        throw std::invalid_argument("estimate_g: sounding sequence is not orthogonal to the user pilot");
    return pilot_block * unused_sequence.conjugate();
}

/// Power of the estimation-error-plus-noise residual seen by the data
/// detector, averaged over the jamming sequence:
///   sigma = p_d beta_u (1 - c_u sqrt(tau p_t)) + q_d (beta_j (1 + q_t) + 1) + 1.
template <typename Scalar>
Scalar compute_sigma(const SystemParams<Scalar>& params)
{
    params.validate();
    const Scalar c_u = lmmse_scale(params);
    const Scalar pilot_energy = Scalar(params.pilot_len) * params.user_pilot_power;
    return params.user_data_power * params.user_fading * (Scalar(1) - c_u * std::sqrt(pilot_energy)) +
           params.jam_data_power * (params.jam_fading * (Scalar(1) + params.jam_pilot_power) + Scalar(1)) +
           Scalar(1);
}

/// All six coefficients for a given pair of jamming correlations,
/// corr_used = s_j^T s_u^* and corr_unused = s_j^T s_ubar^*. Shared by the
/// Monte-Carlo and closed-form evaluation paths.
template <typename Scalar>
Coefficients<Scalar> effective_coefficients(const SystemParams<Scalar>& params,
                                            Complex<Scalar> corr_used, Complex<Scalar> corr_unused)
{
    params.validate();
    // a unit-norm s_j cannot correlate with two orthonormal vectors beyond unit total mass
    if (std::norm(corr_used) + std::norm(corr_unused) > Scalar(1) + Scalar(1e-9))
        throw std::invalid_argument("effective_coefficients: correlations exceed the unit-sphere bound");

    const Scalar jam_energy = std::sqrt(Scalar(params.pilot_len) * params.jam_pilot_power);

    Coefficients<Scalar> c;
    c.lmmse_scale = lmmse_scale(params);
    c.user_gain = c.lmmse_scale * std::sqrt(Scalar(params.pilot_len) * params.user_pilot_power);
    c.jam_leak = c.lmmse_scale * jam_energy * corr_used;
    c.jam_gain = jam_energy * corr_unused;
    c.jam_sound_power = std::norm(c.jam_gain) * params.jam_fading + Scalar(1);
    c.residual_power = compute_sigma(params);
    return c;
}

/// Full estimation pass over one received pilot block: despread, scale,
/// sound the jamming channel, and attach the coefficients belonging to the
/// given jamming correlations.
template <typename Scalar>
ChannelEstimates<Scalar> estimate_channels(const CMatrix<Scalar>& pilot_block,
                                           const PilotCodebook<Scalar>& book,
                                           const SystemParams<Scalar>& params,
                                           Complex<Scalar> corr_used, Complex<Scalar> corr_unused)
{
    const CVector<Scalar> used = book.used_sequence();
    const CVector<Scalar> unused = book.unused_sequence();
    ChannelEstimates<Scalar> est;
    est.user_estimate = estimate_h(despread(pilot_block, used), params);
    est.jam_estimate = estimate_g(pilot_block, used, unused);
    est.coeffs = effective_coefficients(params, corr_used, corr_unused);
    return est;
}

} // namespace jamrx

#endif // JAMRX_ESTIMATION_HPP
