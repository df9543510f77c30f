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

#ifndef JAMRX_CLOSED_FORM_HPP
#define JAMRX_CLOSED_FORM_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include "estimation.hpp"
#include "rate.hpp"
#include "types.hpp"

namespace jamrx
{

/// Inputs for the large-scale SINR approximations. The antenna count is
/// carried separately so sweeps can reuse one coefficient set across
/// array sizes. Everything is linear-domain.
template <typename Scalar>
struct ClosedFormInputs
{
    SystemParams<Scalar> params;
    Coefficients<Scalar> coeffs;
    Index num_antennas = 0;
};

/// The four large-scale term approximations behind the MMSE-type SINR,
/// in the normalizations in which they become M-independent or O(1/M):
/// desired_signal and gain_uncertainty and jamming are per M^2, noise is
/// per M.
template <typename Scalar>
struct AppendixTerms
{
    Scalar desired_signal{};   // p_d |E{a^H h}|^2 / M^2
    Scalar gain_uncertainty{}; // p_d var{a^H h} / M^2
    Scalar jamming{};          // q_d E{|a^H g|^2} / M^2
    Scalar noise{};            // E{||a||^2} / M
};

namespace detail
{

template <typename Scalar>
void check_closed_form_inputs(const ClosedFormInputs<Scalar>& inp)
{
    if (inp.num_antennas < 1)
        throw std::invalid_argument("closed form: num_antennas must be >= 1");
    if (!(inp.coeffs.residual_power > Scalar(0)))
        throw std::invalid_argument("closed form: residual power must be positive");
    if (!(inp.coeffs.jam_sound_power >= Scalar(1)))
        throw std::invalid_argument("closed form: jam_sound_power must be >= 1");
}

} // namespace detail

/// Large-scale approximation of the effective SINR under the MMSE-type
/// filter, evaluated at finite M (the sigma/(q_d M) corrections are kept,
/// they matter at moderate array sizes). The q_d = 0 value is the exact
/// limit of the same expression: the jamming term vanishes and the
/// bracketed ratio tends to one.
template <typename Scalar>
Scalar rho_mmse_approx(const ClosedFormInputs<Scalar>& inp)
{
    detail::check_closed_form_inputs(inp);

    const Scalar m = Scalar(inp.num_antennas);
    const Scalar p_d = inp.params.user_data_power;
    const Scalar q_d = inp.params.jam_data_power;
    const Scalar beta_u = inp.params.user_fading;
    const Scalar beta_j = inp.params.jam_fading;
    const Scalar a1_sq = inp.coeffs.user_gain * inp.coeffs.user_gain;
    const Scalar a2_sq = std::norm(inp.coeffs.jam_leak);
    const Scalar b_sq = std::norm(inp.coeffs.jam_gain);
    const Scalar c_sq = inp.coeffs.lmmse_scale * inp.coeffs.lmmse_scale;
    const Scalar gamma = inp.coeffs.jam_sound_power;
    const Scalar sigma = inp.coeffs.residual_power;

    const Scalar numerator = m * p_d * a1_sq * beta_u * beta_u;
    if (q_d == Scalar(0))
    {
        const Scalar denominator = a1_sq * beta_u * (p_d * beta_u + Scalar(1)) + c_sq +
                                   a2_sq * beta_j;
        return numerator / denominator;
    }

    const Scalar x = sigma / (q_d * m);
    const Scalar shrink = (x + Scalar(1)) / (x + gamma);
    const Scalar denominator =
        m * shrink * shrink * q_d * a2_sq * beta_j * beta_j +
        (a1_sq * beta_u * (p_d * beta_u + Scalar(1)) + c_sq +
         a2_sq * beta_j * (b_sq * beta_j + (x + Scalar(1)) * (x + Scalar(1))) /
             ((x + gamma) * (x + gamma)));
    return numerator / denominator;
}

/// Large-scale approximation of the effective SINR under the ZF-type
/// filter.
template <typename Scalar>
Scalar rho_zf_approx(const ClosedFormInputs<Scalar>& inp)
{
    detail::check_closed_form_inputs(inp);

    const Scalar m = Scalar(inp.num_antennas);
    const Scalar p_d = inp.params.user_data_power;
    const Scalar q_d = inp.params.jam_data_power;
    const Scalar beta_u = inp.params.user_fading;
    const Scalar beta_j = inp.params.jam_fading;
    const Scalar a1_sq = inp.coeffs.user_gain * inp.coeffs.user_gain;
    const Scalar a2_sq = std::norm(inp.coeffs.jam_leak);
    const Scalar c_sq = inp.coeffs.lmmse_scale * inp.coeffs.lmmse_scale;
    const Scalar gamma = inp.coeffs.jam_sound_power;

    const Scalar numerator = m * p_d * a1_sq * beta_u * beta_u;
    const Scalar denominator =
        m * q_d * a2_sq * beta_j * beta_j / (gamma * gamma) +
        (a1_sq * beta_u * (p_d * beta_u + Scalar(1)) + c_sq + a2_sq * beta_j / gamma);
    return numerator / denominator;
}

/// Common infinite-array limit of both filter approximations:
///   rho_asy = p_d alpha_1^2 beta_u^2 gamma_j^2 / (q_d |alpha_2|^2 beta_j^2).
/// Returns +infinity when the pilot phase carries no jamming leakage
/// (alpha_2 = 0) or q_d = 0, in which case the SINR grows without bound.
template <typename Scalar>
Scalar rho_asymptotic(const SystemParams<Scalar>& params, const Coefficients<Scalar>& coeffs)
{
    const Scalar a2_sq = std::norm(coeffs.jam_leak);
    if (params.jam_data_power == Scalar(0) || a2_sq == Scalar(0))
        return std::numeric_limits<Scalar>::infinity();

    const Scalar gamma = coeffs.jam_sound_power;
    return params.user_data_power * coeffs.user_gain * coeffs.user_gain * params.user_fading *
           params.user_fading * gamma * gamma /
           (params.jam_data_power * a2_sq * params.jam_fading * params.jam_fading);
}

/// The four term-level approximations for the MMSE-type filter.
/// Assembling them as
///   rho = desired_signal / (gain_uncertainty + jamming + noise / M)
/// reproduces rho_mmse_approx identically. All terms vanish at q_d = 0
/// (the filter itself is scaled by q_d).
template <typename Scalar>
AppendixTerms<Scalar> appendix_terms_mmse(const ClosedFormInputs<Scalar>& inp)
{
    detail::check_closed_form_inputs(inp);

    AppendixTerms<Scalar> terms{};
    const Scalar q_d = inp.params.jam_data_power;
    if (q_d == Scalar(0))
        return terms;

    const Scalar m = Scalar(inp.num_antennas);
    const Scalar p_d = inp.params.user_data_power;
    const Scalar beta_u = inp.params.user_fading;
    const Scalar beta_j = inp.params.jam_fading;
    const Scalar a1_sq = inp.coeffs.user_gain * inp.coeffs.user_gain;
    const Scalar a2_sq = std::norm(inp.coeffs.jam_leak);
    const Scalar b_sq = std::norm(inp.coeffs.jam_gain);
    const Scalar c_sq = inp.coeffs.lmmse_scale * inp.coeffs.lmmse_scale;
    const Scalar gamma = inp.coeffs.jam_sound_power;
    const Scalar sigma = inp.coeffs.residual_power;

    const Scalar x = sigma / (q_d * m);
    const Scalar shrink = (x + Scalar(1)) / (x + gamma);
    const Scalar scale = q_d * q_d / (sigma * sigma);

    terms.desired_signal = p_d * scale * a1_sq * beta_u * beta_u;
    terms.gain_uncertainty = p_d * scale * a1_sq * beta_u * beta_u / m;
    terms.jamming = q_d * q_d * q_d / (sigma * sigma) * shrink * shrink * a2_sq * beta_j * beta_j;
    terms.noise = scale * (a1_sq * beta_u + c_sq +
                           a2_sq * beta_j * (b_sq * beta_j + (x + Scalar(1)) * (x + Scalar(1))) /
                               ((x + gamma) * (x + gamma)));
    return terms;
}

/// Achievable rate with the SINR replaced by the large-scale
/// approximation of the chosen filter, averaged over `outer_samples`
/// jamming-sequence draws. Uses the same jamming-sequence stream as
/// achievable_rate, so simulation and analysis pair up draw by draw under
/// a shared master seed.
template <typename Scalar>
RateEstimate<Scalar> rate_from_closed_form(const SystemParams<Scalar>& params, FilterKind kind,
                                           Index num_antennas, Index outer_samples,
                                           std::uint64_t master_seed)
{
    params.validate();
    if (kind == FilterKind::Mrc)
        throw std::invalid_argument("rate_from_closed_form: no closed form for the MRC baseline");
    if (outer_samples < 1)
        throw std::invalid_argument("rate_from_closed_form: outer_samples must be >= 1");

    const PilotCodebook<Scalar> book = build_codebook<Scalar>(params.pilot_len);
    const CVector<Scalar> used_seq = book.used_sequence();
    const CVector<Scalar> unused_seq = book.unused_sequence();

    std::vector<Scalar> sinrs(static_cast<std::size_t>(outer_samples));
    for (Index k = 0; k < outer_samples; ++k)
    {
        auto rng = make_engine(master_seed, streams::jam_sequence, static_cast<std::uint64_t>(k));
        const CVector<Scalar> jam_seq = sample_jamming_sequence<Scalar>(params.pilot_len, rng);
        const Complex<Scalar> corr_used = used_seq.dot(jam_seq);
        const Complex<Scalar> corr_unused = unused_seq.dot(jam_seq);

        ClosedFormInputs<Scalar> inp{params, effective_coefficients(params, corr_used, corr_unused),
                                     num_antennas};
        sinrs[static_cast<std::size_t>(k)] =
            (kind == FilterKind::MmseType) ? rho_mmse_approx(inp) : rho_zf_approx(inp);
    }
    return rate_from_sinrs(params, sinrs);
}

} // namespace jamrx

#endif // JAMRX_CLOSED_FORM_HPP
