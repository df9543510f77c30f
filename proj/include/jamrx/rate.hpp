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

#ifndef JAMRX_RATE_HPP
#define JAMRX_RATE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "estimation.hpp"
#include "filters.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace jamrx
{

/// Stream identifiers for seed derivation. Every Monte-Carlo draw is
/// seeded by (master_seed, stream, index), which makes all results
/// independent of the thread count and of loop partitioning.
namespace streams
{
constexpr std::uint64_t jam_sequence = 0x4a53; // one per outer realization
constexpr std::uint64_t outer_block = 0x4f42;  // re-keys the inner loop per outer index
constexpr std::uint64_t inner_block = 0x4942;  // one per inner realization
} // namespace streams

/// Sample sizes and seeding for the nested Monte-Carlo evaluation: the
/// outer loop draws jamming sequences, the inner loop draws channels and
/// noise for the conditional moments.
struct McConfig
{
    Index inner_samples = 10000;
    Index outer_samples = 100;
    std::uint64_t master_seed = 20260810ULL;

    void validate() const
    {
        if (inner_samples < 100)
            throw std::invalid_argument("McConfig: inner_samples must be >= 100");
        if (outer_samples < 1)
            throw std::invalid_argument("McConfig: outer_samples must be >= 1");
    }
};

/// Sample estimates of the four conditional moments that make up the
/// effective SINR, together with their standard errors.
template <typename Scalar>
struct SinrBreakdown
{
    Complex<Scalar> desired_gain{}; // E{a^H h | s_j}
    Scalar gain_variance{};         // var{a^H h | s_j}
    Scalar jamming_power{};         // E{|a^H g|^2 | s_j}
    Scalar noise_power{};           // E{||a||^2 | s_j}

    Scalar desired_gain_se{};
    Scalar gain_variance_se{};
    Scalar jamming_power_se{};
    Scalar noise_power_se{};

    Index n_samples = 0;
};

/// Point estimate of the ergodic achievable rate in bits/symbol, with the
/// per-jamming-sequence log terms kept for paired comparisons.
template <typename Scalar>
struct RateEstimate
{
    Scalar rate{};
    Scalar rate_se{};
    std::vector<Scalar> log_terms; // log2(1 + rho) per outer draw
};

/// Linear combining: y = a^H y_d.
template <typename VecA, typename VecY>
auto combine(const Eigen::MatrixBase<VecA>& filter_weights, const Eigen::MatrixBase<VecY>& data_rx)
    -> typename VecA::Scalar
{
    if (filter_weights.size() != data_rx.size())
        throw std::invalid_argument("combine: dimension mismatch");
    return filter_weights.dot(data_rx);
}

/// Builds the canonical unit-norm jamming sequence with prescribed
/// correlations against the used and unused pilots:
///   s_j = corr_used * s_u + corr_unused * s_ubar + r * s_rem,
/// with r^2 = 1 - |corr_used|^2 - |corr_unused|^2 and s_rem the first
/// codebook column outside the pilot pair. The SINR statistics depend on
/// the jamming sequence only through these two correlations, so this
/// canonical representative is fully general. For pilot_len == 2 there is
/// no third direction and the correlations must exhaust the unit norm.
template <typename Scalar>
CVector<Scalar> synthesize_jam_sequence(const PilotCodebook<Scalar>& book,
                                        Complex<Scalar> corr_used, Complex<Scalar> corr_unused)
{
    const Scalar mass = std::norm(corr_used) + std::norm(corr_unused);
    if (mass > Scalar(1) + Scalar(1e-9))
        throw std::invalid_argument("synthesize_jam_sequence: correlations exceed the unit-sphere bound");

    const Scalar remainder = std::sqrt(std::max(Scalar(0), Scalar(1) - mass));
    CVector<Scalar> s = corr_used * book.used_sequence() + corr_unused * book.unused_sequence();
    if (remainder > Scalar(1e-6))
    {
        if (book.size() < 3)
            throw std::invalid_argument(
                "synthesize_jam_sequence: correlations infeasible for a length-2 codebook");
        Index rem_col = 0;
        while (rem_col == book.used || rem_col == book.unused)
            ++rem_col;
        s += remainder * book.sequences.col(rem_col);
    }
    return s / s.norm();
}

namespace detail
{

template <typename Scalar>
Scalar mean_of(const std::vector<Scalar>& values)
{
    KahanSum<Scalar> sum;
    for (const Scalar v : values)
        sum.add(v);
    return sum.value() / Scalar(values.size());
}

// standard error of the sample mean
template <typename Scalar>
Scalar se_of(const std::vector<Scalar>& values, Scalar mean)
{
    if (values.size() < 2)
        return Scalar(0);
    KahanSum<Scalar> sq;
    for (const Scalar v : values)
        sq.add((v - mean) * (v - mean));
    const Scalar var = sq.value() / Scalar(values.size() - 1);
    return std::sqrt(var / Scalar(values.size()));
}

} // namespace detail

/// Estimates the conditional moments of the effective SINR for a fixed
/// jamming sequence (given by its pilot correlations) by drawing
/// `inner_samples` independent (h, g, N_t) realizations and running the
/// full estimation and filter construction per draw.
template <typename Scalar>
SinrBreakdown<Scalar> sinr_terms_mc(const SystemParams<Scalar>& params, FilterKind kind,
                                    Complex<Scalar> corr_used, Complex<Scalar> corr_unused,
                                    const McConfig& cfg)
{
    params.validate();
    cfg.validate();

    const PilotCodebook<Scalar> book = build_codebook<Scalar>(params.pilot_len);
    const CVector<Scalar> used_seq = book.used_sequence();
    const CVector<Scalar> jam_seq = synthesize_jam_sequence(book, corr_used, corr_unused);

    const Index n = cfg.inner_samples;
    std::vector<Complex<Scalar>> gains(static_cast<std::size_t>(n));
    std::vector<Scalar> jams(static_cast<std::size_t>(n));
    std::vector<Scalar> noises(static_cast<std::size_t>(n));

    for (Index i = 0; i < n; ++i)
    {
        auto rng = make_engine(cfg.master_seed, streams::inner_block, static_cast<std::uint64_t>(i));
        auto [h, g] = sample_channels(params, rng);
        const CMatrix<Scalar> pilot_noise =
            sample_cgauss_matrix<Scalar>(params.num_antennas, params.pilot_len, Scalar(1), rng);

        const CMatrix<Scalar> pilot_block = pilot_rx(params, h, g, used_seq, jam_seq, pilot_noise);
        const ChannelEstimates<Scalar> est =
            estimate_channels(pilot_block, book, params, corr_used, corr_unused);
        const ReceiveFilter<Scalar> filt = build_filter(kind, est.user_estimate, est.jam_estimate,
                                                        est.coeffs.residual_power,
                                                        params.jam_data_power);

        const std::size_t j = static_cast<std::size_t>(i);
        gains[j] = filt.weights.dot(h);
        jams[j] = std::norm(filt.weights.dot(g));
        noises[j] = filt.weights.squaredNorm();
    }

    SinrBreakdown<Scalar> bd;
    bd.n_samples = n;

    KahanSum<Scalar> re_sum, im_sum;
    for (const auto& z : gains)
    {
        re_sum.add(z.real());
        im_sum.add(z.imag());
    }
    bd.desired_gain = Complex<Scalar>(re_sum.value() / Scalar(n), im_sum.value() / Scalar(n));

    // unbiased sample variance of a^H h around the complex mean
    std::vector<Scalar> deviations(static_cast<std::size_t>(n));
    KahanSum<Scalar> dev_sum;
    for (std::size_t j = 0; j < gains.size(); ++j)
    {
        deviations[j] = std::norm(gains[j] - bd.desired_gain);
        dev_sum.add(deviations[j]);
    }
    bd.gain_variance = dev_sum.value() / Scalar(n - 1);
    bd.desired_gain_se = std::sqrt(bd.gain_variance / Scalar(n));
    const Scalar dev_mean = dev_sum.value() / Scalar(n);
    bd.gain_variance_se = detail::se_of(deviations, dev_mean);

    bd.jamming_power = detail::mean_of(jams);
    bd.jamming_power_se = detail::se_of(jams, bd.jamming_power);
    bd.noise_power = detail::mean_of(noises);
    bd.noise_power_se = detail::se_of(noises, bd.noise_power);
    return bd;
}

/// Effective SINR assembled from the conditional moments:
///   rho = p_d |E{a^H h}|^2 /
///         (p_d var{a^H h} + q_d E{|a^H g|^2} + E{||a||^2}).
/// A 0/0 ratio (e.g. an all-zero filter) evaluates to 0.
template <typename Scalar>
Scalar effective_sinr(const SinrBreakdown<Scalar>& bd, Scalar p_d, Scalar q_d)
{
    if (p_d < Scalar(0) || q_d < Scalar(0) || bd.gain_variance < Scalar(0) ||
        bd.jamming_power < Scalar(0) || bd.noise_power < Scalar(0))
        throw std::invalid_argument("effective_sinr: negative input");

    const Scalar numerator = p_d * std::norm(bd.desired_gain);
    const Scalar denominator =
        p_d * bd.gain_variance + q_d * bd.jamming_power + bd.noise_power;
    if (numerator == Scalar(0))
        return Scalar(0);
    if (denominator == Scalar(0))
        return std::numeric_limits<Scalar>::infinity();
    return numerator / denominator;
}

/// Averages per-jamming-sequence SINRs into the ergodic achievable rate:
///   R = (1 - tau/T) * mean(log2(1 + rho)).
template <typename Scalar>
RateEstimate<Scalar> rate_from_sinrs(const SystemParams<Scalar>& params,
                                     const std::vector<Scalar>& sinrs)
{
    params.validate();
    if (sinrs.empty())
        throw std::invalid_argument("rate_from_sinrs: no SINR values");

    const Scalar prelog = Scalar(1) - Scalar(params.pilot_len) / Scalar(params.block_len);
    RateEstimate<Scalar> est;
    est.log_terms.resize(sinrs.size());
    for (std::size_t i = 0; i < sinrs.size(); ++i)
        est.log_terms[i] = std::log1p(sinrs[i]) / std::numbers::ln2_v<Scalar>;

    const Scalar mean = detail::mean_of(est.log_terms);
    est.rate = prelog * mean;
    est.rate_se = prelog * detail::se_of(est.log_terms, mean);
    return est;
}

/// Ergodic achievable rate by nested Monte-Carlo: the outer loop draws
/// jamming sequences, the inner loop estimates the conditional moments.
/// Outer draws are distributed over a worker pool; per-index derived
/// seeds make the output independent of the thread count.
template <typename Scalar>
RateEstimate<Scalar> achievable_rate(const SystemParams<Scalar>& params, FilterKind kind,
                                     const McConfig& cfg, int threads = 0)
{
    params.validate();
    cfg.validate();

    const PilotCodebook<Scalar> book = build_codebook<Scalar>(params.pilot_len);
    const CVector<Scalar> used_seq = book.used_sequence();
    const CVector<Scalar> unused_seq = book.unused_sequence();

    std::vector<Scalar> sinrs(static_cast<std::size_t>(cfg.outer_samples));
    parallel_for_index(cfg.outer_samples, threads,
                       [&](Index k)
                       {
                           auto rng = make_engine(cfg.master_seed, streams::jam_sequence,
                                                  static_cast<std::uint64_t>(k));
                           const CVector<Scalar> jam_seq =
                               sample_jamming_sequence<Scalar>(params.pilot_len, rng);
                           const Complex<Scalar> corr_used = used_seq.dot(jam_seq);
                           const Complex<Scalar> corr_unused = unused_seq.dot(jam_seq);

                           McConfig inner = cfg;
                           inner.master_seed = derive_seed(cfg.master_seed, streams::outer_block,
                                                           static_cast<std::uint64_t>(k));
                           const auto bd = sinr_terms_mc(params, kind, corr_used, corr_unused, inner);
                           sinrs[static_cast<std::size_t>(k)] =
                               effective_sinr(bd, params.user_data_power, params.jam_data_power);
                       });
    return rate_from_sinrs(params, sinrs);
}

} // namespace jamrx

#endif // JAMRX_RATE_HPP
