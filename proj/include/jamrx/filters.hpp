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

#ifndef JAMRX_FILTERS_HPP
#define JAMRX_FILTERS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "types.hpp"

namespace jamrx
{

enum class FilterKind
{
    Mrc,      // a = h_hat, jamming-oblivious baseline
    MmseType, // regularized rejection of the estimated jamming direction
    ZfType    // exact nulling of the estimated jamming direction
};

constexpr const char* to_string(FilterKind kind)
{
    switch (kind)
    {
    case FilterKind::Mrc:
        return "mrc";
    case FilterKind::MmseType:
        return "mmse";
    case FilterKind::ZfType:
        return "zf";
    }
    return "unknown";
}

inline std::optional<FilterKind> filter_from_string(std::string_view name)
{
    if (name == "mrc")
        return FilterKind::Mrc;
    if (name == "mmse")
        return FilterKind::MmseType;
    if (name == "zf")
        return FilterKind::ZfType;
    return std::nullopt;
}

template <typename Scalar>
struct ReceiveFilter
{
    CVector<Scalar> weights; // a, applied as a^H y_d
    FilterKind kind = FilterKind::Mrc;
};

/// Maximal ratio combining: a = h_hat.
template <typename Scalar>
ReceiveFilter<Scalar> mrc(const CVector<Scalar>& user_estimate)
{
    return {user_estimate, FilterKind::Mrc};
}

/// MMSE-type filter a = (g_hat g_hat^H + (sigma/q_d) I)^{-1} h_hat,
/// evaluated through the rank-one inversion identity
///   a = (q_d/sigma) * (h_hat - g_hat (g_hat^H h_hat) / (sigma/q_d + ||g_hat||^2)),
/// which costs O(M) with no matrix inverse.
///
/// q_d = 0 removes the rank-one term and leaves a pure scaling of h_hat;
/// the filter degenerates to a = h_hat / sigma (SINR is scale invariant,
/// so the scaling is a convention).
template <typename Scalar>
ReceiveFilter<Scalar> mmse_type(const CVector<Scalar>& user_estimate,
                                const CVector<Scalar>& jam_estimate, Scalar sigma, Scalar q_d)
{
    if (!(sigma > Scalar(0)) || !std::isfinite(sigma))
        throw std::invalid_argument("mmse_type: sigma must be positive and finite");
    if (q_d < Scalar(0) || !std::isfinite(q_d))
        throw std::invalid_argument("mmse_type: q_d must be nonnegative and finite");
    if (user_estimate.size() != jam_estimate.size())
        throw std::invalid_argument("mmse_type: dimension mismatch");

    if (q_d == Scalar(0))
        return {user_estimate / sigma, FilterKind::MmseType};

    const Scalar reg = sigma / q_d;
    const Complex<Scalar> cross = jam_estimate.dot(user_estimate); // g_hat^H h_hat
    CVector<Scalar> a =
        (user_estimate - jam_estimate * (cross / (reg + jam_estimate.squaredNorm()))) / reg;
    return {std::move(a), FilterKind::MmseType};
}

/// ZF-type filter: projects h_hat onto the orthogonal complement of g_hat,
///   a = (I - g_hat g_hat^H / ||g_hat||^2) h_hat.
/// A zero g_hat projects onto nothing, so a = h_hat.
template <typename Scalar>
ReceiveFilter<Scalar> zf_type(const CVector<Scalar>& user_estimate,
                              const CVector<Scalar>& jam_estimate)
{
    if (user_estimate.size() != jam_estimate.size())
        throw std::invalid_argument("zf_type: dimension mismatch");

    const Scalar energy = jam_estimate.squaredNorm();
    if (energy == Scalar(0))
        return {user_estimate, FilterKind::ZfType};

    CVector<Scalar> a = user_estimate - jam_estimate * (jam_estimate.dot(user_estimate) / energy);
    return {std::move(a), FilterKind::ZfType};
}

template <typename Scalar>
ReceiveFilter<Scalar> build_filter(FilterKind kind, const CVector<Scalar>& user_estimate,
                                   const CVector<Scalar>& jam_estimate, Scalar sigma, Scalar q_d)
{
    switch (kind)
    {
    case FilterKind::Mrc:
        return mrc(user_estimate);
    case FilterKind::MmseType:
        return mmse_type(user_estimate, jam_estimate, sigma, q_d);
    case FilterKind::ZfType:
        return zf_type(user_estimate, jam_estimate);
    }
    throw std::invalid_argument("build_filter: unknown filter kind");
}

} // namespace jamrx

#endif // JAMRX_FILTERS_HPP
