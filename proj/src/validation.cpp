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

#include <jamrx/experiments.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace jamrx
{

namespace
{

// local seed streams for the validation draws
constexpr std::uint64_t kStreamIdentity = 0x7601;
constexpr std::uint64_t kStreamZf = 0x7602;
constexpr std::uint64_t kStreamDense = 0x7603;
constexpr std::uint64_t kStreamAssembly = 0x7604;
constexpr std::uint64_t kStreamMoments = 0x7605;
constexpr std::uint64_t kStreamAsymptotic = 0x7606;

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

SystemParams<double> random_params(std::mt19937_64& rng, Index num_antennas)
{
    SystemParams<double> p;
    p.num_antennas = num_antennas;
    p.pilot_len = 2 + static_cast<Index>(rng() % 6); // 2..7
    p.block_len = p.pilot_len + 100;
    p.user_pilot_power = uniform(rng, 0.1, 4.0);
    p.user_data_power = uniform(rng, 0.1, 4.0);
    p.jam_pilot_power = uniform(rng, 0.0, 4.0);
    p.jam_data_power = uniform(rng, 0.0, 4.0);
    p.user_fading = uniform(rng, 0.25, 2.0);
    p.jam_fading = uniform(rng, 0.25, 2.0);
    return p;
}

SystemParams<double> paper_style_params(Index num_antennas, double q_db)
{
    SystemParams<double> p;
    p.num_antennas = num_antennas;
    p.pilot_len = 3;
    p.block_len = 200;
    p.user_pilot_power = db_to_linear(5.0);
    p.user_data_power = db_to_linear(5.0);
    p.jam_pilot_power = db_to_linear(q_db);
    p.jam_data_power = db_to_linear(q_db);
    p.user_fading = 1.0;
    p.jam_fading = 1.0;
    return p;
}

// Extended-precision dense solve of (g g^H + (sigma/q_d) I) a = h; serves
// as the independent oracle for the rank-one MMSE-type path.
CVector<double> dense_mmse_oracle(const CVector<double>& h_hat, const CVector<double>& g_hat,
                                  double sigma, double q_d)
{
    using CLong = std::complex<long double>;
    using MatL = Eigen::Matrix<CLong, Eigen::Dynamic, Eigen::Dynamic>;
    using VecL = Eigen::Matrix<CLong, Eigen::Dynamic, 1>;

    const Index m = h_hat.size();
    const VecL hl = h_hat.cast<CLong>();
    const VecL gl = g_hat.cast<CLong>();
    MatL a = gl * gl.adjoint();
    a += MatL::Identity(m, m) * CLong(static_cast<long double>(sigma) / static_cast<long double>(q_d));
    const VecL solved = a.ldlt().solve(hl);

    CVector<double> out(m);
    for (Index i = 0; i < m; ++i)
        out(i) = Complex<double>(static_cast<double>(solved(i).real()),
                                 static_cast<double>(solved(i).imag()));
    return out;
}

ValidationCheck check_codebook_gram(double tolerance)
{
    double worst = 0.0;
    for (Index tau = 2; tau <= 64; ++tau)
    {
        const auto book = build_codebook<double>(tau);
        const CMatrix<double> gram = book.sequences.adjoint() * book.sequences;
        worst = std::max(worst,
                         (gram - CMatrix<double>::Identity(tau, tau)).cwiseAbs().maxCoeff());
    }
    return {"codebook_gram_identity", worst, tolerance, worst <= tolerance};
}

ValidationCheck check_reconstruction(std::uint64_t seed, long trials, double tolerance)
{
    double worst = 0.0;
    for (long t = 0; t < trials; ++t)
    {
        auto rng = make_engine(seed, kStreamIdentity, static_cast<std::uint64_t>(t));
        SystemParams<double> params = random_params(rng, 32);
        const auto book = build_codebook<double>(params.pilot_len);
        const CVector<double> used = book.used_sequence();
        const CVector<double> unused = book.unused_sequence();
        const auto [h, g] = sample_channels(params, rng);
        const CVector<double> jam_seq = sample_jamming_sequence<double>(params.pilot_len, rng);
        const CMatrix<double> noise =
            sample_cgauss_matrix<double>(params.num_antennas, params.pilot_len, 1.0, rng);

        const CMatrix<double> block = pilot_rx(params, h, g, used, jam_seq, noise);
        const CVector<double> h_hat = estimate_h(despread(block, used), params);
        const CVector<double> g_hat = estimate_g(block, used, unused);

        const auto coeffs = effective_coefficients(params, used.dot(jam_seq), unused.dot(jam_seq));
        const CVector<double> h_pred = coeffs.user_gain * h + coeffs.jam_leak * g +
                                       coeffs.lmmse_scale * (noise * used.conjugate());
        const CVector<double> g_pred = coeffs.jam_gain * g + noise * unused.conjugate();

        const double h_scale = std::max(1.0, h_hat.norm());
        const double g_scale = std::max(1.0, g_hat.norm());
        worst = std::max(worst, (h_hat - h_pred).norm() / h_scale);
        worst = std::max(worst, (g_hat - g_pred).norm() / g_scale);
    }
    return {"estimate_reconstruction", worst, tolerance, worst <= tolerance};
}

ValidationCheck check_zf_orthogonality(std::uint64_t seed, long trials, double tolerance)
{
    const Index sizes[] = {4, 64, 256};
    double worst = 0.0;
    for (long t = 0; t < trials; ++t)
    {
        auto rng = make_engine(seed, kStreamZf, static_cast<std::uint64_t>(t));
        const Index m = sizes[t % 3];
        const CVector<double> h_hat = sample_cgauss_vector<double>(m, 1.0, rng);
        const CVector<double> g_hat = sample_cgauss_vector<double>(m, 1.0, rng);
        const auto filt = zf_type(h_hat, g_hat);
        const double norms = filt.weights.norm() * g_hat.norm();
        if (norms > 0.0)
            worst = std::max(worst, std::abs(filt.weights.dot(g_hat)) / norms);
    }
    return {"zf_orthogonality", worst, tolerance, worst <= tolerance};
}

ValidationCheck check_rank1_vs_dense(std::uint64_t seed, long trials, double tolerance)
{
    double worst = 0.0;
    for (long t = 0; t < trials; ++t)
    {
        auto rng = make_engine(seed, kStreamDense, static_cast<std::uint64_t>(t));
        const Index m = 4 + static_cast<Index>(rng() % 29); // 4..32
        const CVector<double> h_hat = sample_cgauss_vector<double>(m, 1.0, rng);
        const CVector<double> g_hat = sample_cgauss_vector<double>(m, 1.0, rng);
        // regularizer spans twelve orders of magnitude around 1
        const double ratio = std::pow(10.0, uniform(rng, -6.0, 6.0));
        const double q_d = uniform(rng, 0.1, 10.0);
        const double sigma = ratio * q_d;

        const auto fast = mmse_type(h_hat, g_hat, sigma, q_d);
        const CVector<double> dense = dense_mmse_oracle(h_hat, g_hat, sigma, q_d);
        worst = std::max(worst, (fast.weights - dense).norm() / dense.norm());
    }
    return {"mmse_rank1_vs_dense", worst, tolerance, worst <= tolerance};
}

ValidationCheck check_term_assembly(std::uint64_t seed, long trials, double tolerance)
{
    double worst = 0.0;
    for (long t = 0; t < trials; ++t)
    {
        auto rng = make_engine(seed, kStreamAssembly, static_cast<std::uint64_t>(t));
        SystemParams<double> params = random_params(rng, 1 + static_cast<Index>(rng() % 1000));
        params.jam_data_power = uniform(rng, 0.05, 4.0); // assembly is defined for q_d > 0
        const double mag_u = uniform(rng, 0.05, 0.7);
        const double mag_n = uniform(rng, 0.05, 1.0 - mag_u);
        const Complex<double> corr_u = std::polar(std::sqrt(mag_u), uniform(rng, 0.0, 6.28));
        const Complex<double> corr_n = std::polar(std::sqrt(mag_n), uniform(rng, 0.0, 6.28));

        const ClosedFormInputs<double> inp{params,
                                           effective_coefficients(params, corr_u, corr_n),
                                           params.num_antennas};
        const auto terms = appendix_terms_mmse(inp);
        const double assembled =
            terms.desired_signal /
            (terms.gain_uncertainty + terms.jamming + terms.noise / double(inp.num_antennas));
        const double direct = rho_mmse_approx(inp);
        worst = std::max(worst, std::abs(assembled - direct) / direct);
    }
    return {"appendix_term_assembly", worst, tolerance, worst <= tolerance};
}

void check_large_m_moments(std::uint64_t seed, std::vector<ValidationCheck>& out)
{
    const Index m = 2000;
    const SystemParams<double> params = paper_style_params(m, 5.0);
    const auto book = build_codebook<double>(params.pilot_len);
    const CVector<double> used = book.used_sequence();
    const CVector<double> unused = book.unused_sequence();
    const Complex<double> corr(std::sqrt(1.0 / 3.0), 0.0);
    const CVector<double> jam_seq = synthesize_jam_sequence(book, corr, corr);
    const auto coeffs = effective_coefficients(params, corr, corr);

    const long draws = 32;
    Complex<double> mean_hh{}, mean_hg{}, mean_gh{};
    double mean_gg = 0.0;
    for (long t = 0; t < draws; ++t)
    {
        auto rng = make_engine(seed, kStreamMoments, static_cast<std::uint64_t>(t));
        const auto [h, g] = sample_channels(params, rng);
        const CMatrix<double> noise = sample_cgauss_matrix<double>(m, params.pilot_len, 1.0, rng);
        const CMatrix<double> block = pilot_rx(params, h, g, used, jam_seq, noise);
        const CVector<double> h_hat = estimate_h(despread(block, used), params);
        const CVector<double> g_hat = estimate_g(block, used, unused);
        mean_hh += h_hat.dot(h) / double(m);
        mean_hg += h_hat.dot(g_hat) / double(m);
        mean_gh += g_hat.dot(h) / double(m);
        mean_gg += g_hat.squaredNorm() / double(m);
    }
    mean_hh /= double(draws);
    mean_hg /= double(draws);
    mean_gh /= double(draws);
    mean_gg /= double(draws);

    const double target_hh = coeffs.user_gain * params.user_fading;
    const Complex<double> target_hg = std::conj(coeffs.jam_leak) * coeffs.jam_gain * params.jam_fading;
    const double rel_hh = std::abs(mean_hh - target_hh) / target_hh;
    const double rel_hg = std::abs(mean_hg - target_hg) / std::abs(target_hg);
    const double abs_gh = std::abs(mean_gh);
    const double rel_gg = std::abs(mean_gg - coeffs.jam_sound_power) / coeffs.jam_sound_power;

    out.push_back({"moment_user_estimate", rel_hh, 0.05, rel_hh <= 0.05});
    out.push_back({"moment_cross_estimates", rel_hg, 0.05, rel_hg <= 0.05});
    const double gh_tol = 5.0 / std::sqrt(double(m));
    out.push_back({"moment_sounding_user", abs_gh, gh_tol, abs_gh <= gh_tol});
    out.push_back({"moment_sounding_energy", rel_gg, 0.05, rel_gg <= 0.05});
}

void check_asymptotic(std::uint64_t seed, std::vector<ValidationCheck>& out)
{
    const Index m_large = 10000000;
    double worst_mmse = 0.0, worst_zf = 0.0;
    for (long t = 0; t < 100; ++t)
    {
        auto rng = make_engine(seed, kStreamAsymptotic, static_cast<std::uint64_t>(t));
        SystemParams<double> params;
        params.num_antennas = m_large;
        params.pilot_len = 2 + static_cast<Index>(rng() % 2);
        params.block_len = params.pilot_len + 100;
        params.user_pilot_power = uniform(rng, 0.8, 1.25);
        params.user_data_power = uniform(rng, 0.8, 1.25);
        params.jam_pilot_power = uniform(rng, 0.8, 1.25);
        params.jam_data_power = uniform(rng, 0.8, 1.25);
        params.user_fading = uniform(rng, 0.8, 1.25);
        params.jam_fading = uniform(rng, 0.8, 1.25);
        const double mag_u = uniform(rng, 0.3, 0.45);
        const double mag_n = uniform(rng, 0.3, 0.45);
        const Complex<double> corr_u = std::polar(std::sqrt(mag_u), uniform(rng, 0.0, 6.28));
        const Complex<double> corr_n = std::polar(std::sqrt(mag_n), uniform(rng, 0.0, 6.28));

        const auto coeffs = effective_coefficients(params, corr_u, corr_n);
        const ClosedFormInputs<double> inp{params, coeffs, m_large};
        const double asy = rho_asymptotic(params, coeffs);
        worst_mmse = std::max(worst_mmse, std::abs(rho_mmse_approx(inp) - asy) / asy);
        worst_zf = std::max(worst_zf, std::abs(rho_zf_approx(inp) - asy) / asy);
    }
    out.push_back({"asymptotic_agreement_mmse", worst_mmse, 1e-3, worst_mmse <= 1e-3});
    out.push_back({"asymptotic_agreement_zf", worst_zf, 1e-3, worst_zf <= 1e-3});
}

void check_sinr_sim_vs_analysis(const ExperimentConfig& cfg, double q_db, Index m,
                                double tol_mmse, double tol_zf, const char* suffix,
                                std::vector<ValidationCheck>& out)
{
    const SystemParams<double> params = paper_style_params(m, q_db);
    const Complex<double> corr(std::sqrt(1.0 / params.pilot_len), 0.0);
    auto coeffs = effective_coefficients(params, corr, corr);
    coeffs.residual_power *= cfg.sigma_scale; // fault-injection hook, 1.0 in normal runs
    const ClosedFormInputs<double> inp{params, coeffs, m};

    McConfig mc = cfg.mc;
    mc.outer_samples = 1;
    for (const FilterKind kind : {FilterKind::MmseType, FilterKind::ZfType})
    {
        const auto bd = sinr_terms_mc(params, kind, corr, corr, mc);
        const double rho_mc = effective_sinr(bd, params.user_data_power, params.jam_data_power);
        const double rho_cf =
            (kind == FilterKind::MmseType) ? rho_mmse_approx(inp) : rho_zf_approx(inp);
        const double gap = std::abs(rho_mc - rho_cf) / rho_cf;
        const double tol = (kind == FilterKind::MmseType) ? tol_mmse : tol_zf;
        out.push_back({std::string("sinr_sim_vs_analysis_") + to_string(kind) + suffix, gap, tol,
                       gap <= tol});
    }
}

// rate_from_closed_form with the fault-injection scaling applied to the
// analytic residual power
RateEstimate<double> scaled_closed_form_rate(const SystemParams<double>& params, FilterKind kind,
                                             Index outer, std::uint64_t seed, double sigma_scale)
{
    const auto book = build_codebook<double>(params.pilot_len);
    const CVector<double> used = book.used_sequence();
    const CVector<double> unused = book.unused_sequence();
    std::vector<double> sinrs(static_cast<std::size_t>(outer));
    for (Index k = 0; k < outer; ++k)
    {
        auto rng = make_engine(seed, streams::jam_sequence, static_cast<std::uint64_t>(k));
        const CVector<double> jam_seq = sample_jamming_sequence<double>(params.pilot_len, rng);
        auto coeffs = effective_coefficients(params, used.dot(jam_seq), unused.dot(jam_seq));
        coeffs.residual_power *= sigma_scale;
        const ClosedFormInputs<double> inp{params, coeffs, params.num_antennas};
        sinrs[static_cast<std::size_t>(k)] =
            (kind == FilterKind::MmseType) ? rho_mmse_approx(inp) : rho_zf_approx(inp);
    }
    return rate_from_sinrs(params, sinrs);
}

void check_rate_sim_vs_analysis(const ExperimentConfig& cfg, std::vector<ValidationCheck>& out)
{
    const SystemParams<double> params = paper_style_params(100, 5.0);
    McConfig mc = cfg.mc;
    mc.outer_samples = std::min<Index>(mc.outer_samples, 40);

    for (const FilterKind kind : {FilterKind::MmseType, FilterKind::ZfType})
    {
        const auto sim = achievable_rate(params, kind, mc, cfg.threads);
        const auto anal = scaled_closed_form_rate(params, kind, mc.outer_samples, mc.master_seed,
                                                  cfg.sigma_scale);
        const double gap = std::abs(sim.rate - anal.rate) / anal.rate;
        out.push_back(
            {std::string("rate_sim_vs_analysis_") + to_string(kind), gap, 0.06, gap <= 0.06});
    }
}

} // namespace

bool ValidationReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.pass; });
}

ValidationReport run_validation(const ExperimentConfig& cfg)
{
    cfg.validate();
    const std::uint64_t seed = cfg.mc.master_seed;

    ValidationReport report;
    report.checks.push_back(check_codebook_gram(1e-12));
    report.checks.push_back(check_reconstruction(seed, 200, 1e-12));
    report.checks.push_back(check_zf_orthogonality(seed, 600, 1e-10));
    report.checks.push_back(check_rank1_vs_dense(seed, 300, 1e-8));
    report.checks.push_back(check_term_assembly(seed, 500, 1e-12));
    check_large_m_moments(seed, report.checks);
    check_asymptotic(seed, report.checks);
    check_sinr_sim_vs_analysis(cfg, 5.0, 200, 0.12, 0.12, "", report.checks);
    check_sinr_sim_vs_analysis(cfg, 20.0, 100, 0.10, 0.15, "_strong_jam", report.checks);
    check_rate_sim_vs_analysis(cfg, report.checks);
    return report;
}

void write_report(const ValidationReport& report, std::ostream& out)
{
    long passed = 0;
    for (const ValidationCheck& check : report.checks)
    {
        char line[160];
        std::snprintf(line, sizeof(line), "  [%s] %-40s measured=%-12.4g tol=%-10.4g\n",
                      check.pass ? "PASS" : "FAIL", check.name.c_str(), check.measured,
                      check.tolerance);
        out << line;
        if (check.pass)
            ++passed;
    }
    out << "RESULT: " << (report.all_pass() ? "PASS" : "FAIL") << " (" << passed << "/"
        << report.checks.size() << " checks)\n";
}

} // namespace jamrx
