// SPDX-License-Identifier: Apache-2.0
//
// fr3chan - large-scale channel statistics toolkit for FR3 outdoor scenarios
// Copyright (C) 2026 fr3chan contributors
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

#ifndef fr3chan_lsp_H
#define fr3chan_lsp_H

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "fr3chan/linalg.hpp"
#include "fr3chan/random.hpp"
#include "fr3chan/types.hpp"

namespace fr3chan
{

/// One correlated draw of the large-scale parameters for a link.
struct LspVector
{
    double sf_db = 0.0;
    double ds_log10 = 0.0;
    std::optional<double> asa_log10;
    std::optional<double> zsa_log10;
};

/// Exponential decorrelation of shadow fading along a route.
struct SpatialModel
{
    double decorrelation_distance_m = 50.0;
};

struct LspOptions
{
    bool require_angular = false;            ///< MissingData when angular stats absent
    bool emulate_measurement_limits = false; ///< caps log10 ZSA at the sounder elevation limit
};

/// Azimuth spreads wrap at 180 degrees; generated log10 ASA is capped here.
inline constexpr double asa_log10_cap = 2.2552725051033058;

/// Largest log10 ZSA the sounder's +-23 degree elevation sweep can observe.
inline constexpr double zsa_log10_measurement_cap = 1.37;

/// Projects a correlation matrix onto the nearest positive semidefinite
/// correlation matrix (eigenvalue clipping + diagonal renormalization) over
/// its active axes. Already-PSD input (min eigenvalue >= -1e-12) is returned
/// unchanged, which also makes the operation idempotent.
inline CrossCorrMatrix nearest_psd(const CrossCorrMatrix &c)
{
    std::array<int, 4> map{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (c.axis_present[i])
            map[n++] = i;

    Mat4 a{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = c.m[map[i]][map[j]];

    const Mat4 r = psd_project_unit_diag(a, n);
    CrossCorrMatrix out = c;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.m[map[i]][map[j]] = r[i][j];
    return out;
}

namespace detail
{

/// Mean shift factor of a standard normal censored from above at b:
/// E[min(Z, b)] = -g1(b).
inline double censor_g1(double b)
{
    const double sf = 1.0 - normal_cdf(b);
    return normal_pdf(b) - b * sf;
}

/// Variance factor of a standard normal censored from above at b.
inline double censor_var(double b)
{
    const double sf = 1.0 - normal_cdf(b);
    const double ex2 = normal_cdf(b) - b * normal_pdf(b) + b * b * sf;
    const double g1 = censor_g1(b);
    return ex2 - g1 * g1;
}

/// Moments of N(mu, sigma^2) censored from above at cap.
inline std::pair<double, double> censored_normal_moments(double mu, double sigma, double cap)
{
    const double b = (cap - mu) / sigma;
    return {mu - sigma * censor_g1(b), sigma * std::sqrt(censor_var(b))};
}

/// Latent (mu, sigma) whose censored-at-cap moments equal (m, s). The
/// measured statistics of a wrap- or sweep-limited quantity are moments of
/// censored data, so the generator draws from this latent law and censors;
/// without the adjustment the cap would be applied twice. Returns (m, s)
/// unchanged when the cap is beyond 8 sigma.
inline std::pair<double, double> censored_normal_latent(double m, double s, double cap)
{
    const double r = (cap - m) / s;
    if (r > 8.0)
        return {m, s};

    auto f = [r](double b) { return r * std::sqrt(censor_var(b)) - censor_g1(b) - b; };
    double lo = -6.0, hi = 12.0;
    if (!(f(lo) > 0.0 && f(hi) < 0.0))
        return {m, s};
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    const double sigma = s / std::sqrt(censor_var(b));
    return {m + sigma * censor_g1(b), sigma};
}

/// Precomputed scaling from standard normals to an LspVector.
struct LspScaling
{
    int n_axes = 2; ///< 2 (SF, DS) or 4 (all)
    Mat4 factor{};  ///< lower-triangular factor of the repaired correlation
    double sigma_sf = 0.0;
    double ds_mu = 0.0, ds_sigma = 0.0;
    bool angular = false;
    double asa_mu = 0.0, asa_sigma = 0.0; ///< latent, censoring-compensated
    double zsa_mu = 0.0, zsa_sigma = 0.0;
    bool cap_zsa = false;
};

inline LspScaling make_scaling(const LinkClassParams &params, const LspOptions &opt)
{
    if (opt.require_angular && !params.has_angular())
        throw MissingData("angular statistics unavailable for " + params.link_class.name());

    LspScaling s;
    s.angular = params.has_angular();
    s.n_axes = s.angular ? 4 : 2;
    s.sigma_sf = params.path_loss.sigma_s_db;
    s.ds_mu = params.ds.mu_log10;
    s.ds_sigma = params.ds.sigma_log10;

    const CrossCorrMatrix repaired = nearest_psd(params.corr);
    Mat4 a{};
    std::array<int, 4> map{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (repaired.axis_present[i])
            map[n++] = i;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = repaired.m[map[i]][map[j]];
    s.factor = cholesky_semidef(a, n);

    if (s.angular)
    {
        const auto [amu, asig] = censored_normal_latent(params.asa->mu_log10, params.asa->sigma_log10, asa_log10_cap);
        s.asa_mu = amu;
        s.asa_sigma = asig;
        s.zsa_mu = params.zsa->mu_log10;
        s.zsa_sigma = params.zsa->sigma_log10;
        s.cap_zsa = opt.emulate_measurement_limits;
    }
    return s;
}

inline LspVector lsp_from_normals(const LspScaling &s, const std::array<double, 4> &z)
{
    std::array<double, 4> x{};
    for (int i = 0; i < s.n_axes; ++i)
    {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j)
            acc += s.factor[i][j] * z[j];
        x[i] = acc;
    }

    LspVector v;
    v.sf_db = s.sigma_sf * x[0];
    v.ds_log10 = s.ds_mu + s.ds_sigma * x[1];
    if (s.angular)
    {
        v.asa_log10 = std::min(s.asa_mu + s.asa_sigma * x[2], asa_log10_cap);
        double zsa = s.zsa_mu + s.zsa_sigma * x[3];
        if (s.cap_zsa)
            zsa = std::min(zsa, zsa_log10_measurement_cap);
        v.zsa_log10 = zsa;
    }
    return v;
}

} // namespace detail

/// n independent correlated LSP draws. Draw i depends only on (seed, i), so
/// generation may be partitioned across threads by index without changing
/// results.
inline std::vector<LspVector> draw_lsp(const LinkClassParams &params, std::size_t n, std::uint64_t seed,
                                       const LspOptions &opt = {})
{
    const detail::LspScaling s = detail::make_scaling(params, opt);
    const RandomStream master(seed);
    std::vector<LspVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        RandomStream sub = master.substream(i);
        std::array<double, 4> z{};
        for (int k = 0; k < s.n_axes; ++k)
            z[k] = sub.normal();
        out.push_back(detail::lsp_from_normals(s, z));
    }
    return out;
}

/// LSP draws along an ordered route. Shadow fading follows a zero-mean
/// Gaussian process with autocorrelation exp(-delta_d / d_corr) in the
/// along-route distance; the remaining parameters are drawn per position
/// and coupled to the local SF value through the factored correlation
/// matrix. A single-position route reproduces draw_lsp with n = 1.
inline std::vector<LspVector> draw_route_lsp(const LinkClassParams &params, std::span<const Vec2> positions,
                                             const SpatialModel &spatial, std::uint64_t seed, const LspOptions &opt = {})
{
    if (positions.empty())
        throw DomainError("draw_route_lsp: route must be non-empty");
    if (spatial.decorrelation_distance_m <= 0.0)
        throw DomainError("draw_route_lsp: decorrelation distance must be positive");

    const detail::LspScaling s = detail::make_scaling(params, opt);
    const RandomStream master(seed);
    std::vector<LspVector> out;
    out.reserve(positions.size());

    double g_prev = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        RandomStream sub = master.substream(i);
        const double w = sub.normal();
        double g = w;
        if (i > 0)
        {
            const double dx = positions[i].x_m - positions[i - 1].x_m;
            const double dy = positions[i].y_m - positions[i - 1].y_m;
            const double a = std::exp(-std::hypot(dx, dy) / spatial.decorrelation_distance_m);
            g = a * g_prev + std::sqrt(1.0 - a * a) * w;
        }
        g_prev = g;

        std::array<double, 4> z{};
        z[0] = g;
        for (int k = 1; k < s.n_axes; ++k)
            z[k] = sub.normal();
        out.push_back(detail::lsp_from_normals(s, z));
    }
    return out;
}

} // namespace fr3chan

#endif
