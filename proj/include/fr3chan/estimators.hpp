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

#ifndef fr3chan_estimators_H
#define fr3chan_estimators_H

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "fr3chan/padp.hpp"
#include "fr3chan/random.hpp"
#include "fr3chan/types.hpp"

namespace fr3chan
{

/// Keeps taps whose power lies within dynamic_range_db of the strongest tap.
/// The strongest tap always survives, so non-empty input stays non-empty.
inline std::vector<Tap> threshold_taps(std::span<const Tap> taps, double dynamic_range_db)
{
    if (dynamic_range_db <= 0.0)
        throw DomainError("threshold_taps: dynamic range must be positive");
    if (taps.empty())
        return {};
    double peak = 0.0;
    for (const Tap &t : taps)
        peak = std::max(peak, t.power_lin);
    const double floor = peak * std::pow(10.0, -dynamic_range_db / 10.0);
    std::vector<Tap> out;
    out.reserve(taps.size());
    for (const Tap &t : taps)
        if (t.power_lin >= floor)
            out.push_back(t);
    return out;
}

/// Power-weighted mean of tap delays.
inline double mean_delay(std::span<const Tap> taps)
{
    if (taps.empty())
        throw DomainError("mean_delay: empty tap list");
    double num = 0.0, den = 0.0;
    for (const Tap &t : taps)
    {
        num += t.delay_s * t.power_lin;
        den += t.power_lin;
    }
    if (den <= 0.0)
        throw DomainError("mean_delay: total power must be positive");
    return num / den;
}

/// RMS delay spread: square root of the power-weighted second central moment
/// of tap delay. Translation-invariant and 1-homogeneous in delay.
inline double rms_delay_spread(std::span<const Tap> taps)
{
    const double tm = mean_delay(taps);
    double num = 0.0, den = 0.0;
    for (const Tap &t : taps)
    {
        const double d = t.delay_s - tm;
        num += d * d * t.power_lin;
        den += t.power_lin;
    }
    return std::sqrt(num / den);
}

/// Coherence bandwidth approximation 1/(K * tau_rms), K = 5 for a frequency
/// correlation of 0.5 and K = 50 for 0.9.
inline double coherence_bw(double tau_rms_s, double rho)
{
    if (tau_rms_s <= 0.0)
        throw DomainError("coherence_bw: delay spread must be positive");
    double k = 0.0;
    if (rho == 0.5)
        k = 5.0;
    else if (rho == 0.9)
        k = 50.0;
    else
        throw DomainError("coherence_bw: rho must be 0.5 or 0.9");
    return 1.0 / (k * tau_rms_s);
}

/// Circular power-weighted angular spread in degrees:
/// sqrt(-2 ln |sum P_i e^{j phi_i} / sum P_i|). |R| is clamped to
/// [1e-12, 1] before the log. Invariant under global rotation and
/// under uniform power scaling.
inline double angular_spread(std::span<const double> angles_deg, std::span<const double> powers)
{
    if (angles_deg.empty() || angles_deg.size() != powers.size())
        throw DomainError("angular_spread: need matching non-empty angle/power series");
    // rotate so the first path sits at 0; |R| is rotation-invariant and a
    // single path then yields |R| = 1 without roundoff
    const double ref = angles_deg[0];
    double re = 0.0, im = 0.0, den = 0.0;
    for (std::size_t i = 0; i < angles_deg.size(); ++i)
    {
        const double phi = (angles_deg[i] - ref) * (M_PI / 180.0);
        re += std::cos(phi) * powers[i];
        im += std::sin(phi) * powers[i];
        den += powers[i];
    }
    if (den <= 0.0)
        throw DomainError("angular_spread: total power must be positive");
    double r = std::sqrt(re * re + im * im) / den;
    r = std::clamp(r, 1e-12, 1.0);
    return std::sqrt(-2.0 * std::log(r)) * (180.0 / M_PI);
}

inline double azimuth_spread(std::span<const Tap> taps)
{
    std::vector<double> a, p;
    a.reserve(taps.size());
    p.reserve(taps.size());
    for (const Tap &t : taps)
    {
        a.push_back(t.azimuth_deg);
        p.push_back(t.power_lin);
    }
    return angular_spread(a, p);
}

inline double zenith_spread(std::span<const Tap> taps)
{
    std::vector<double> a, p;
    a.reserve(taps.size());
    p.reserve(taps.size());
    for (const Tap &t : taps)
    {
        a.push_back(t.zenith_deg);
        p.push_back(t.power_lin);
    }
    return angular_spread(a, p);
}

// ----------------------------------------------------------- regression

struct PathLossSample
{
    double d_m = 0.0;
    double pl_db = 0.0;
};

/// Ordinary least squares of pl_db on 10*log10(d/d0). Slope is the path
/// loss exponent, intercept the loss at d0, and sigma_s_db the population
/// standard deviation of the residuals. Sums are centered so noiseless
/// inputs recover parameters to full double precision.
inline PathLossParams fit_path_loss(std::span<const PathLossSample> samples, double d0_m = 100.0)
{
    if (samples.size() < 2)
        throw DegenerateFit("fit_path_loss: need at least two samples");

    std::vector<double> x(samples.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        if (samples[i].d_m <= 0.0)
            throw DomainError("fit_path_loss: distances must be positive");
        x[i] = 10.0 * std::log10(samples[i].d_m / d0_m);
        mx += x[i];
        my += samples[i].pl_db;
    }
    mx /= static_cast<double>(samples.size());
    my /= static_cast<double>(samples.size());

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (samples[i].pl_db - my);
    }
    if (sxx == 0.0)
        throw DegenerateFit("fit_path_loss: need at least two distinct distances");

    PathLossParams p;
    p.d0_m = d0_m;
    p.ple = sxy / sxx;
    p.pl0_db = my - p.ple * mx;

    double ss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double r = samples[i].pl_db - (p.pl0_db + p.ple * x[i]);
        ss += r * r;
    }
    p.sigma_s_db = std::sqrt(ss / static_cast<double>(samples.size()));
    return p;
}

/// Sample mean and standard deviation (n-1 denominator) of log10(values).
inline LogNormalStat fit_lognormal(std::span<const double> values)
{
    if (values.size() < 2)
        throw DomainError("fit_lognormal: need at least two values");
    double m = 0.0;
    for (double v : values)
    {
        if (v <= 0.0)
            throw DomainError("fit_lognormal: values must be positive");
        m += std::log10(v);
    }
    m /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values)
    {
        const double d = std::log10(v) - m;
        ss += d * d;
    }
    return {m, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

/// Pairs sorted sample values with standard-normal quantiles at plotting
/// positions (i - 0.5)/n. Straight-line output indicates normality.
inline std::vector<std::pair<double, double>> probability_plot(std::span<const double> values)
{
    if (values.size() < 2)
        throw DomainError("probability_plot: need at least two values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        out[i] = {normal_quantile((static_cast<double>(i) + 0.5) / n), sorted[i]};
    return out;
}

/// Sample Pearson correlation coefficient.
inline double pearson_corr(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw DegenerateInput("pearson_corr: need two equal-length series of n >= 2");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInput("pearson_corr: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

/// Pairwise Pearson matrix over the LSP axes; pass empty spans for axes
/// without data. Result is symmetric with unit diagonal by construction.
inline CrossCorrMatrix corr_matrix(std::span<const double> sf, std::span<const double> ds_log10,
                                   std::span<const double> asa_log10 = {}, std::span<const double> zsa_log10 = {})
{
    const std::array<std::span<const double>, 4> series = {sf, ds_log10, asa_log10, zsa_log10};
    CrossCorrMatrix c = CrossCorrMatrix::identity(
        {!sf.empty(), !ds_log10.empty(), !asa_log10.empty(), !zsa_log10.empty()});
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (c.axis_present[i] && c.axis_present[j])
                c.set(static_cast<LspAxis>(i), static_cast<LspAxis>(j), pearson_corr(series[i], series[j]));
    c.mask_absent();
    return c;
}

} // namespace fr3chan

#endif
