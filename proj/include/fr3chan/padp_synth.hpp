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

#ifndef fr3chan_padp_synth_H
#define fr3chan_padp_synth_H

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "fr3chan/estimators.hpp"
#include "fr3chan/padp.hpp"
#include "fr3chan/random.hpp"

namespace fr3chan
{

inline constexpr double synth_max_asa_deg = 180.0;
inline constexpr double synth_max_zsa_deg = 60.0;

namespace detail
{

inline double wrap_deg(double a)
{
    a = std::fmod(a + 180.0, 360.0);
    if (a < 0.0)
        a += 360.0;
    return a - 180.0;
}

/// Bisects a nondecreasing spread curve until it returns `target` within
/// 1e-6 relative. The bracket upper bound is grown geometrically first;
/// nullopt when the curve saturates below the target or fails to converge
/// (finite tap sets cannot realize arbitrarily wide spreads).
template <typename F>
std::optional<double> try_bisect_spread(F achieved, double hi0, double hi_max, double target, double rel_tol)
{
    double lo = 0.0, hi = hi0;
    while (achieved(hi) < target)
    {
        hi *= 2.0;
        if (hi > hi_max)
            return std::nullopt;
    }
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (achieved(mid) < target ? lo : hi) = mid;
        if (hi - lo <= rel_tol * std::max(hi, 1e-30))
            break;
    }
    const double s = 0.5 * (lo + hi);
    if (std::fabs(achieved(s) - target) > 1e-6 * target)
        return std::nullopt;
    return s;
}

/// Splits tap indices into two groups of near-equal total power
/// (largest-first greedy with a single-flip refinement pass).
inline std::vector<int> balanced_signs(const std::vector<double> &powers)
{
    std::vector<std::size_t> order(powers.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return powers[a] > powers[b]; });

    std::vector<int> sign(powers.size(), 1);
    double gap = 0.0; // power(+) - power(-)
    for (std::size_t idx : order)
    {
        sign[idx] = (gap <= 0.0) ? 1 : -1;
        gap += sign[idx] * powers[idx];
    }
    for (std::size_t idx : order)
    {
        const double flipped = gap - 2.0 * sign[idx] * powers[idx];
        if (std::fabs(flipped) < std::fabs(gap))
        {
            sign[idx] = -sign[idx];
            gap = flipped;
        }
    }
    return sign;
}

} // namespace detail

/// Multiplies all delays by target/current. RMS delay spread is
/// 1-homogeneous in delay, so the rescaled profile hits the target to
/// machine precision.
inline Padp rescale_delays(Padp padp, double target_ds_s)
{
    if (padp.taps.size() < 2)
        throw DomainError("rescale_delays: need at least two taps");
    const double current = rms_delay_spread(padp.taps);
    if (current <= 0.0)
        throw DomainError("rescale_delays: current delay spread is zero");
    const double scale = target_ds_s / current;
    for (Tap &t : padp.taps)
        t.delay_s *= scale;
    if (padp.targets)
        padp.targets->ds_s = target_ds_s;
    return padp;
}

/// Synthesizes a tap profile whose estimated RMS delay spread and circular
/// angular spreads equal the targets (delay exactly, angles within 1e-6
/// relative). Delays follow a single-exponential law with log-normal power
/// ripple; powers are floored 25 dB below the peak so that any threshold of
/// 25 dB or more keeps every tap and the realized statistics. Azimuths are a
/// wrapped-Gaussian cluster up to 120 degrees; wider targets use a power-
/// balanced two-direction profile, which stays monotone under bisection up
/// to the 180 degree wrap limit. Zeniths are a truncated Gaussian on
/// [-90, 90]. Absent angular targets produce zero-angle taps.
inline Padp synth_padp(double target_ds_s, std::optional<double> target_asa_deg, std::optional<double> target_zsa_deg,
                       int n_taps, std::uint64_t seed)
{
    if (target_ds_s <= 0.0)
        throw DomainError("synth_padp: delay-spread target must be positive");
    if (n_taps < 2)
        throw DomainError("synth_padp: need at least two taps for a nonzero spread");
    if (target_asa_deg && !(*target_asa_deg > 0.0 && *target_asa_deg <= synth_max_asa_deg))
        throw DomainError("synth_padp: azimuth-spread target must be in (0, 180] degrees");
    if (target_zsa_deg && !(*target_zsa_deg > 0.0 && *target_zsa_deg <= synth_max_zsa_deg))
        throw DomainError("synth_padp: zenith-spread target must be in (0, 60] degrees");

    const RandomStream master(seed);
    RandomStream delay_rng = master.substream(0);
    RandomStream az_rng = master.substream(1);
    RandomStream zen_rng = master.substream(2);

    const std::size_t n = static_cast<std::size_t>(n_taps);
    std::vector<double> delays(n);
    for (double &d : delays)
        d = delay_rng.exponential();
    std::sort(delays.begin(), delays.end());
    const double t0 = delays.front();
    for (double &d : delays)
        d -= t0;

    std::vector<double> powers(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double ripple_db = 3.0 * delay_rng.normal();
        powers[i] = std::exp(-delays[i]) * std::pow(10.0, ripple_db / 10.0);
        peak = std::max(peak, powers[i]);
    }
    // normalize to unit peak before flooring so the window edge is exact
    const double floor = std::pow(10.0, -2.5);
    for (double &p : powers)
        p = std::max(p / peak, floor);

    // Two-direction profile at +-alpha around `center`; with near-balanced
    // group powers its spread sweeps (0, ~250] degrees monotonically, so it
    // serves as the fallback when a finite Gaussian cluster saturates below
    // the target.
    auto two_direction = [&](double center, double target, bool wrap) -> std::vector<double> {
        const std::vector<int> sign = detail::balanced_signs(powers);
        auto place = [&](double alpha) {
            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i)
                a[i] = wrap ? detail::wrap_deg(center + sign[i] * alpha)
                            : std::clamp(center + sign[i] * alpha, -90.0, 90.0);
            return a;
        };
        auto achieved = [&](double alpha) { return angular_spread(place(alpha), powers); };
        const auto alpha = detail::try_bisect_spread(achieved, 89.9999, 89.9999, target, 1e-12);
        if (!alpha)
            throw Unattainable("synth_padp: angular target is unreachable for this tap set");
        return place(*alpha);
    };

    // azimuth
    std::vector<double> az(n, 0.0);
    if (target_asa_deg)
    {
        const double mean_az = az_rng.uniform(-180.0, 180.0);
        std::optional<double> s;
        std::vector<double> unit(n);
        for (double &u : unit)
            u = az_rng.normal();
        if (*target_asa_deg <= 120.0)
        {
            auto achieved = [&](double scale) {
                std::vector<double> a(n);
                for (std::size_t i = 0; i < n; ++i)
                    a[i] = detail::wrap_deg(mean_az + scale * unit[i]);
                return angular_spread(a, powers);
            };
            s = detail::try_bisect_spread(achieved, *target_asa_deg, 2000.0, *target_asa_deg, 1e-9);
        }
        if (s)
            for (std::size_t i = 0; i < n; ++i)
                az[i] = detail::wrap_deg(mean_az + *s * unit[i]);
        else
            az = two_direction(mean_az, *target_asa_deg, true);
    }

    // zenith
    std::vector<double> zen(n, 0.0);
    if (target_zsa_deg)
    {
        std::vector<double> unit(n);
        for (double &u : unit)
            u = zen_rng.normal();
        auto achieved = [&](double s) {
            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i)
                a[i] = std::clamp(s * unit[i], -90.0, 90.0);
            return angular_spread(a, powers);
        };
        const auto s = detail::try_bisect_spread(achieved, *target_zsa_deg, 5000.0, *target_zsa_deg, 1e-9);
        if (s)
            for (std::size_t i = 0; i < n; ++i)
                zen[i] = std::clamp(*s * unit[i], -90.0, 90.0);
        else
            zen = two_direction(0.0, *target_zsa_deg, false);
    }

    Padp padp;
    padp.taps.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        padp.taps[i] = {delays[i], powers[i], az[i], zen[i]};
    padp.targets = PadpTargets{target_ds_s, target_asa_deg, target_zsa_deg};
    return rescale_delays(std::move(padp), target_ds_s);
}

} // namespace fr3chan

#endif
