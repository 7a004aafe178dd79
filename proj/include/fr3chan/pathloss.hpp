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

#ifndef fr3chan_pathloss_H
#define fr3chan_pathloss_H

#include <cmath>

#include "fr3chan/types.hpp"

namespace fr3chan
{

inline constexpr double speed_of_light_mps = 299792458.0;

/// Transmit/receive budget for received-power conversions.
struct LinkBudget
{
    double eirp_dbm = 43.0; ///< sounder maximum EIRP
    double rx_gain_dbi = 0.0;
    double noise_figure_db = 0.0;
    double bandwidth_hz = 400e6;
};

/// Free-space path loss, 20*log10(4*pi*d*f/c).
inline double fspl(double d_m, double f_hz)
{
    if (d_m <= 0.0 || f_hz <= 0.0)
        throw DomainError("fspl: distance and frequency must be positive");
    return 20.0 * std::log10(4.0 * M_PI * d_m * f_hz / speed_of_light_mps);
}

/// One-slope log-distance path loss with an explicit shadow term. Shadow
/// fading is an argument, not a hidden draw; sampling lives in the LSP
/// generator so this stays pure.
inline double path_loss(const PathLossParams &p, double d_m, double shadow_db = 0.0)
{
    if (d_m <= 0.0)
        throw DomainError("path_loss: distance must be positive");
    return p.pl0_db + 10.0 * p.ple * std::log10(d_m / p.d0_m) + shadow_db;
}

/// Distance at which path_loss() reaches max_pl_db; exact inverse.
inline double max_range(const PathLossParams &p, double max_pl_db, double shadow_db = 0.0)
{
    if (p.ple <= 0.0)
        throw DomainError("max_range: path loss exponent must be positive");
    return p.d0_m * std::pow(10.0, (max_pl_db - shadow_db - p.pl0_db) / (10.0 * p.ple));
}

/// Received power in dBm for a given total path loss.
inline double received_power(const LinkBudget &b, double pl_db)
{
    return b.eirp_dbm - pl_db + b.rx_gain_dbi;
}

} // namespace fr3chan

#endif
