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

#ifndef fr3chan_padp_H
#define fr3chan_padp_H

#include <optional>
#include <vector>

#include "fr3chan/types.hpp"

namespace fr3chan
{

/// One resolvable multipath component.
struct Tap
{
    double delay_s = 0.0;      ///< >= 0; first tap is at 0 after normalization
    double power_lin = 1.0;    ///< > 0, arbitrary scale
    double azimuth_deg = 0.0;  ///< in [-180, 180)
    double zenith_deg = 0.0;   ///< in [-90, 90]
};

/// Targets a profile was synthesized against (absent for measured data).
struct PadpTargets
{
    double ds_s = 0.0;
    std::optional<double> asa_deg;
    std::optional<double> zsa_deg;
};

/// Power-angular-delay profile: taps in ascending delay order.
struct Padp
{
    std::vector<Tap> taps;
    std::optional<LinkClass> link_class;
    std::optional<PadpTargets> targets;
};

} // namespace fr3chan

#endif
