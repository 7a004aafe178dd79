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

#ifndef fr3chan_types_H
#define fr3chan_types_H

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fr3chan
{

// ---------------------------------------------------------------- errors

struct DomainError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct MissingData : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct DegenerateFit : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Unattainable : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- taxonomy

enum class Scenario : std::uint8_t
{
    UMi,
    UMa,
    SMa
};

enum class Band : std::uint8_t
{
    B7,
    B8,
    B15
};

enum class Visibility : std::uint8_t
{
    LOS,
    NLOS
};

inline constexpr std::array<Scenario, 3> all_scenarios = {Scenario::UMi, Scenario::UMa, Scenario::SMa};
inline constexpr std::array<Band, 3> all_bands = {Band::B7, Band::B8, Band::B15};
inline constexpr std::array<Visibility, 2> all_visibilities = {Visibility::LOS, Visibility::NLOS};

/// Exact sounding center frequency for a band label, in Hz.
constexpr double band_center_hz(Band b)
{
    switch (b)
    {
    case Band::B7:
        return 6.9e9;
    case Band::B8:
        return 8.3e9;
    case Band::B15:
        return 14.5e9;
    }
    return 0.0;
}

// Canonical serialized names are uppercase; parsing is case-insensitive.
constexpr std::string_view to_string(Scenario s)
{
    switch (s)
    {
    case Scenario::UMi:
        return "UMI";
    case Scenario::UMa:
        return "UMA";
    case Scenario::SMa:
        return "SMA";
    }
    return "?";
}

constexpr std::string_view to_string(Band b)
{
    switch (b)
    {
    case Band::B7:
        return "B7";
    case Band::B8:
        return "B8";
    case Band::B15:
        return "B15";
    }
    return "?";
}

constexpr std::string_view to_string(Visibility v)
{
    return v == Visibility::LOS ? "LOS" : "NLOS";
}

namespace detail
{
inline std::string upper(std::string_view s)
{
    std::string out(s);
    for (char &c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}
} // namespace detail

inline Scenario scenario_from_string(std::string_view s)
{
    const std::string u = detail::upper(s);
    if (u == "UMI")
        return Scenario::UMi;
    if (u == "UMA")
        return Scenario::UMa;
    if (u == "SMA")
        return Scenario::SMa;
    throw ParseError("unknown scenario: " + std::string(s));
}

inline Band band_from_string(std::string_view s)
{
    const std::string u = detail::upper(s);
    if (u == "B7" || u == "7")
        return Band::B7;
    if (u == "B8" || u == "8")
        return Band::B8;
    if (u == "B15" || u == "15")
        return Band::B15;
    throw ParseError("unknown band: " + std::string(s));
}

inline Visibility visibility_from_string(std::string_view s)
{
    const std::string u = detail::upper(s);
    if (u == "LOS")
        return Visibility::LOS;
    if (u == "NLOS")
        return Visibility::NLOS;
    throw ParseError("unknown visibility: " + std::string(s));
}

/// One measured cell of the parameter study: (scenario, band, visibility).
struct LinkClass
{
    Scenario scenario;
    Band band;
    Visibility visibility;

    friend constexpr bool operator==(const LinkClass &, const LinkClass &) = default;

    /// Dense index in [0, 18), scenario-major.
    constexpr int index() const
    {
        return static_cast<int>(scenario) * 6 + static_cast<int>(band) * 2 + static_cast<int>(visibility);
    }

    std::string name() const
    {
        std::string out(to_string(scenario));
        out += '-';
        out += to_string(band);
        out += '-';
        out += to_string(visibility);
        return out;
    }
};

/// Local planar coordinates in meters.
struct Vec2
{
    double x_m = 0.0;
    double y_m = 0.0;

    friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline double distance(const Vec2 &a, const Vec2 &b)
{
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

// ------------------------------------------------------- parameter types

/// One-slope log-distance path loss model about a 100 m reference distance.
struct PathLossParams
{
    double pl0_db = 0.0;    ///< intercept at d0
    double d0_m = 100.0;    ///< reference distance, 100 m throughout the dataset
    double ple = 0.0;       ///< path loss exponent
    double sigma_s_db = 0.0; ///< shadow fading standard deviation

    friend constexpr bool operator==(const PathLossParams &, const PathLossParams &) = default;
};

/// Mean / standard deviation of log10 of a positive quantity.
/// Base units are fixed per field: DS in seconds, ASA/ZSA in degrees.
struct LogNormalStat
{
    double mu_log10 = 0.0;
    double sigma_log10 = 0.0;

    friend constexpr bool operator==(const LogNormalStat &, const LogNormalStat &) = default;
};

/// Printed coherence bandwidth pair at frequency correlation 0.5 / 0.9.
struct CoherencePair
{
    double rho05_mhz = 0.0;
    double rho09_mhz = 0.0;

    friend constexpr bool operator==(const CoherencePair &, const CoherencePair &) = default;
};

/// Axis order of the large-scale parameter vector and its correlation matrix.
enum class LspAxis : int
{
    SF = 0,
    DS = 1,
    ASA = 2,
    ZSA = 3
};

inline constexpr std::array<std::string_view, 4> lsp_axis_names = {"SF", "DS", "ASA", "ZSA"};

/// 4x4 symmetric cross-correlation matrix over (SF, DS, ASA, ZSA).
/// Axes without data are masked; masked entries read as NaN and must not
/// be used in generation.
struct CrossCorrMatrix
{
    std::array<std::array<double, 4>, 4> m{};
    std::array<bool, 4> axis_present{false, false, false, false};

    static CrossCorrMatrix identity(std::array<bool, 4> present = {true, true, true, true})
    {
        CrossCorrMatrix c;
        c.axis_present = present;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                c.m[i][j] = (i == j) ? 1.0 : 0.0;
        c.mask_absent();
        return c;
    }

    double operator()(LspAxis a, LspAxis b) const
    {
        return m[static_cast<int>(a)][static_cast<int>(b)];
    }

    void set(LspAxis a, LspAxis b, double r)
    {
        m[static_cast<int>(a)][static_cast<int>(b)] = r;
        m[static_cast<int>(b)][static_cast<int>(a)] = r;
    }

    bool present(LspAxis a) const
    {
        return axis_present[static_cast<int>(a)];
    }

    /// Overwrites entries touching absent axes with NaN.
    void mask_absent()
    {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!axis_present[i] || !axis_present[j])
                    m[i][j] = std::numeric_limits<double>::quiet_NaN();
    }

    int n_active() const
    {
        int n = 0;
        for (bool p : axis_present)
            n += p ? 1 : 0;
        return n;
    }

    friend bool operator==(const CrossCorrMatrix &a, const CrossCorrMatrix &b)
    {
        if (a.axis_present != b.axis_present)
            return false;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
            {
                const bool live = a.axis_present[i] && a.axis_present[j];
                if (live && a.m[i][j] != b.m[i][j])
                    return false;
            }
        return true;
    }
};

/// Everything the measured parameter table reports for one link class.
struct LinkClassParams
{
    LinkClass link_class{};
    PathLossParams path_loss{};
    LogNormalStat ds{};
    std::optional<LogNormalStat> asa{}; ///< absent for all B7 classes
    std::optional<LogNormalStat> zsa{}; ///< absent for all B7 classes
    CrossCorrMatrix corr{};
    CoherencePair cb_mhz{};             ///< printed values, used for consistency checks
    double n_points_thousands = 0.0;
    bool suspect = false;               ///< printed value known to be implausible
    std::string prose_note;             ///< conflicting in-text values, where any

    bool has_angular() const
    {
        return asa.has_value() && zsa.has_value();
    }
};

/// Descriptive deployment-scenario features. Informational only.
struct ScenarioMetadata
{
    std::array<double, 2> vegetation_height_m{};
    std::array<double, 2> building_height_m{};
    std::array<double, 2> street_length_m{};
    std::array<double, 2> street_width_m{};
};

} // namespace fr3chan

#endif
