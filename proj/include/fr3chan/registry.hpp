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

#ifndef fr3chan_registry_H
#define fr3chan_registry_H

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "fr3chan/linalg.hpp"
#include "fr3chan/pathloss.hpp"
#include "fr3chan/types.hpp"

namespace fr3chan
{

/// Immutable container for the measured outdoor parameter dataset.
/// All 18 (scenario, band, visibility) combinations are addressable; the
/// three UMa-LOS cells carry no data, and the five B7 cells carry no
/// angular statistics. Safe for concurrent reads once constructed.
class Registry
{
  public:
    /// Parameter set for one link class, or nullptr when the cell is empty.
    const LinkClassParams *find(LinkClass lc) const
    {
        const auto &slot = cells_[static_cast<std::size_t>(lc.index())];
        return slot.has_value() ? &*slot : nullptr;
    }

    const LinkClassParams &at(LinkClass lc) const
    {
        const LinkClassParams *p = find(lc);
        if (!p)
            throw MissingData("no measured data for " + lc.name());
        return *p;
    }

    std::vector<LinkClass> populated() const
    {
        std::vector<LinkClass> out;
        for (Scenario sc : all_scenarios)
            for (Band b : all_bands)
                for (Visibility v : all_visibilities)
                    if (find({sc, b, v}))
                        out.push_back({sc, b, v});
        return out;
    }

    const ScenarioMetadata &metadata(Scenario sc) const
    {
        return metadata_[static_cast<std::size_t>(sc)];
    }

    void put(const LinkClassParams &p)
    {
        cells_[static_cast<std::size_t>(p.link_class.index())] = p;
    }

    void put_metadata(Scenario sc, const ScenarioMetadata &md)
    {
        metadata_[static_cast<std::size_t>(sc)] = md;
    }

  private:
    std::array<std::optional<LinkClassParams>, 18> cells_{};
    std::array<ScenarioMetadata, 3> metadata_{};
};

namespace detail
{

struct CellRow
{
    Scenario sc;
    Band band;
    Visibility vis;
    double pl0, ple, sig_s;
    double ds_mu, ds_sig;
    double cb05, cb09;
    double asa_mu, asa_sig; // NaN when unavailable
    double zsa_mu, zsa_sig;
    double r_asa_ds, r_asa_sf, r_ds_sf, r_zsa_sf, r_zsa_ds, r_zsa_asa;
    double npts;
    bool suspect;
    const char *note;
};

constexpr double NA = std::numeric_limits<double>::quiet_NaN();

// Measured outdoor channel parameters, one row per populated cell.
// Columns: PL0  PLE  sigS | DSmu DSsig | Cb05 Cb09 | ASAmu ASAsig | ZSAmu
// ZSAsig | r(ASA,DS) r(ASA,SF) r(DS,SF) r(ZSA,SF) r(ZSA,DS) r(ZSA,ASA) | kpts
inline const std::array<CellRow, 15> &cell_rows()
{
    using S = Scenario;
    using B = Band;
    using V = Visibility;
    static const std::array<CellRow, 15> rows = {{
        // 6.9 GHz (no angular data at this band)
        {S::UMi, B::B7, V::LOS, 84.6, 2.1, 2.4, -7.61, 0.44, 8.1, 0.8, NA, NA, NA, NA, NA, NA, -0.57, NA, NA, NA, 1.0, false,
         "in-text fit quotes PL0 84.0"},
        {S::UMi, B::B7, V::NLOS, 104.4, 4.3, 7.1, -6.77, 0.70, 1.2, 0.1, NA, NA, NA, NA, NA, NA, 0.15, NA, NA, NA, 4.6, false,
         "in-text fit quotes PL0 101.7"},
        {S::UMa, B::B7, V::NLOS, 103.0, 6.8, 6.5, -6.77, 0.38, 1.2, 0.1, NA, NA, NA, NA, NA, NA, 0.10, NA, NA, NA, 6.4, false,
         nullptr},
        {S::SMa, B::B7, V::LOS, 45.9, 1.9, 2.5, -7.75, 0.36, 11.2, 1.1, NA, NA, NA, NA, NA, NA, -0.62, NA, NA, NA, 0.7, false,
         "in-text fit quotes PL0 43.8, PLE 2.0, sigma 2.3"},
        {S::SMa, B::B7, V::NLOS, 99.6, 3.8, 6.0, -7.20, 0.59, 3.2, 0.3, NA, NA, NA, NA, NA, NA, 0.29, NA, NA, NA, 21.2, false,
         "in-text fit quotes PL0 23.5, PLE 2.0, sigma 2.3"},
        // 8.3 GHz
        {S::UMi, B::B8, V::LOS, 86.2, 2.2, 2.8, -7.65, 0.44, 8.9, 0.9, 1.62, 0.05, 1.30, 0.02, 0.19, -0.12, 0.08, 0.09, -0.15,
         0.40, 1.0, false, "in-text fit quotes PL0 85.2, PLE 2.3"},
        {S::UMi, B::B8, V::NLOS, 108.0, 4.6, 7.3, -6.63, 0.63, 0.9, 0.1, 1.57, 0.24, 1.26, 0.09, 0.39, 0.32, 0.04, 0.49, 0.04,
         0.49, 5.7, false, "in-text fit quotes PL0 106.9"},
        {S::UMa, B::B8, V::NLOS, 108.6, 7.3, 5.6, -6.81, 0.41, 1.3, 0.1, 1.71, 0.18, 1.32, 0.06, -0.38, 0.27, -0.18, 0.67,
         -0.66, 0.55, 6.8, false, nullptr},
        {S::SMa, B::B8, V::LOS, 40.1, 2.3, 2.9, -7.67, 0.36, 9.4, 0.9, 1.75, 0.45, 1.31, 0.02, 0.61, -0.30, -0.45, -0.29, 0.12,
         0.16, 0.8, false, "in-text fit quotes PL0 43.4, PLE 2.1, sigma 2.5"},
        {S::SMa, B::B8, V::NLOS, 104.2, 3.9, 7.4, -7.18, 0.58, 3.0, 0.3, 1.69, 0.51, 1.32, 0.09, 0.50, 0.25, 0.13, 0.47, -0.06,
         0.36, 22.5, false, "in-text fit quotes PL0 26.3, PLE 2.1, sigma 2.5"},
        // 14.5 GHz
        {S::UMi, B::B15, V::LOS, 90.2, 2.5, 3.3, -7.65, 0.44, 8.9, 0.9, 1.29, 0.15, 0.91, 0.07, 0.79, 0.19, 0.06, -0.38, -0.22,
         -0.09, 1.5, false, "in-text fit quotes PL0 89.9"},
        {S::UMi, B::B15, V::NLOS, 116.6, 4.3, 7.3, -7.04, 0.79, 2.2, 0.2, 1.34, 0.37, 0.95, 0.18, 0.46, 0.23, 0.17, -0.14, 0.20,
         0.22, 7.6, false, "in-text fit quotes PL0 115.8"},
        {S::UMa, B::B15, V::NLOS, 115.6, 6.5, 6.6, -7.03, 0.50, 2.1, 0.2, 1.44, 0.30, 0.96, 0.22, 0.49, 0.13, 0.06, 0.48, -0.10,
         0.29, 6.7, false, nullptr},
        {S::SMa, B::B15, V::LOS, 50.8, 2.0, 2.9, -7.94, 0.45, 17.4, 1.7, 1.07, 0.74, 1.04, 0.08, 0.80, -0.66, -0.27, 0.08, 0.15,
         0.09, 1.2, false, "in-text fit quotes PL0 53.4, PLE 1.9, sigma 2.5"},
        {S::SMa, B::B15, V::NLOS, 45.7, 3.4, 6.7, -7.46, 0.73, 5.8, 0.6, 1.51, 0.34, 1.03, 0.19, 0.77, 0.21, 0.17, -0.03, -0.09,
         0.06, 24.7, true, "intercept far below sibling NLOS cells (99.6 / 104.2); printed value kept"},
    }};
    return rows;
}

inline LinkClassParams params_from_row(const CellRow &r)
{
    LinkClassParams p;
    p.link_class = {r.sc, r.band, r.vis};
    p.path_loss = {r.pl0, 100.0, r.ple, r.sig_s};
    p.ds = {r.ds_mu, r.ds_sig};
    p.cb_mhz = {r.cb05, r.cb09};
    p.n_points_thousands = r.npts;
    p.suspect = r.suspect;
    p.prose_note = r.note ? r.note : "";

    const bool angular = !std::isnan(r.asa_mu);
    if (angular)
    {
        p.asa = LogNormalStat{r.asa_mu, r.asa_sig};
        p.zsa = LogNormalStat{r.zsa_mu, r.zsa_sig};
    }

    CrossCorrMatrix c = CrossCorrMatrix::identity({true, true, angular, angular});
    c.set(LspAxis::DS, LspAxis::SF, r.r_ds_sf);
    if (angular)
    {
        c.set(LspAxis::ASA, LspAxis::DS, r.r_asa_ds);
        c.set(LspAxis::ASA, LspAxis::SF, r.r_asa_sf);
        c.set(LspAxis::ZSA, LspAxis::SF, r.r_zsa_sf);
        c.set(LspAxis::ZSA, LspAxis::DS, r.r_zsa_ds);
        c.set(LspAxis::ZSA, LspAxis::ASA, r.r_zsa_asa);
    }
    c.mask_absent();
    p.corr = c;
    return p;
}

} // namespace detail

/// The complete embedded dataset, transcribed verbatim from the printed
/// parameter table (including suspect cells, which are flagged rather than
/// corrected). The table takes precedence over conflicting in-text values;
/// those are preserved in prose_note.
inline Registry load_embedded()
{
    Registry reg;
    for (const auto &row : detail::cell_rows())
        reg.put(detail::params_from_row(row));

    reg.put_metadata(Scenario::UMi, {{2, 20}, {2, 200}, {550, 550}, {4, 10}});
    reg.put_metadata(Scenario::UMa, {{1, 22}, {2, 90}, {100, 400}, {4, 10}});
    reg.put_metadata(Scenario::SMa, {{1, 25}, {2, 35}, {200, 700}, {4, 10}});
    return reg;
}

/// lookup(registry, link_class): parameter set for one cell, or MissingData.
inline const LinkClassParams &lookup(const Registry &reg, LinkClass lc)
{
    return reg.at(lc);
}

// ------------------------------------------------------------ validation

struct Finding
{
    enum class Severity
    {
        info,
        warning
    };
    Severity severity = Severity::info;
    std::string check;
    std::optional<LinkClass> link_class;
    std::string message;
};

namespace detail
{
inline std::string fmt2(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}
} // namespace detail

/// Pure, deterministic internal-consistency sweep over a registry:
///  - printed coherence bandwidths against 1/(K * 10^mu_DS) at K = 5 and 50,
///  - LOS intercepts against free space at the reference distance,
///  - correlation matrix symmetry / range / minimum eigenvalue,
///  - suspect-cell flags.
/// Findings are diagnostics, never failures.
inline std::vector<Finding> validate(const Registry &reg)
{
    std::vector<Finding> out;
    using Severity = Finding::Severity;

    for (LinkClass lc : reg.populated())
    {
        const LinkClassParams &p = reg.at(lc);

        // (a) coherence bandwidth vs delay-spread median
        const double tau = std::pow(10.0, p.ds.mu_log10);
        const double cb05 = 1.0 / (5.0 * tau) / 1e6;
        const double cb09 = 1.0 / (50.0 * tau) / 1e6;
        const double d05 = std::fabs(cb05 - p.cb_mhz.rho05_mhz);
        const double d09 = std::fabs(cb09 - p.cb_mhz.rho09_mhz);
        const bool cb_ok = d05 <= 0.05 && d09 <= 0.05;
        out.push_back({cb_ok ? Severity::info : Severity::warning, "coherence_bw_consistency", lc,
                       "computed " + detail::fmt2(cb05) + " / " + detail::fmt2(cb09) + " MHz vs printed " +
                           detail::fmt2(p.cb_mhz.rho05_mhz) + " / " + detail::fmt2(p.cb_mhz.rho09_mhz) +
                           (cb_ok ? " (consistent)" : " (inconsistent)")});

        // (b) LOS intercept vs free space at d0
        if (lc.visibility == Visibility::LOS)
        {
            const double fs = fspl(p.path_loss.d0_m, band_center_hz(lc.band));
            const double diff = p.path_loss.pl0_db - fs;
            std::string flag;
            if (diff < -6.0)
                flag = " (far below free space)";
            else if (diff > 6.0)
                flag = " (far above free space)";
            out.push_back({Severity::info, "los_intercept_vs_fspl", lc,
                           "PL0 " + detail::fmt2(p.path_loss.pl0_db) + " dB vs FSPL(d0) " + detail::fmt2(fs) + " dB" + flag});
        }

        // (c) correlation matrix sanity
        bool sane = true;
        Mat4 active{};
        int n = 0;
        std::array<int, 4> map{};
        for (int i = 0; i < 4; ++i)
            if (p.corr.axis_present[i])
                map[n++] = i;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
            {
                const double r = p.corr.m[map[i]][map[j]];
                active[i][j] = r;
                if (std::fabs(r) > 1.0 || r != p.corr.m[map[j]][map[i]])
                    sane = false;
                if (i == j && r != 1.0)
                    sane = false;
            }
        const double min_eig = min_eigenvalue(active, n);
        out.push_back({sane && min_eig >= -1e-12 ? Severity::info : Severity::warning, "corr_matrix", lc,
                       std::string(sane ? "symmetric, unit diagonal, entries in [-1, 1]" : "structural violation") +
                           "; min eigenvalue " + detail::fmt2(min_eig)});

        // (d) suspect printed values
        if (p.suspect)
            out.push_back({Severity::warning, "suspect_cell", lc, "PL0 " + detail::fmt2(p.path_loss.pl0_db) + " dB: " + p.prose_note});
    }
    return out;
}

} // namespace fr3chan

#endif
