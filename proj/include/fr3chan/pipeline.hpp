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

#ifndef fr3chan_pipeline_H
#define fr3chan_pipeline_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fr3chan/estimators.hpp"
#include "fr3chan/lsp.hpp"
#include "fr3chan/padp_synth.hpp"
#include "fr3chan/pathloss.hpp"
#include "fr3chan/registry.hpp"

namespace fr3chan
{

/// One geo-tagged link observation; the unit of the estimation pipeline.
struct MeasurementRecord
{
    Vec2 rx_xy_m{};
    Vec2 tx_xy_m{};
    double tx_height_m = 0.0;
    Band band = Band::B7;
    Visibility visibility = Visibility::LOS;
    double pl_db = 0.0;
    std::optional<Padp> taps;

    /// 3-D separation when a transmitter height is present, 2-D otherwise.
    double link_distance_m() const
    {
        const double h = distance(rx_xy_m, tx_xy_m);
        return std::sqrt(h * h + tx_height_m * tx_height_m);
    }
};

/// Square-bin index of an RX position.
struct BinKey
{
    long long ix = 0;
    long long iy = 0;

    static BinKey of(Vec2 rx, double bin_m)
    {
        return {static_cast<long long>(std::floor(rx.x_m / bin_m)), static_cast<long long>(std::floor(rx.y_m / bin_m))};
    }

    friend constexpr bool operator==(const BinKey &, const BinKey &) = default;
    friend constexpr auto operator<=>(const BinKey &, const BinKey &) = default;
};

/// Groups records into bin_m-sized square bins and keeps, per bin, the
/// record with the median path loss (lower median on even counts). Output
/// is ordered by bin index and does not depend on input order; ties on
/// path loss break on position so the rule stays deterministic.
inline std::vector<MeasurementRecord> bin_records(std::span<const MeasurementRecord> records, double bin_m = 2.0)
{
    if (bin_m <= 0.0)
        throw DomainError("bin_records: bin size must be positive");

    std::map<BinKey, std::vector<const MeasurementRecord *>> bins;
    for (const MeasurementRecord &r : records)
        bins[BinKey::of(r.rx_xy_m, bin_m)].push_back(&r);

    std::vector<MeasurementRecord> out;
    out.reserve(bins.size());
    for (auto &[key, members] : bins)
    {
        std::sort(members.begin(), members.end(), [](const MeasurementRecord *a, const MeasurementRecord *b) {
            return std::tie(a->pl_db, a->rx_xy_m.x_m, a->rx_xy_m.y_m, a->tx_xy_m.x_m, a->tx_xy_m.y_m) <
                   std::tie(b->pl_db, b->rx_xy_m.x_m, b->rx_xy_m.y_m, b->tx_xy_m.x_m, b->tx_xy_m.y_m);
        });
        out.push_back(*members[(members.size() - 1) / 2]);
    }
    return out;
}

// ------------------------------------------------------------ simulation

struct RoutePoint
{
    Vec2 rx{};
    Visibility visibility = Visibility::LOS;
};

struct SimulateOptions
{
    SpatialModel spatial{};
    int n_taps = 50;
    bool emulate_measurement_limits = false;
    bool include_shadow = true;
    bool synthesize_taps = true;
};

/// Simulates one measured record per route point: distance from geometry,
/// correlated LSP draw (shadow fading follows the route autocorrelation),
/// path loss from the drawn SF, and a tap profile realizing the drawn
/// DS/ASA/ZSA. Visibility may vary along the route; scenario and band come
/// from the link class. Point i consumes only substreams derived from
/// (seed, i), merged in index order, so output is reproducible and
/// parallelizable by index.
inline std::vector<MeasurementRecord> simulate_route(Vec2 tx_xy, double tx_height_m, std::span<const RoutePoint> route,
                                                     LinkClass link_class, const Registry &reg,
                                                     const SimulateOptions &opt, std::uint64_t seed)
{
    if (route.empty())
        throw DomainError("simulate_route: route must be non-empty");
    if (opt.spatial.decorrelation_distance_m <= 0.0)
        throw DomainError("simulate_route: decorrelation distance must be positive");

    LspOptions lsp_opt;
    lsp_opt.emulate_measurement_limits = opt.emulate_measurement_limits;

    std::array<std::optional<detail::LspScaling>, 2> scalings;
    auto scaling_for = [&](Visibility v) -> const detail::LspScaling & {
        auto &slot = scalings[static_cast<std::size_t>(v)];
        if (!slot)
            slot = detail::make_scaling(reg.at({link_class.scenario, link_class.band, v}), lsp_opt);
        return *slot;
    };

    const RandomStream master(seed);
    constexpr std::uint64_t tap_stream_base = 0x8000000000000000ULL;

    std::vector<MeasurementRecord> out;
    out.reserve(route.size());
    double g_prev = 0.0;
    for (std::size_t i = 0; i < route.size(); ++i)
    {
        const RoutePoint &pt = route[i];
        const detail::LspScaling &scale = scaling_for(pt.visibility);
        const LinkClassParams &params = reg.at({link_class.scenario, link_class.band, pt.visibility});

        RandomStream sub = master.substream(i);
        const double w = sub.normal();
        double g = w;
        if (i > 0)
        {
            const double a = std::exp(-distance(pt.rx, route[i - 1].rx) / opt.spatial.decorrelation_distance_m);
            g = a * g_prev + std::sqrt(1.0 - a * a) * w;
        }
        g_prev = g;

        std::array<double, 4> z{};
        z[0] = g;
        for (int k = 1; k < scale.n_axes; ++k)
            z[k] = sub.normal();
        const LspVector lsp = detail::lsp_from_normals(scale, z);

        MeasurementRecord rec;
        rec.rx_xy_m = pt.rx;
        rec.tx_xy_m = tx_xy;
        rec.tx_height_m = tx_height_m;
        rec.band = link_class.band;
        rec.visibility = pt.visibility;
        const double d = rec.link_distance_m();
        rec.pl_db = path_loss(params.path_loss, d, opt.include_shadow ? lsp.sf_db : 0.0);

        if (opt.synthesize_taps)
        {
            const double ds = std::pow(10.0, lsp.ds_log10);
            std::optional<double> asa, zsa;
            if (lsp.asa_log10)
                asa = std::min(std::pow(10.0, *lsp.asa_log10), synth_max_asa_deg);
            if (lsp.zsa_log10)
                zsa = std::min(std::pow(10.0, *lsp.zsa_log10), synth_max_zsa_deg);
            Padp padp = synth_padp(ds, asa, zsa, opt.n_taps, master.substream(tap_stream_base + i).seed());
            padp.link_class = {link_class.scenario, link_class.band, pt.visibility};
            rec.taps = std::move(padp);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

/// Synthetic measurement route: n points with log-uniform 3-D link distance
/// in [dmin, dmax] and uniform bearing. Points falling into an occupied
/// 2-meter bin are redrawn so each bin holds one record and the median rule
/// stays out of the recovered statistics.
inline std::vector<RoutePoint> synth_route(std::size_t n, double dmin_m, double dmax_m, double tx_height_m,
                                           Visibility vis, std::uint64_t seed, double bin_m = 2.0)
{
    if (!(dmin_m > 0.0 && dmax_m > dmin_m))
        throw DomainError("synth_route: need 0 < dmin < dmax");
    if (tx_height_m >= dmin_m)
        throw DomainError("synth_route: transmitter height must be below the minimum link distance");

    RandomStream rng = RandomStream(seed).substream(0x726F757465ULL);
    std::map<BinKey, bool> used;
    std::vector<RoutePoint> route;
    route.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec2 pos{};
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt)
        {
            const double d = std::pow(10.0, rng.uniform(std::log10(dmin_m), std::log10(dmax_m)));
            const double r = std::sqrt(d * d - tx_height_m * tx_height_m);
            const double theta = rng.uniform(0.0, 2.0 * M_PI);
            pos = {r * std::cos(theta), r * std::sin(theta)};
            placed = !used[BinKey::of(pos, bin_m)];
        }
        if (!placed)
            throw Unattainable("synth_route: could not place points in distinct bins");
        used[BinKey::of(pos, bin_m)] = true;
        route.push_back({pos, vis});
    }
    return route;
}

// -------------------------------------------------------------- reports

struct ScenarioReport
{
    LinkClass link_class{};
    std::size_t n_bins = 0;
    PathLossParams path_loss_fit{};
    std::optional<LogNormalStat> ds_stat;
    std::optional<LogNormalStat> asa_stat;
    std::optional<LogNormalStat> zsa_stat;
    std::optional<CoherencePair> cb_mhz;
    CrossCorrMatrix corr = CrossCorrMatrix::identity({false, false, false, false});
};

struct ReportOptions
{
    double bin_m = 2.0;
    double dyn_range_db = 30.0;
    double d0_m = 100.0;
};

/// Full estimation chain over measured (or simulated) records: 2-meter
/// binning with median selection, path-loss regression, per-record spread
/// estimation on thresholded taps, log-normal fits, coherence bandwidth
/// from the fitted DS median, and the cross-correlation matrix of
/// (SF residual, log10 DS, log10 ASA, log10 ZSA). Angular statistics are
/// reported only when records carry taps with nonzero angular spread.
inline ScenarioReport extract_report(std::span<const MeasurementRecord> records, Scenario scenario,
                                     const ReportOptions &opt = {})
{
    if (records.empty())
        throw DegenerateFit("extract_report: no records");
    for (const MeasurementRecord &r : records)
        if (r.band != records.front().band || r.visibility != records.front().visibility)
            throw DegenerateInput("extract_report: records mix bands or visibility classes");

    const std::vector<MeasurementRecord> binned = bin_records(records, opt.bin_m);

    ScenarioReport rep;
    rep.link_class = {scenario, binned.front().band, binned.front().visibility};
    rep.n_bins = binned.size();

    std::vector<PathLossSample> samples;
    samples.reserve(binned.size());
    for (const MeasurementRecord &r : binned)
        samples.push_back({r.link_distance_m(), r.pl_db});
    rep.path_loss_fit = fit_path_loss(samples, opt.d0_m);

    // per-record large-scale parameters, aligned across series
    std::vector<double> sf, ds, asa, zsa;
    bool angular = true;
    for (std::size_t i = 0; i < binned.size(); ++i)
    {
        const MeasurementRecord &r = binned[i];
        if (!r.taps)
            continue;
        const std::vector<Tap> kept = threshold_taps(r.taps->taps, opt.dyn_range_db);
        const double ds_i = rms_delay_spread(kept);
        if (ds_i <= 0.0)
            continue;
        const double asa_i = azimuth_spread(kept);
        const double zsa_i = zenith_spread(kept);
        const double trend = rep.path_loss_fit.pl0_db +
                             10.0 * rep.path_loss_fit.ple * std::log10(samples[i].d_m / opt.d0_m);
        sf.push_back(r.pl_db - trend);
        ds.push_back(std::log10(ds_i));
        if (asa_i > 0.0 && zsa_i > 0.0)
        {
            asa.push_back(std::log10(asa_i));
            zsa.push_back(std::log10(zsa_i));
        }
        else
            angular = false;
    }
    angular = angular && asa.size() >= 2 && asa.size() == ds.size();

    if (ds.size() >= 2)
    {
        std::vector<double> ds_lin(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i)
            ds_lin[i] = std::pow(10.0, ds[i]);
        rep.ds_stat = fit_lognormal(ds_lin);
        const double tau = std::pow(10.0, rep.ds_stat->mu_log10);
        rep.cb_mhz = CoherencePair{coherence_bw(tau, 0.5) / 1e6, coherence_bw(tau, 0.9) / 1e6};

        std::vector<double> asa_lin(asa.size()), zsa_lin(zsa.size());
        for (std::size_t i = 0; i < asa.size(); ++i)
        {
            asa_lin[i] = std::pow(10.0, asa[i]);
            zsa_lin[i] = std::pow(10.0, zsa[i]);
        }
        if (angular)
        {
            rep.asa_stat = fit_lognormal(asa_lin);
            rep.zsa_stat = fit_lognormal(zsa_lin);
            rep.corr = corr_matrix(sf, ds, asa, zsa);
        }
        else
            rep.corr = corr_matrix(sf, ds);
    }
    return rep;
}

// ------------------------------------------------------------- roundtrip

struct RoundtripTolerances
{
    double pl0_db = 0.5;
    double ple = 0.05;
    double sigma_s_db = 0.2;
    double ds_mu = 0.03;
    double ds_sigma = 0.03;
    double asa_mu = 0.04;
    double asa_sigma = 0.04;
    double zsa_mu = 0.04;
    double zsa_sigma = 0.04;
    double corr = 0.06;
};

struct DiffRow
{
    std::string param;
    double reference = 0.0;
    double recovered = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct DiffReport
{
    LinkClass link_class{};
    bool data_available = true;
    std::string note;
    std::vector<DiffRow> rows;

    bool all_pass() const
    {
        for (const DiffRow &r : rows)
            if (!r.pass)
                return false;
        return true;
    }
};

struct RoundtripOptions
{
    double dmin_m = 50.0;
    double dmax_m = 1000.0;
    double tx_height_m = 25.0;
    int n_taps = 50;
    double bin_m = 2.0;
    double dyn_range_db = 30.0;
    SpatialModel spatial{};
    bool emulate_measurement_limits = true; ///< ZSA sweep-limit emulation for fidelity
};

/// Generate -> estimate -> compare. Simulates n links on a synthetic
/// log-uniform distance route, runs the full estimation chain, and compares
/// every recovered parameter against the registry cell at the stated
/// tolerances. Failures are rows in the report, not errors; an empty cell
/// yields a vacuous pass with a note.
inline DiffReport roundtrip(LinkClass lc, std::size_t n, std::uint64_t seed, const RoundtripTolerances &tol,
                            const Registry &reg, const RoundtripOptions &opt = {})
{
    DiffReport diff;
    diff.link_class = lc;

    const LinkClassParams *params = reg.find(lc);
    if (!params)
    {
        diff.data_available = false;
        diff.note = "no measured data for this cell; nothing to verify";
        return diff;
    }
    if (params->suspect)
        diff.note = "cell is flagged suspect: " + params->prose_note;

    const std::vector<RoutePoint> route =
        synth_route(n, opt.dmin_m, opt.dmax_m, opt.tx_height_m, lc.visibility, seed, opt.bin_m);

    SimulateOptions sim;
    sim.spatial = opt.spatial;
    sim.n_taps = opt.n_taps;
    sim.emulate_measurement_limits = opt.emulate_measurement_limits;
    const std::vector<MeasurementRecord> records = simulate_route({0.0, 0.0}, opt.tx_height_m, route, lc, reg, sim, seed);

    const ScenarioReport rep = extract_report(records, lc.scenario, {opt.bin_m, opt.dyn_range_db, 100.0});

    auto row = [&](const std::string &name, double ref, double got, double tolerance) {
        diff.rows.push_back({name, ref, got, tolerance, std::fabs(got - ref) <= tolerance});
    };

    row("pl0_db", params->path_loss.pl0_db, rep.path_loss_fit.pl0_db, tol.pl0_db);
    row("ple", params->path_loss.ple, rep.path_loss_fit.ple, tol.ple);
    row("sigma_s_db", params->path_loss.sigma_s_db, rep.path_loss_fit.sigma_s_db, tol.sigma_s_db);

    if (rep.ds_stat)
    {
        row("ds_mu_log10", params->ds.mu_log10, rep.ds_stat->mu_log10, tol.ds_mu);
        row("ds_sigma_log10", params->ds.sigma_log10, rep.ds_stat->sigma_log10, tol.ds_sigma);
        // coherence bandwidth follows the DS median; tolerance propagates accordingly
        const double cb_rel = std::pow(10.0, tol.ds_mu) - 1.0;
        const double ref05 = coherence_bw(std::pow(10.0, params->ds.mu_log10), 0.5) / 1e6;
        const double ref09 = coherence_bw(std::pow(10.0, params->ds.mu_log10), 0.9) / 1e6;
        row("cb_mhz_rho05", ref05, rep.cb_mhz->rho05_mhz, ref05 * cb_rel);
        row("cb_mhz_rho09", ref09, rep.cb_mhz->rho09_mhz, ref09 * cb_rel);
    }
    if (params->asa && rep.asa_stat)
    {
        row("asa_mu_log10", params->asa->mu_log10, rep.asa_stat->mu_log10, tol.asa_mu);
        row("asa_sigma_log10", params->asa->sigma_log10, rep.asa_stat->sigma_log10, tol.asa_sigma);
        row("zsa_mu_log10", params->zsa->mu_log10, rep.zsa_stat->mu_log10, tol.zsa_mu);
        row("zsa_sigma_log10", params->zsa->sigma_log10, rep.zsa_stat->sigma_log10, tol.zsa_sigma);
    }
    static constexpr std::pair<LspAxis, LspAxis> pairs[] = {
        {LspAxis::ASA, LspAxis::DS}, {LspAxis::ASA, LspAxis::SF}, {LspAxis::DS, LspAxis::SF},
        {LspAxis::ZSA, LspAxis::SF}, {LspAxis::ZSA, LspAxis::DS}, {LspAxis::ZSA, LspAxis::ASA}};
    for (const auto &[a, b] : pairs)
        if (params->corr.present(a) && params->corr.present(b) && rep.corr.present(a) && rep.corr.present(b))
            row("corr_" + std::string(lsp_axis_names[static_cast<int>(a)]) + "_" +
                    std::string(lsp_axis_names[static_cast<int>(b)]),
                params->corr(a, b), rep.corr(a, b), tol.corr);
    return diff;
}

// -------------------------------------------------------------- coverage

/// Stationary 2-D Gaussian-like shadow field with exponential
/// autocorrelation, built as a superposition of random plane waves whose
/// wavenumbers follow the matching spectral density.
class ShadowField
{
  public:
    ShadowField(double sigma_db, double decorrelation_distance_m, std::uint64_t seed, int n_waves = 256)
        : sigma_(sigma_db), waves_(static_cast<std::size_t>(n_waves))
    {
        if (decorrelation_distance_m <= 0.0)
            throw DomainError("ShadowField: decorrelation distance must be positive");
        RandomStream rng = RandomStream(seed).substream(0x73686164ULL);
        for (Wave &w : waves_)
        {
            const double u = rng.uniform01();
            const double k = std::sqrt(1.0 / ((1.0 - u) * (1.0 - u)) - 1.0) / decorrelation_distance_m;
            const double dir = rng.uniform(0.0, 2.0 * M_PI);
            w.kx = k * std::cos(dir);
            w.ky = k * std::sin(dir);
            w.phase = rng.uniform(0.0, 2.0 * M_PI);
        }
        amp_ = sigma_ * std::sqrt(2.0 / static_cast<double>(waves_.size()));
    }

    double at(Vec2 p) const
    {
        double s = 0.0;
        for (const Wave &w : waves_)
            s += std::cos(w.kx * p.x_m + w.ky * p.y_m + w.phase);
        return amp_ * s;
    }

  private:
    struct Wave
    {
        double kx = 0.0, ky = 0.0, phase = 0.0;
    };
    double sigma_;
    double amp_ = 0.0;
    std::vector<Wave> waves_;
};

struct GridCell
{
    double x_m = 0.0;
    double y_m = 0.0;
    double d_m = 0.0;
    std::optional<double> pl_db;
    std::optional<double> rsrp_dbm;
};

struct CoverageOptions
{
    double tx_height_m = 25.0;
    LinkBudget budget{};
    SpatialModel spatial{};
    bool include_shadow = true;
};

/// Path loss / received power raster over a square of side extent_m
/// centered on the transmitter, with spatially correlated shadow fading.
/// The cell containing the transmitter (distance 0) reports null values.
inline std::vector<GridCell> coverage_grid(Vec2 tx_xy, double extent_m, double resolution_m, LinkClass lc,
                                           const Registry &reg, std::uint64_t seed,
                                           const std::function<Visibility(Vec2)> &visibility_mask = {},
                                           const CoverageOptions &opt = {})
{
    if (extent_m <= 0.0 || resolution_m <= 0.0)
        throw DomainError("coverage_grid: extent and resolution must be positive");

    const long long n = std::llround(extent_m / resolution_m);
    if (n < 1)
        throw DomainError("coverage_grid: extent smaller than one cell");

    const ShadowField field(reg.at(lc).path_loss.sigma_s_db, opt.spatial.decorrelation_distance_m, seed);

    std::vector<GridCell> cells;
    cells.reserve(static_cast<std::size_t>(n * n));
    for (long long iy = 0; iy < n; ++iy)
        for (long long ix = 0; ix < n; ++ix)
        {
            GridCell c;
            c.x_m = tx_xy.x_m - extent_m / 2.0 + (static_cast<double>(ix) + 0.5) * resolution_m;
            c.y_m = tx_xy.y_m - extent_m / 2.0 + (static_cast<double>(iy) + 0.5) * resolution_m;
            const double h = distance({c.x_m, c.y_m}, tx_xy);
            c.d_m = std::sqrt(h * h + opt.tx_height_m * opt.tx_height_m);
            if (c.d_m > 0.0)
            {
                const Visibility vis = visibility_mask ? visibility_mask({c.x_m, c.y_m}) : lc.visibility;
                const LinkClassParams &params = reg.at({lc.scenario, lc.band, vis});
                const double sf = opt.include_shadow ? field.at({c.x_m, c.y_m}) : 0.0;
                c.pl_db = path_loss(params.path_loss, c.d_m, sf);
                c.rsrp_dbm = received_power(opt.budget, *c.pl_db);
            }
            cells.push_back(c);
        }
    return cells;
}

} // namespace fr3chan

#endif
