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

#ifndef fr3chan_csv_H
#define fr3chan_csv_H

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fr3chan/pipeline.hpp"

// CSV is the interchange format for records, tap profiles, grids, and
// reports. Headers are mandatory; numbers are written in full-precision
// decimal so files round-trip bit-exactly. Absent values are empty fields.

namespace fr3chan::csv
{

inline std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_line(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

inline double parse_double(const std::string &s, const std::string &context)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw ParseError("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw ParseError("csv: bad number '" + s + "' in " + context);
    }
}

namespace detail
{
inline std::ifstream open_in(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("csv: cannot open " + path.string());
    return in;
}

inline std::ofstream open_out(const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("csv: cannot write " + path.string());
    return out;
}

inline void expect_header(const std::string &got, const std::string &want, const std::string &context)
{
    if (got != want)
        throw ParseError("csv: unexpected header in " + context + ": '" + got + "'");
}
} // namespace detail

// ------------------------------------------------------------------ taps

inline constexpr const char *padp_header = "delay_s,power_lin,azimuth_deg,zenith_deg";

inline void write_padp(std::ostream &out, const Padp &padp)
{
    out << padp_header << "\n";
    for (const Tap &t : padp.taps)
        out << fmt(t.delay_s) << ',' << fmt(t.power_lin) << ',' << fmt(t.azimuth_deg) << ',' << fmt(t.zenith_deg)
            << "\n";
}

inline Padp read_padp(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("csv: empty tap file");
    detail::expect_header(line, padp_header, "tap file");
    Padp padp;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_line(line);
        if (f.size() != 4)
            throw ParseError("csv: tap row needs 4 fields, got " + std::to_string(f.size()));
        const Tap t{parse_double(f[0], "tap delay"), parse_double(f[1], "tap power"),
                    parse_double(f[2], "tap azimuth"), parse_double(f[3], "tap zenith")};
        if (!(t.delay_s >= 0.0) || !(t.power_lin > 0.0) || !std::isfinite(t.power_lin))
            throw ParseError("csv: tap row with negative delay or non-positive power");
        if (!padp.taps.empty() && t.delay_s < padp.taps.back().delay_s)
            throw ParseError("csv: tap delays must be ascending");
        padp.taps.push_back(t);
    }
    if (padp.taps.empty())
        throw ParseError("csv: tap file holds no taps");
    return padp;
}

inline void write_padp_file(const std::filesystem::path &path, const Padp &padp)
{
    auto out = detail::open_out(path);
    write_padp(out, padp);
}

inline Padp read_padp_file(const std::filesystem::path &path)
{
    auto in = detail::open_in(path);
    return read_padp(in);
}

// --------------------------------------------------------------- records

inline constexpr const char *records_header = "rx_x_m,rx_y_m,tx_x_m,tx_y_m,tx_h_m,band,vis,pl_db,taps_file";

/// Writes records; when taps_dir is given, each record's profile goes to
/// taps_dir/taps_NNNNNN.csv and the records file references it relative to
/// its own directory.
inline void write_records_file(const std::filesystem::path &path, std::span<const MeasurementRecord> records,
                               const std::optional<std::filesystem::path> &taps_dir = {})
{
    if (taps_dir)
        std::filesystem::create_directories(*taps_dir);
    auto out = detail::open_out(path);
    out << records_header << "\n";
    std::size_t idx = 0;
    for (const MeasurementRecord &r : records)
    {
        std::string taps_field;
        if (taps_dir && r.taps)
        {
            char name[32];
            std::snprintf(name, sizeof(name), "taps_%06zu.csv", idx);
            write_padp_file(*taps_dir / name, *r.taps);
            taps_field = std::filesystem::relative(*taps_dir / name, path.parent_path().empty()
                                                                         ? std::filesystem::path(".")
                                                                         : path.parent_path())
                             .generic_string();
        }
        out << fmt(r.rx_xy_m.x_m) << ',' << fmt(r.rx_xy_m.y_m) << ',' << fmt(r.tx_xy_m.x_m) << ',' << fmt(r.tx_xy_m.y_m)
            << ',' << fmt(r.tx_height_m) << ',' << to_string(r.band) << ',' << to_string(r.visibility) << ','
            << fmt(r.pl_db) << ',' << taps_field << "\n";
        ++idx;
    }
}

/// Reads records; taps_file references are resolved relative to the records
/// file and loaded when load_taps is set.
inline std::vector<MeasurementRecord> read_records_file(const std::filesystem::path &path, bool load_taps = true)
{
    auto in = detail::open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("csv: empty records file");
    detail::expect_header(line, records_header, "records file");

    const std::filesystem::path base = path.parent_path();
    std::vector<MeasurementRecord> out;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_line(line);
        if (f.size() != 9)
            throw ParseError("csv: record row needs 9 fields, got " + std::to_string(f.size()));
        MeasurementRecord r;
        r.rx_xy_m = {parse_double(f[0], "rx_x_m"), parse_double(f[1], "rx_y_m")};
        r.tx_xy_m = {parse_double(f[2], "tx_x_m"), parse_double(f[3], "tx_y_m")};
        r.tx_height_m = parse_double(f[4], "tx_h_m");
        r.band = band_from_string(f[5]);
        r.visibility = visibility_from_string(f[6]);
        r.pl_db = parse_double(f[7], "pl_db");
        if (!std::isfinite(r.pl_db))
            throw ParseError("csv: record with non-finite pl_db");
        if (!(r.link_distance_m() > 0.0))
            throw ParseError("csv: record with zero TX-RX separation");
        if (!f[8].empty() && load_taps)
            r.taps = read_padp_file(base / f[8]);
        out.push_back(std::move(r));
    }
    return out;
}

// ------------------------------------------------------------------ grid

inline constexpr const char *grid_header = "x_m,y_m,d_m,pl_db,rsrp_dbm";

inline void write_grid(std::ostream &out, std::span<const GridCell> cells)
{
    out << grid_header << "\n";
    for (const GridCell &c : cells)
    {
        out << fmt(c.x_m) << ',' << fmt(c.y_m) << ',' << fmt(c.d_m) << ',';
        if (c.pl_db)
            out << fmt(*c.pl_db);
        out << ',';
        if (c.rsrp_dbm)
            out << fmt(*c.rsrp_dbm);
        out << "\n";
    }
}

inline void write_grid_file(const std::filesystem::path &path, std::span<const GridCell> cells)
{
    auto out = detail::open_out(path);
    write_grid(out, cells);
}

// ---------------------------------------------------------------- report

inline constexpr const char *report_header = "field,value";

inline void write_report(std::ostream &out, const ScenarioReport &rep)
{
    auto kv = [&](const std::string &k, const std::string &v) { out << k << ',' << v << "\n"; };
    auto num = [&](const std::string &k, double v) { kv(k, fmt(v)); };
    auto opt_num = [&](const std::string &k, const std::optional<double> &v) { kv(k, v ? fmt(*v) : ""); };

    out << report_header << "\n";
    kv("scenario", std::string(to_string(rep.link_class.scenario)));
    kv("band", std::string(to_string(rep.link_class.band)));
    kv("vis", std::string(to_string(rep.link_class.visibility)));
    num("n_bins", static_cast<double>(rep.n_bins));
    num("pl0_db", rep.path_loss_fit.pl0_db);
    num("d0_m", rep.path_loss_fit.d0_m);
    num("ple", rep.path_loss_fit.ple);
    num("sigma_s_db", rep.path_loss_fit.sigma_s_db);
    opt_num("ds_mu_log10", rep.ds_stat ? std::optional(rep.ds_stat->mu_log10) : std::nullopt);
    opt_num("ds_sigma_log10", rep.ds_stat ? std::optional(rep.ds_stat->sigma_log10) : std::nullopt);
    opt_num("asa_mu_log10", rep.asa_stat ? std::optional(rep.asa_stat->mu_log10) : std::nullopt);
    opt_num("asa_sigma_log10", rep.asa_stat ? std::optional(rep.asa_stat->sigma_log10) : std::nullopt);
    opt_num("zsa_mu_log10", rep.zsa_stat ? std::optional(rep.zsa_stat->mu_log10) : std::nullopt);
    opt_num("zsa_sigma_log10", rep.zsa_stat ? std::optional(rep.zsa_stat->sigma_log10) : std::nullopt);
    opt_num("cb_mhz_rho05", rep.cb_mhz ? std::optional(rep.cb_mhz->rho05_mhz) : std::nullopt);
    opt_num("cb_mhz_rho09", rep.cb_mhz ? std::optional(rep.cb_mhz->rho09_mhz) : std::nullopt);

    static constexpr std::pair<LspAxis, LspAxis> pairs[] = {
        {LspAxis::ASA, LspAxis::DS}, {LspAxis::ASA, LspAxis::SF}, {LspAxis::DS, LspAxis::SF},
        {LspAxis::ZSA, LspAxis::SF}, {LspAxis::ZSA, LspAxis::DS}, {LspAxis::ZSA, LspAxis::ASA}};
    for (const auto &[a, b] : pairs)
    {
        const std::string key = "corr_" + std::string(lsp_axis_names[static_cast<int>(a)]) + "_" +
                                std::string(lsp_axis_names[static_cast<int>(b)]);
        if (rep.corr.present(a) && rep.corr.present(b))
            num(key, rep.corr(a, b));
        else
            kv(key, "");
    }
}

inline ScenarioReport read_report(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("csv: empty report");
    detail::expect_header(line, report_header, "report");

    std::map<std::string, std::string> kv;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split_line(line);
        if (f.size() != 2)
            throw ParseError("csv: report row needs 2 fields");
        kv[f[0]] = f[1];
    }
    auto need = [&](const std::string &k) -> const std::string & {
        auto it = kv.find(k);
        if (it == kv.end())
            throw ParseError("csv: report missing field " + k);
        return it->second;
    };
    auto opt_val = [&](const std::string &k) -> std::optional<double> {
        auto it = kv.find(k);
        if (it == kv.end() || it->second.empty())
            return std::nullopt;
        return parse_double(it->second, k);
    };

    ScenarioReport rep;
    rep.link_class = {scenario_from_string(need("scenario")), band_from_string(need("band")),
                      visibility_from_string(need("vis"))};
    rep.n_bins = static_cast<std::size_t>(parse_double(need("n_bins"), "n_bins"));
    rep.path_loss_fit = {parse_double(need("pl0_db"), "pl0_db"), parse_double(need("d0_m"), "d0_m"),
                         parse_double(need("ple"), "ple"), parse_double(need("sigma_s_db"), "sigma_s_db")};
    if (auto mu = opt_val("ds_mu_log10"))
        rep.ds_stat = LogNormalStat{*mu, *opt_val("ds_sigma_log10")};
    if (auto mu = opt_val("asa_mu_log10"))
        rep.asa_stat = LogNormalStat{*mu, *opt_val("asa_sigma_log10")};
    if (auto mu = opt_val("zsa_mu_log10"))
        rep.zsa_stat = LogNormalStat{*mu, *opt_val("zsa_sigma_log10")};
    if (auto cb = opt_val("cb_mhz_rho05"))
        rep.cb_mhz = CoherencePair{*cb, *opt_val("cb_mhz_rho09")};

    const bool angular = opt_val("corr_ASA_DS").has_value();
    const bool ds_sf = opt_val("corr_DS_SF").has_value();
    rep.corr = CrossCorrMatrix::identity({ds_sf, ds_sf, angular, angular});
    if (ds_sf)
        rep.corr.set(LspAxis::DS, LspAxis::SF, *opt_val("corr_DS_SF"));
    if (angular)
    {
        rep.corr.set(LspAxis::ASA, LspAxis::DS, *opt_val("corr_ASA_DS"));
        rep.corr.set(LspAxis::ASA, LspAxis::SF, *opt_val("corr_ASA_SF"));
        rep.corr.set(LspAxis::ZSA, LspAxis::SF, *opt_val("corr_ZSA_SF"));
        rep.corr.set(LspAxis::ZSA, LspAxis::DS, *opt_val("corr_ZSA_DS"));
        rep.corr.set(LspAxis::ZSA, LspAxis::ASA, *opt_val("corr_ZSA_ASA"));
    }
    rep.corr.mask_absent();
    return rep;
}

inline void write_report_file(const std::filesystem::path &path, const ScenarioReport &rep)
{
    auto out = detail::open_out(path);
    write_report(out, rep);
}

inline ScenarioReport read_report_file(const std::filesystem::path &path)
{
    auto in = detail::open_in(path);
    return read_report(in);
}

// ------------------------------------------------------------------ diff

inline void write_diff(std::ostream &out, const DiffReport &diff)
{
    out << "param,reference,recovered,tolerance,pass\n";
    for (const DiffRow &r : diff.rows)
        out << r.param << ',' << fmt(r.reference) << ',' << fmt(r.recovered) << ',' << fmt(r.tolerance) << ','
            << (r.pass ? "1" : "0") << "\n";
}

inline void write_diff_file(const std::filesystem::path &path, const DiffReport &diff)
{
    auto out = detail::open_out(path);
    write_diff(out, diff);
}

} // namespace fr3chan::csv

#endif
