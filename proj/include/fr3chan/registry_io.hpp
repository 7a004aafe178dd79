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

#ifndef fr3chan_registry_io_H
#define fr3chan_registry_io_H

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fr3chan/registry.hpp"

// JSON import/export of a Registry: one object per link class (all 18,
// including empty cells), absent fields as explicit nulls. The schema is
// documented in the repository README.

namespace fr3chan
{

namespace detail
{

inline nlohmann::json stat_json(const std::optional<LogNormalStat> &s)
{
    if (!s)
        return nullptr;
    return {{"mu", s->mu_log10}, {"sigma", s->sigma_log10}};
}

inline std::optional<LogNormalStat> stat_from_json(const nlohmann::json &j)
{
    if (j.is_null())
        return std::nullopt;
    return LogNormalStat{j.at("mu").get<double>(), j.at("sigma").get<double>()};
}

inline nlohmann::json corr_entry(const CrossCorrMatrix &c, LspAxis a, LspAxis b)
{
    if (!c.present(a) || !c.present(b))
        return nullptr;
    return c(a, b);
}

} // namespace detail

inline std::string registry_to_json(const Registry &reg)
{
    using nlohmann::json;
    json classes = json::array();
    for (Scenario sc : all_scenarios)
        for (Band b : all_bands)
            for (Visibility v : all_visibilities)
            {
                const LinkClass lc{sc, b, v};
                json rec = {{"scenario", std::string(to_string(sc))},
                            {"band", std::string(to_string(b))},
                            {"visibility", std::string(to_string(v))},
                            {"center_frequency_hz", band_center_hz(b)}};
                const LinkClassParams *p = reg.find(lc);
                if (!p)
                {
                    for (const char *k : {"path_loss", "ds_log10", "asa_log10", "zsa_log10", "cb_mhz", "corr",
                                          "n_points_thousands", "suspect", "prose_note"})
                        rec[k] = nullptr;
                }
                else
                {
                    rec["path_loss"] = {{"pl0_db", p->path_loss.pl0_db},
                                        {"d0_m", p->path_loss.d0_m},
                                        {"ple", p->path_loss.ple},
                                        {"sigma_s_db", p->path_loss.sigma_s_db}};
                    rec["ds_log10"] = detail::stat_json(p->ds);
                    rec["asa_log10"] = detail::stat_json(p->asa);
                    rec["zsa_log10"] = detail::stat_json(p->zsa);
                    rec["cb_mhz"] = {{"rho_05", p->cb_mhz.rho05_mhz}, {"rho_09", p->cb_mhz.rho09_mhz}};
                    rec["corr"] = {{"asa_ds", detail::corr_entry(p->corr, LspAxis::ASA, LspAxis::DS)},
                                   {"asa_sf", detail::corr_entry(p->corr, LspAxis::ASA, LspAxis::SF)},
                                   {"ds_sf", detail::corr_entry(p->corr, LspAxis::DS, LspAxis::SF)},
                                   {"zsa_sf", detail::corr_entry(p->corr, LspAxis::ZSA, LspAxis::SF)},
                                   {"zsa_ds", detail::corr_entry(p->corr, LspAxis::ZSA, LspAxis::DS)},
                                   {"zsa_asa", detail::corr_entry(p->corr, LspAxis::ZSA, LspAxis::ASA)}};
                    rec["n_points_thousands"] = p->n_points_thousands;
                    rec["suspect"] = p->suspect;
                    rec["prose_note"] = p->prose_note.empty() ? json(nullptr) : json(p->prose_note);
                }
                classes.push_back(rec);
            }

    json meta;
    for (Scenario sc : all_scenarios)
    {
        const ScenarioMetadata &m = reg.metadata(sc);
        meta[std::string(to_string(sc))] = {{"vegetation_height_m", m.vegetation_height_m},
                                            {"building_height_m", m.building_height_m},
                                            {"street_length_m", m.street_length_m},
                                            {"street_width_m", m.street_width_m}};
    }

    const json root = {{"link_classes", classes}, {"scenario_metadata", meta}};
    return root.dump(2) + "\n";
}

inline Registry registry_from_json(const std::string &text)
{
    using nlohmann::json;
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::exception &e)
    {
        throw ParseError(std::string("registry json: ") + e.what());
    }

    Registry reg;
    try
    {
        for (const json &rec : root.at("link_classes"))
        {
            const LinkClass lc{scenario_from_string(rec.at("scenario").get<std::string>()),
                               band_from_string(rec.at("band").get<std::string>()),
                               visibility_from_string(rec.at("visibility").get<std::string>())};
            if (rec.at("path_loss").is_null())
                continue;

            LinkClassParams p;
            p.link_class = lc;
            const json &pl = rec.at("path_loss");
            p.path_loss = {pl.at("pl0_db").get<double>(), pl.at("d0_m").get<double>(), pl.at("ple").get<double>(),
                           pl.at("sigma_s_db").get<double>()};
            const auto ds = detail::stat_from_json(rec.at("ds_log10"));
            if (!ds)
                throw ParseError("registry json: populated cell " + lc.name() + " lacks ds_log10");
            p.ds = *ds;
            p.asa = detail::stat_from_json(rec.at("asa_log10"));
            p.zsa = detail::stat_from_json(rec.at("zsa_log10"));
            p.cb_mhz = {rec.at("cb_mhz").at("rho_05").get<double>(), rec.at("cb_mhz").at("rho_09").get<double>()};
            p.n_points_thousands = rec.at("n_points_thousands").get<double>();
            p.suspect = rec.at("suspect").get<bool>();
            if (!rec.at("prose_note").is_null())
                p.prose_note = rec.at("prose_note").get<std::string>();

            const json &c = rec.at("corr");
            const bool angular = p.asa.has_value();
            CrossCorrMatrix corr = CrossCorrMatrix::identity({true, true, angular, angular});
            corr.set(LspAxis::DS, LspAxis::SF, c.at("ds_sf").get<double>());
            if (angular)
            {
                corr.set(LspAxis::ASA, LspAxis::DS, c.at("asa_ds").get<double>());
                corr.set(LspAxis::ASA, LspAxis::SF, c.at("asa_sf").get<double>());
                corr.set(LspAxis::ZSA, LspAxis::SF, c.at("zsa_sf").get<double>());
                corr.set(LspAxis::ZSA, LspAxis::DS, c.at("zsa_ds").get<double>());
                corr.set(LspAxis::ZSA, LspAxis::ASA, c.at("zsa_asa").get<double>());
            }
            corr.mask_absent();
            p.corr = corr;
            reg.put(p);
        }

        if (root.contains("scenario_metadata"))
            for (Scenario sc : all_scenarios)
            {
                const json &m = root.at("scenario_metadata").at(std::string(to_string(sc)));
                ScenarioMetadata md;
                md.vegetation_height_m = m.at("vegetation_height_m").get<std::array<double, 2>>();
                md.building_height_m = m.at("building_height_m").get<std::array<double, 2>>();
                md.street_length_m = m.at("street_length_m").get<std::array<double, 2>>();
                md.street_width_m = m.at("street_width_m").get<std::array<double, 2>>();
                reg.put_metadata(sc, md);
            }
    }
    catch (const json::exception &e)
    {
        throw ParseError(std::string("registry json: ") + e.what());
    }
    return reg;
}

inline void write_registry_file(const std::filesystem::path &path, const Registry &reg)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("registry json: cannot write " + path.string());
    out << registry_to_json(reg);
}

inline Registry read_registry_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("registry json: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return registry_from_json(buf.str());
}

} // namespace fr3chan

#endif
