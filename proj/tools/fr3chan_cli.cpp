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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fr3chan/fr3chan.hpp"

namespace fs = std::filesystem;
using namespace fr3chan;

namespace
{

struct ClassSelection
{
    std::string scenario = "umi";
    int band = 15;
    bool los = false;
    bool nlos = false;

    LinkClass link_class() const
    {
        if (los == nlos)
            throw CLI::ValidationError("visibility", "pass exactly one of --los / --nlos");
        return {scenario_from_string(scenario), band_from_string(std::to_string(band)),
                los ? Visibility::LOS : Visibility::NLOS};
    }
};

void add_class_options(CLI::App *cmd, ClassSelection &sel, bool required = true)
{
    auto *sc = cmd->add_option("--scenario", sel.scenario, "Deployment scenario")
                   ->transform(CLI::IsMember({"umi", "uma", "sma", "UMI", "UMA", "SMA"}));
    auto *b = cmd->add_option("--band", sel.band, "Band label (GHz bucket)")->transform(CLI::IsMember({7, 8, 15}));
    if (required)
    {
        sc->required();
        b->required();
    }
    cmd->add_flag("--los", sel.los, "Line-of-sight links");
    cmd->add_flag("--nlos", sel.nlos, "Non-line-of-sight links");
}

Registry load_registry(const std::string &path)
{
    if (path.empty())
        return load_embedded();
    return read_registry_file(path);
}

void warn_if_suspect(const Registry &reg, LinkClass lc)
{
    if (const LinkClassParams *p = reg.find(lc); p && p->suspect)
        std::cerr << "warning: " << lc.name() << " uses a suspect printed value (" << p->prose_note << ")\n";
}

void write_xy_csv(const fs::path &path, const char *header, const std::vector<std::pair<double, double>> &rows)
{
    auto out = csv::detail::open_out(path);
    out << header << "\n";
    for (const auto &[a, b] : rows)
        out << csv::fmt(a) << ',' << csv::fmt(b) << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"fr3chan: statistical large-scale channel model and measurement pipeline for 7/8/15 GHz outdoor "
                 "scenarios"};
    app.require_subcommand(1);

    std::string registry_path;
    app.add_option("--registry", registry_path, "Load link-class parameters from a JSON file instead of the embedded table")
        ->check(CLI::ExistingFile);

    // ---- table ----
    auto *table = app.add_subcommand("table", "Dump the parameter registry as JSON, or run consistency checks");
    std::string table_out;
    bool table_validate = false;
    table->add_option("--out", table_out, "Write to file instead of stdout");
    table->add_flag("--validate", table_validate, "Print consistency findings instead of the table");

    // ---- generate ----
    auto *generate = app.add_subcommand("generate", "Simulate a drive route and write a records CSV");
    ClassSelection gen_sel;
    add_class_options(generate, gen_sel);
    std::string gen_out = "records.csv";
    std::string gen_taps_dir;
    std::uint64_t gen_seed = 1;
    std::size_t gen_n = 1000;
    double gen_dmin = 50.0, gen_dmax = 1000.0, gen_txh = 25.0, gen_decorr = 50.0;
    int gen_ntaps = 50;
    bool gen_emulate = false;
    generate->add_option("--out", gen_out, "Records CSV path");
    generate->add_option("--taps-dir", gen_taps_dir, "Directory for per-record tap CSVs (omitted: records only)");
    generate->add_option("--seed", gen_seed, "Random seed");
    generate->add_option("--n", gen_n, "Number of route points");
    generate->add_option("--dmin", gen_dmin, "Minimum link distance, m");
    generate->add_option("--dmax", gen_dmax, "Maximum link distance, m");
    generate->add_option("--tx-h", gen_txh, "Transmitter height, m");
    generate->add_option("--decorr-m", gen_decorr, "Shadow-fading decorrelation distance, m");
    generate->add_option("--n-taps", gen_ntaps, "Taps per synthesized profile");
    generate->add_flag("--emulate-measurement-limits", gen_emulate, "Apply the sounder's ZSA sweep limit");

    // ---- estimate ----
    auto *estimate = app.add_subcommand("estimate", "Run the estimation chain over a records CSV");
    std::string est_in, est_out, est_scenario;
    double est_bin = 2.0, est_dyn = 30.0, est_d0 = 100.0;
    estimate->add_option("--in", est_in, "Records CSV")->required()->check(CLI::ExistingFile);
    estimate->add_option("--out", est_out, "Report CSV path (default stdout)");
    estimate->add_option("--scenario", est_scenario, "Deployment scenario of the records")
        ->transform(CLI::IsMember({"umi", "uma", "sma", "UMI", "UMA", "SMA"}))
        ->required();
    estimate->add_option("--bin-m", est_bin, "Square bin size, m");
    estimate->add_option("--dyn-range-db", est_dyn, "Tap threshold below the strongest tap, dB");
    estimate->add_option("--d0", est_d0, "Reference distance for the path-loss fit, m");

    // ---- roundtrip ----
    auto *rt = app.add_subcommand("roundtrip", "Generate, re-estimate, and compare against the registry");
    ClassSelection rt_sel;
    add_class_options(rt, rt_sel, /*required=*/false);
    std::string rt_out;
    std::uint64_t rt_seed = 1;
    std::size_t rt_n = 10000;
    bool rt_all = false;
    double rt_decorr = 50.0, rt_bin = 2.0, rt_dyn = 30.0;
    rt->add_option("--out", rt_out, "Write the comparison table as CSV");
    rt->add_option("--seed", rt_seed, "Random seed");
    rt->add_option("--n", rt_n, "Links per cell");
    rt->add_option("--bin-m", rt_bin, "Square bin size, m");
    rt->add_option("--dyn-range-db", rt_dyn, "Tap threshold, dB");
    rt->add_option("--decorr-m", rt_decorr, "Shadow-fading decorrelation distance, m");
    rt->add_flag("--all", rt_all, "Run every populated cell (class flags ignored)");

    // ---- coverage ----
    auto *cov = app.add_subcommand("coverage", "Path loss / received power raster around the transmitter");
    ClassSelection cov_sel;
    add_class_options(cov, cov_sel);
    std::string cov_out = "grid.csv";
    std::uint64_t cov_seed = 1;
    double cov_extent = 2000.0, cov_res = 10.0, cov_txh = 25.0, cov_decorr = 50.0, cov_eirp = 43.0, cov_rxg = 0.0;
    bool cov_noshadow = false;
    cov->add_option("--out", cov_out, "Grid CSV path");
    cov->add_option("--seed", cov_seed, "Random seed for the shadow field");
    cov->add_option("--extent", cov_extent, "Square side length, m");
    cov->add_option("--res", cov_res, "Cell size, m");
    cov->add_option("--tx-h", cov_txh, "Transmitter height, m");
    cov->add_option("--decorr-m", cov_decorr, "Shadow-fading decorrelation distance, m");
    cov->add_option("--eirp-dbm", cov_eirp, "Transmit EIRP, dBm");
    cov->add_option("--rx-gain-dbi", cov_rxg, "Receive antenna gain, dBi");
    cov->add_flag("--no-shadow", cov_noshadow, "Disable shadow fading");

    // ---- plotdata ----
    auto *plot = app.add_subcommand("plotdata", "Per-parameter vs-distance and probability-plot CSVs");
    ClassSelection plot_sel;
    add_class_options(plot, plot_sel);
    std::string plot_dir = "plotdata";
    std::uint64_t plot_seed = 1;
    std::size_t plot_n = 2000;
    double plot_dmin = 50.0, plot_dmax = 1000.0, plot_txh = 25.0, plot_decorr = 50.0, plot_dyn = 30.0;
    bool plot_emulate = false;
    plot->add_option("--out-dir", plot_dir, "Output directory");
    plot->add_option("--seed", plot_seed, "Random seed");
    plot->add_option("--n", plot_n, "Number of simulated links");
    plot->add_option("--dmin", plot_dmin, "Minimum link distance, m");
    plot->add_option("--dmax", plot_dmax, "Maximum link distance, m");
    plot->add_option("--tx-h", plot_txh, "Transmitter height, m");
    plot->add_option("--decorr-m", plot_decorr, "Shadow-fading decorrelation distance, m");
    plot->add_option("--dyn-range-db", plot_dyn, "Tap threshold, dB");
    plot->add_flag("--emulate-measurement-limits", plot_emulate, "Apply the sounder's ZSA sweep limit");

    CLI11_PARSE(app, argc, argv);

    try
    {
        const Registry reg = load_registry(registry_path);

        if (table->parsed())
        {
            if (table_validate)
            {
                for (const Finding &f : validate(reg))
                {
                    std::cout << (f.severity == Finding::Severity::warning ? "warning" : "info") << "  "
                              << (f.link_class ? f.link_class->name() : std::string("-")) << "  " << f.check << ": "
                              << f.message << "\n";
                }
                return 0;
            }
            const std::string text = registry_to_json(reg);
            if (table_out.empty())
                std::cout << text;
            else
                csv::detail::open_out(table_out) << text;
            return 0;
        }

        if (generate->parsed())
        {
            const LinkClass lc = gen_sel.link_class();
            warn_if_suspect(reg, lc);
            const auto route = synth_route(gen_n, gen_dmin, gen_dmax, gen_txh, lc.visibility, gen_seed);
            SimulateOptions opt;
            opt.spatial.decorrelation_distance_m = gen_decorr;
            opt.n_taps = gen_ntaps;
            opt.emulate_measurement_limits = gen_emulate;
            const auto records = simulate_route({0.0, 0.0}, gen_txh, route, lc, reg, opt, gen_seed);
            csv::write_records_file(gen_out, records,
                                    gen_taps_dir.empty() ? std::nullopt : std::optional<fs::path>(gen_taps_dir));
            std::cerr << "wrote " << records.size() << " records to " << gen_out << "\n";
            return 0;
        }

        if (estimate->parsed())
        {
            const auto records = csv::read_records_file(est_in);
            const ScenarioReport rep = extract_report(records, scenario_from_string(est_scenario), {est_bin, est_dyn, est_d0});
            if (est_out.empty())
                csv::write_report(std::cout, rep);
            else
                csv::write_report_file(est_out, rep);
            return 0;
        }

        if (rt->parsed())
        {
            RoundtripOptions opt;
            opt.spatial.decorrelation_distance_m = rt_decorr;
            opt.bin_m = rt_bin;
            opt.dyn_range_db = rt_dyn;

            std::vector<LinkClass> classes;
            if (rt_all)
                classes = reg.populated();
            else
            {
                if (rt->count("--scenario") == 0 || rt->count("--band") == 0)
                    throw DomainError("roundtrip: pass --scenario/--band/--los|--nlos, or --all");
                classes.push_back(rt_sel.link_class());
            }

            bool all_pass = true;
            std::optional<std::ofstream> out;
            if (!rt_out.empty())
            {
                out.emplace(csv::detail::open_out(rt_out));
                *out << "link_class,param,reference,recovered,tolerance,pass\n";
            }
            for (LinkClass lc : classes)
            {
                warn_if_suspect(reg, lc);
                // per-cell seed offset so --all cells do not share draw patterns
                const std::uint64_t cell_seed = rt_all ? rt_seed + static_cast<std::uint64_t>(lc.index()) : rt_seed;
                const DiffReport diff = roundtrip(lc, rt_n, cell_seed, {}, reg, opt);
                if (!diff.note.empty())
                    std::cout << lc.name() << ": " << diff.note << "\n";
                for (const DiffRow &r : diff.rows)
                {
                    std::printf("%-14s %-16s ref %10.4f  got %10.4f  tol %7.4f  %s\n", lc.name().c_str(),
                                r.param.c_str(), r.reference, r.recovered, r.tolerance, r.pass ? "pass" : "FAIL");
                    if (out)
                        *out << lc.name() << ',' << r.param << ',' << csv::fmt(r.reference) << ','
                             << csv::fmt(r.recovered) << ',' << csv::fmt(r.tolerance) << ',' << (r.pass ? "1" : "0")
                             << "\n";
                }
                all_pass = all_pass && diff.all_pass();
            }
            return all_pass ? 0 : 1;
        }

        if (cov->parsed())
        {
            const LinkClass lc = cov_sel.link_class();
            warn_if_suspect(reg, lc);
            CoverageOptions opt;
            opt.tx_height_m = cov_txh;
            opt.spatial.decorrelation_distance_m = cov_decorr;
            opt.include_shadow = !cov_noshadow;
            opt.budget.eirp_dbm = cov_eirp;
            opt.budget.rx_gain_dbi = cov_rxg;
            const auto cells = coverage_grid({0.0, 0.0}, cov_extent, cov_res, lc, reg, cov_seed, {}, opt);
            csv::write_grid_file(cov_out, cells);
            std::cerr << "wrote " << cells.size() << " cells to " << cov_out << "\n";
            return 0;
        }

        if (plot->parsed())
        {
            const LinkClass lc = plot_sel.link_class();
            warn_if_suspect(reg, lc);
            const LinkClassParams &params = reg.at(lc);
            const auto route = synth_route(plot_n, plot_dmin, plot_dmax, plot_txh, lc.visibility, plot_seed);
            SimulateOptions opt;
            opt.spatial.decorrelation_distance_m = plot_decorr;
            opt.emulate_measurement_limits = plot_emulate;
            const auto records = simulate_route({0.0, 0.0}, plot_txh, route, lc, reg, opt, plot_seed);

            std::vector<std::pair<double, double>> sf_d, ds_d, asa_d, zsa_d;
            std::vector<double> sf, ds, asa, zsa;
            for (const MeasurementRecord &r : records)
            {
                const double d = r.link_distance_m();
                const double s = r.pl_db - path_loss(params.path_loss, d);
                sf_d.push_back({d, s});
                sf.push_back(s);
                if (!r.taps)
                    continue;
                const auto kept = threshold_taps(r.taps->taps, plot_dyn);
                const double ds_i = rms_delay_spread(kept);
                if (ds_i > 0.0)
                {
                    ds_d.push_back({d, ds_i});
                    ds.push_back(ds_i);
                }
                const double asa_i = azimuth_spread(kept);
                const double zsa_i = zenith_spread(kept);
                if (asa_i > 0.0 && zsa_i > 0.0)
                {
                    asa_d.push_back({d, asa_i});
                    zsa_d.push_back({d, zsa_i});
                    asa.push_back(asa_i);
                    zsa.push_back(zsa_i);
                }
            }

            fs::create_directories(plot_dir);
            const fs::path dir(plot_dir);
            write_xy_csv(dir / "sf_vs_d.csv", "d_m,sf_db", sf_d);
            write_xy_csv(dir / "sf_probplot.csv", "theoretical_quantile,sf_db", probability_plot(sf));
            if (!ds.empty())
            {
                std::vector<double> log_ds(ds.size());
                for (std::size_t i = 0; i < ds.size(); ++i)
                    log_ds[i] = std::log10(ds[i]);
                write_xy_csv(dir / "ds_vs_d.csv", "d_m,ds_s", ds_d);
                write_xy_csv(dir / "ds_probplot.csv", "theoretical_quantile,log10_ds", probability_plot(log_ds));
            }
            if (!asa.empty())
            {
                std::vector<double> log_asa(asa.size()), log_zsa(zsa.size());
                for (std::size_t i = 0; i < asa.size(); ++i)
                {
                    log_asa[i] = std::log10(asa[i]);
                    log_zsa[i] = std::log10(zsa[i]);
                }
                write_xy_csv(dir / "asa_vs_d.csv", "d_m,asa_deg", asa_d);
                write_xy_csv(dir / "asa_probplot.csv", "theoretical_quantile,log10_asa", probability_plot(log_asa));
                write_xy_csv(dir / "zsa_vs_d.csv", "d_m,zsa_deg", zsa_d);
                write_xy_csv(dir / "zsa_probplot.csv", "theoretical_quantile,log10_zsa", probability_plot(log_zsa));
            }
            std::cerr << "wrote plot data for " << records.size() << " links to " << plot_dir << "\n";
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
