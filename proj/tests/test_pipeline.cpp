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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fr3chan/pipeline.hpp"

using namespace fr3chan;

namespace
{
MeasurementRecord rec_at(double x, double y, double pl)
{
    MeasurementRecord r;
    r.rx_xy_m = {x, y};
    r.tx_xy_m = {0.0, 0.0};
    r.tx_height_m = 10.0;
    r.band = Band::B15;
    r.visibility = Visibility::NLOS;
    r.pl_db = pl;
    return r;
}
} // namespace

TEST_CASE("bin_records median selection")
{
    // both positions floor to bin (0,0)
    std::vector<MeasurementRecord> same_bin = {rec_at(0.5, 0.5, 100.0), rec_at(1.5, 1.5, 120.0)};
    auto binned = bin_records(same_bin, 2.0);
    REQUIRE(binned.size() == 1);
    CHECK(binned[0].pl_db == 100.0); // lower median of a pair

    std::vector<MeasurementRecord> odd = {rec_at(0.2, 0.2, 120.0), rec_at(0.9, 0.9, 100.0), rec_at(1.4, 1.4, 110.0)};
    CHECK(bin_records(odd, 2.0)[0].pl_db == 110.0);

    std::vector<MeasurementRecord> even = {rec_at(0.2, 0.2, 130.0), rec_at(0.9, 0.9, 100.0), rec_at(1.4, 1.4, 110.0),
                                           rec_at(1.9, 1.9, 120.0)};
    CHECK(bin_records(even, 2.0)[0].pl_db == 110.0);

    CHECK(bin_records({}, 2.0).empty());
    CHECK_THROWS_AS(bin_records(same_bin, 0.0), DomainError);

    // negative coordinates land in their own bins (floor semantics)
    std::vector<MeasurementRecord> neg = {rec_at(-0.5, -0.5, 100.0), rec_at(0.5, 0.5, 110.0)};
    CHECK(bin_records(neg, 2.0).size() == 2);
}

TEST_CASE("bin_records is idempotent and input-order independent")
{
    RandomStream rng(21);
    std::vector<MeasurementRecord> records;
    for (int i = 0; i < 400; ++i)
        records.push_back(rec_at(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0), rng.uniform(80.0, 140.0)));
    // duplicated path loss values exercise the deterministic tie-break
    for (int i = 0; i < 50; ++i)
        records.push_back(rec_at(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0), 100.0));

    const auto binned = bin_records(records, 2.0);
    const auto twice = bin_records(binned, 2.0);
    REQUIRE(twice.size() == binned.size());
    for (std::size_t i = 0; i < binned.size(); ++i)
    {
        CHECK(twice[i].rx_xy_m == binned[i].rx_xy_m);
        CHECK(twice[i].pl_db == binned[i].pl_db);
    }

    for (std::uint64_t trial = 0; trial < 5; ++trial)
    {
        std::vector<MeasurementRecord> shuffled = records;
        RandomStream shuffle_rng(trial);
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[shuffle_rng.next_u64() % i]);
        const auto again = bin_records(shuffled, 2.0);
        REQUIRE(again.size() == binned.size());
        for (std::size_t i = 0; i < binned.size(); ++i)
        {
            CHECK(again[i].rx_xy_m == binned[i].rx_xy_m);
            CHECK(again[i].pl_db == binned[i].pl_db);
        }
    }
}

TEST_CASE("simulate_route basics")
{
    const Registry reg = load_embedded();
    const LinkClass lc{Scenario::UMi, Band::B15, Visibility::LOS};

    // one point at 100 m with shadow off lands exactly on the intercept
    SimulateOptions no_shadow;
    no_shadow.include_shadow = false;
    no_shadow.synthesize_taps = false;
    const std::vector<RoutePoint> one = {{{100.0, 0.0}, Visibility::LOS}};
    const auto recs = simulate_route({0, 0}, 0.0, one, lc, reg, no_shadow, 3);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].pl_db == Catch::Approx(90.2).margin(1e-12));
    CHECK(recs[0].band == Band::B15);

    // deterministic per seed
    const auto route = synth_route(40, 50.0, 600.0, 25.0, lc.visibility, 77);
    const auto a = simulate_route({0, 0}, 25.0, route, lc, reg, {}, 123);
    const auto b = simulate_route({0, 0}, 25.0, route, lc, reg, {}, 123);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].pl_db == b[i].pl_db);
        REQUIRE(a[i].taps.has_value());
        CHECK(a[i].taps->taps[5].delay_s == b[i].taps->taps[5].delay_s);
    }
    const auto c = simulate_route({0, 0}, 25.0, route, lc, reg, {}, 124);
    CHECK(a[0].pl_db != c[0].pl_db);

    // uniform-visibility routes reproduce draw_route_lsp's shadow draws
    std::vector<Vec2> positions;
    for (const RoutePoint &p : route)
        positions.push_back(p.rx);
    const auto lsps = draw_route_lsp(reg.at(lc), positions, SpatialModel{}, 123);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double d = a[i].link_distance_m();
        const double trend = path_loss(reg.at(lc).path_loss, d, 0.0);
        CHECK(a[i].pl_db - trend == Catch::Approx(lsps[i].sf_db).margin(1e-10));
    }

    // absent cells propagate MissingData
    CHECK_THROWS_AS(simulate_route({0, 0}, 25.0, route, {Scenario::UMa, Band::B15, Visibility::LOS}, reg, {}, 1),
                    MissingData);
    CHECK_THROWS_AS(simulate_route({0, 0}, 25.0, {}, lc, reg, {}, 1), DomainError);
}

TEST_CASE("simulate_route follows per-point visibility flags")
{
    const Registry reg = load_embedded();
    const LinkClass lc{Scenario::UMi, Band::B8, Visibility::LOS};
    SimulateOptions opt;
    opt.include_shadow = false;
    opt.synthesize_taps = false;

    std::vector<RoutePoint> route;
    for (int i = 0; i < 20; ++i)
        route.push_back({{120.0 + 30.0 * i, 40.0}, (i % 2 == 0) ? Visibility::LOS : Visibility::NLOS});

    const auto records = simulate_route({0, 0}, 25.0, route, lc, reg, opt, 7);
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        const Visibility vis = route[i].visibility;
        CHECK(records[i].visibility == vis);
        const auto &params = reg.at({lc.scenario, lc.band, vis});
        CHECK(records[i].pl_db ==
              Catch::Approx(path_loss(params.path_loss, records[i].link_distance_m())).margin(1e-12));
    }
}

TEST_CASE("synth_route spaces points into distinct bins")
{
    const auto route = synth_route(2000, 50.0, 1000.0, 25.0, Visibility::NLOS, 11);
    REQUIRE(route.size() == 2000);
    std::vector<BinKey> keys;
    for (const RoutePoint &p : route)
    {
        keys.push_back(BinKey::of(p.rx, 2.0));
        const double d = std::sqrt(p.rx.x_m * p.rx.x_m + p.rx.y_m * p.rx.y_m + 25.0 * 25.0);
        CHECK(d >= 50.0 * 0.999);
        CHECK(d <= 1000.0 * 1.001);
    }
    std::sort(keys.begin(), keys.end());
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());

    CHECK_THROWS_AS(synth_route(10, 0.0, 100.0, 25.0, Visibility::LOS, 1), DomainError);
    CHECK_THROWS_AS(synth_route(10, 50.0, 40.0, 25.0, Visibility::LOS, 1), DomainError);
    CHECK_THROWS_AS(synth_route(10, 50.0, 100.0, 60.0, Visibility::LOS, 1), DomainError);
}

TEST_CASE("extract_report on simulated data recovers the generating cell")
{
    const Registry reg = load_embedded();
    const LinkClass lc{Scenario::SMa, Band::B15, Visibility::NLOS};
    const auto route = synth_route(3000, 50.0, 1000.0, 25.0, lc.visibility, 31);
    SimulateOptions sim;
    sim.emulate_measurement_limits = true;
    const auto records = simulate_route({0, 0}, 25.0, route, lc, reg, sim, 31);
    const ScenarioReport rep = extract_report(records, lc.scenario);

    CHECK(rep.link_class == lc);
    CHECK(rep.n_bins == records.size());
    const LinkClassParams &ref = reg.at(lc);
    CHECK(rep.path_loss_fit.pl0_db == Catch::Approx(ref.path_loss.pl0_db).margin(1.0));
    CHECK(rep.path_loss_fit.ple == Catch::Approx(ref.path_loss.ple).margin(0.1));
    CHECK(rep.path_loss_fit.sigma_s_db == Catch::Approx(ref.path_loss.sigma_s_db).margin(0.4));
    REQUIRE(rep.ds_stat.has_value());
    CHECK(rep.ds_stat->mu_log10 == Catch::Approx(ref.ds.mu_log10).margin(0.06));
    REQUIRE(rep.asa_stat.has_value());
    CHECK(rep.asa_stat->mu_log10 == Catch::Approx(ref.asa->mu_log10).margin(0.08));
    CHECK(rep.corr(LspAxis::ASA, LspAxis::DS) == Catch::Approx(0.77).margin(0.12));
}

TEST_CASE("extract_report degenerate and partial inputs")
{
    const Registry reg = load_embedded();
    const LinkClass lc{Scenario::UMi, Band::B8, Visibility::LOS};

    std::vector<MeasurementRecord> single = {rec_at(30.0, 40.0, 100.0)};
    CHECK_THROWS_AS(extract_report(single, Scenario::UMi), DegenerateFit);
    CHECK_THROWS_AS(extract_report({}, Scenario::UMi), DegenerateFit);

    // records without taps yield a path-loss-only report
    SimulateOptions no_taps;
    no_taps.synthesize_taps = false;
    const auto route = synth_route(100, 50.0, 400.0, 25.0, lc.visibility, 8);
    const auto records = simulate_route({0, 0}, 25.0, route, lc, reg, no_taps, 8);
    const ScenarioReport rep = extract_report(records, lc.scenario);
    CHECK(rep.path_loss_fit.ple > 0.0);
    CHECK_FALSE(rep.ds_stat.has_value());
    CHECK_FALSE(rep.asa_stat.has_value());
    CHECK_FALSE(rep.cb_mhz.has_value());
    CHECK(rep.corr.n_active() == 0);

    // mixed classes are rejected
    std::vector<MeasurementRecord> mixed = {rec_at(10.0, 0.0, 100.0), rec_at(20.0, 0.0, 105.0)};
    mixed[1].visibility = Visibility::LOS;
    CHECK_THROWS_AS(extract_report(mixed, Scenario::UMi), DegenerateInput);
}

TEST_CASE("roundtrip: vacuous pass on empty cells, rows otherwise")
{
    const Registry reg = load_embedded();

    const DiffReport missing = roundtrip({Scenario::UMa, Band::B7, Visibility::LOS}, 100, 1, {}, reg);
    CHECK_FALSE(missing.data_available);
    CHECK(missing.rows.empty());
    CHECK(missing.all_pass());
    CHECK_FALSE(missing.note.empty());

    RoundtripTolerances zero;
    zero.pl0_db = zero.ple = zero.sigma_s_db = zero.ds_mu = zero.ds_sigma = 0.0;
    zero.asa_mu = zero.asa_sigma = zero.zsa_mu = zero.zsa_sigma = zero.corr = 0.0;
    const DiffReport strict = roundtrip({Scenario::UMi, Band::B7, Visibility::LOS}, 300, 1, zero, reg);
    CHECK(strict.data_available);
    CHECK_FALSE(strict.all_pass()); // zero tolerance guarantees reported failures
    CHECK(strict.rows.size() == 8); // pl0, ple, sigma, ds mu/sigma, cb x2, corr DS-SF

    const DiffReport sane = roundtrip({Scenario::UMi, Band::B8, Visibility::NLOS}, 2000, 4, {}, reg);
    CHECK(sane.rows.size() == 3 + 4 + 4 + 6);
    for (const DiffRow &r : sane.rows)
    {
        INFO(r.param << " ref=" << r.reference << " got=" << r.recovered);
        CHECK(std::isfinite(r.recovered));
    }
}

TEST_CASE("coverage grid geometry and determinism")
{
    const Registry reg = load_embedded();
    const LinkClass lc{Scenario::UMi, Band::B15, Visibility::LOS};

    CoverageOptions opt;
    opt.tx_height_m = 0.0;
    opt.include_shadow = false;
    // 1x1 grid whose cell center sits 100 m from the transmitter
    const auto one = coverage_grid({100.0, 5.0}, 10.0, 10.0, lc, reg, 1, {}, opt);
    REQUIRE(one.size() == 1);
    CHECK(one[0].d_m == Catch::Approx(0.0).margin(1e-12));
    CHECK_FALSE(one[0].pl_db.has_value()); // transmitter cell reports null

    const auto offset = coverage_grid({0.0, 0.0}, 10.0, 10.0, lc, reg, 1, {}, opt);
    REQUIRE(offset.size() == 1);

    // halving the cell size quadruples the cell count
    const auto coarse = coverage_grid({0, 0}, 400.0, 20.0, lc, reg, 2);
    const auto fine = coverage_grid({0, 0}, 400.0, 10.0, lc, reg, 2);
    CHECK(coarse.size() == 400);
    CHECK(fine.size() == 1600);

    const auto again = coverage_grid({0, 0}, 400.0, 20.0, lc, reg, 2);
    for (std::size_t i = 0; i < coarse.size(); ++i)
    {
        CHECK(coarse[i].pl_db == again[i].pl_db);
        CHECK(coarse[i].rsrp_dbm == again[i].rsrp_dbm);
    }

    // no-shadow grid equals the bare model
    CoverageOptions bare;
    bare.tx_height_m = 25.0;
    bare.include_shadow = false;
    const auto flat = coverage_grid({0, 0}, 200.0, 50.0, lc, reg, 9, {}, bare);
    for (const GridCell &c : flat)
        CHECK(*c.pl_db == Catch::Approx(path_loss(reg.at(lc).path_loss, c.d_m)).margin(1e-12));

    // visibility mask switches parameter sets per cell
    const auto masked = coverage_grid(
        {0, 0}, 200.0, 50.0, lc, reg, 9,
        [](Vec2 p) { return p.x_m < 0.0 ? Visibility::LOS : Visibility::NLOS; }, bare);
    bool saw_nlos = false;
    for (std::size_t i = 0; i < masked.size(); ++i)
        if (masked[i].x_m >= 0.0)
        {
            const LinkClassParams &nlos = reg.at({lc.scenario, lc.band, Visibility::NLOS});
            CHECK(*masked[i].pl_db == Catch::Approx(path_loss(nlos.path_loss, masked[i].d_m)).margin(1e-12));
            saw_nlos = true;
        }
    CHECK(saw_nlos);

    CHECK_THROWS_AS(coverage_grid({0, 0}, 0.0, 10.0, lc, reg, 1), DomainError);
    CHECK_THROWS_AS(coverage_grid({0, 0}, 100.0, 0.0, lc, reg, 1), DomainError);
}

TEST_CASE("shadow field has the configured variance and decay")
{
    const double sigma = 6.0, dcorr = 50.0;
    const int fields = 3000;
    std::vector<double> a(fields), b(fields);
    for (int i = 0; i < fields; ++i)
    {
        const ShadowField f(sigma, dcorr, static_cast<std::uint64_t>(i), 64);
        a[i] = f.at({0.0, 0.0});
        b[i] = f.at({dcorr, 0.0});
    }
    double va = 0.0;
    for (double x : a)
        va += x * x;
    va /= fields;
    CHECK(std::sqrt(va) == Catch::Approx(sigma).margin(0.35));
    CHECK(pearson_corr(a, b) == Catch::Approx(std::exp(-1.0)).margin(0.06));
}
