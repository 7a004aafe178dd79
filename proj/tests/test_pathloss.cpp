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

#include "fr3chan/pathloss.hpp"
#include "fr3chan/random.hpp"

using namespace fr3chan;

TEST_CASE("fspl closed-form values at the three sounding frequencies")
{
    CHECK(fspl(100.0, 6.9e9) == Catch::Approx(89.2247650366).margin(1e-8));
    CHECK(fspl(100.0, 8.3e9) == Catch::Approx(90.8293450694).margin(1e-8));
    CHECK(fspl(100.0, 14.5e9) == Catch::Approx(95.6751432666).margin(1e-8));

    CHECK_THROWS_AS(fspl(0.0, 1e9), DomainError);
    CHECK_THROWS_AS(fspl(100.0, -1.0), DomainError);
}

TEST_CASE("fspl distance and frequency scaling laws")
{
    RandomStream rng(31);
    for (int i = 0; i < 200; ++i)
    {
        const double d = rng.uniform(1.0, 5000.0);
        const double f1 = rng.uniform(1e9, 30e9);
        const double f2 = rng.uniform(1e9, 30e9);
        CHECK(fspl(10.0 * d, f1) - fspl(d, f1) == Catch::Approx(20.0).margin(1e-9));
        CHECK(fspl(d, f1) - fspl(d, f2) == Catch::Approx(20.0 * std::log10(f1 / f2)).margin(1e-9));
    }
}

TEST_CASE("path_loss identities")
{
    const PathLossParams umi15los{90.2, 100.0, 2.5, 3.3};
    CHECK(path_loss(umi15los, 100.0, 0.0) == Catch::Approx(90.2).margin(1e-12));
    CHECK(path_loss(umi15los, 1000.0, 0.0) == Catch::Approx(115.2).margin(1e-12));
    CHECK(path_loss(umi15los, 100.0, 4.5) == Catch::Approx(90.2 + 4.5).margin(1e-12));
    CHECK_THROWS_AS(path_loss(umi15los, 0.0, 0.0), DomainError);

    // strictly increasing in distance for positive exponent
    double prev = path_loss(umi15los, 1.0);
    for (double d = 2.0; d < 4000.0; d *= 1.7)
    {
        const double cur = path_loss(umi15los, d);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("max_range inverts path_loss")
{
    const PathLossParams umi15los{90.2, 100.0, 2.5, 3.3};
    CHECK(max_range(umi15los, 115.2) == Catch::Approx(1000.0).epsilon(1e-12));
    CHECK(max_range(umi15los, 90.2) == Catch::Approx(100.0).epsilon(1e-12));

    const PathLossParams uma7nlos{103.0, 100.0, 6.8, 6.5};
    CHECK(max_range(uma7nlos, 109.8) == Catch::Approx(125.89254117941671).epsilon(1e-12));

    CHECK_THROWS_AS(max_range({100.0, 100.0, 0.0, 1.0}, 110.0), DomainError);

    RandomStream rng(77);
    for (int i = 0; i < 200; ++i)
    {
        const PathLossParams p{rng.uniform(40.0, 120.0), 100.0, rng.uniform(1.5, 7.5), 0.0};
        const double d = rng.uniform(10.0, 3000.0);
        const double s = rng.uniform(-10.0, 10.0);
        CHECK(max_range(p, path_loss(p, d, s), s) == Catch::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("received_power arithmetic")
{
    CHECK(received_power({43.0, 0.0, 0.0, 400e6}, 115.2) == Catch::Approx(-72.2).margin(1e-12));
    CHECK(received_power({43.0, 10.0, 0.0, 400e6}, 89.22) == Catch::Approx(-36.22).margin(1e-12));
    const LinkBudget b{17.0, 3.0, 5.0, 1e6};
    CHECK(received_power(b, 0.0) == Catch::Approx(20.0).margin(1e-12));
}
