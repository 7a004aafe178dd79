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

#include "fr3chan/random.hpp"

using namespace fr3chan;

TEST_CASE("normal_quantile matches reference values")
{
    // reference quantiles, double precision
    const std::pair<double, double> ref[] = {
        {1e-12, -7.03448382530113},  {0.001, -3.09023230616781}, {0.025, -1.95996398454005},
        {0.3, -0.524400512708041},   {0.5, 0.0},                 {0.7, 0.524400512708041},
        {0.975, 1.95996398454005},   {0.999, 3.09023230616781},  {1.0 - 1e-12, 7.03448691004784},
    };
    for (const auto &[p, q] : ref)
        CHECK(normal_quantile(p) == Catch::Approx(q).margin(1e-9));

    CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
    CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
    CHECK_THROWS_AS(normal_quantile(-0.5), DomainError);
}

TEST_CASE("normal_cdf inverts normal_quantile")
{
    for (double p : {1e-9, 0.01, 0.2, 0.5, 0.77, 0.99, 1.0 - 1e-9})
        CHECK(normal_cdf(normal_quantile(p)) == Catch::Approx(p).epsilon(1e-10));
}

TEST_CASE("uniform draws stay in (0,1) and look uniform")
{
    RandomStream rng(12345);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        const double u = rng.uniform01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == Catch::Approx(0.5).margin(0.005));
}

TEST_CASE("normal draws have correct first two moments")
{
    RandomStream rng(999);
    const int n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = rng.normal();
        s1 += x;
        s2 += x * x;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(mean == Catch::Approx(0.0).margin(0.02));
    CHECK(var == Catch::Approx(1.0).margin(0.02));
}

TEST_CASE("streams are reproducible and substreams are draw-order independent")
{
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.next_u64() == b.next_u64());

    // substream derivation must depend only on the construction seed
    RandomStream fresh(42);
    RandomStream used(42);
    for (int i = 0; i < 17; ++i)
        used.next_u64();
    CHECK(fresh.substream(3).next_u64() == used.substream(3).next_u64());

    // distinct substreams diverge
    CHECK(fresh.substream(0).next_u64() != fresh.substream(1).next_u64());
    CHECK(fresh.substream(0).next_u64() != RandomStream(43).substream(0).next_u64());
}

TEST_CASE("substream outputs are statistically independent across indices")
{
    RandomStream master(7);
    const int n = 20000;
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = master.substream(2 * i).normal();
        const double y = master.substream(2 * i + 1).normal();
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double r = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
    CHECK(std::fabs(r) < 0.02);
}
