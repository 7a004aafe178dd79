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

#include "fr3chan/linalg.hpp"
#include "fr3chan/random.hpp"

using namespace fr3chan;

namespace
{
Mat4 matmul_t(const Mat4 &l, int n)
{
    Mat4 out{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += l[i][k] * l[j][k];
            out[i][j] = s;
        }
    return out;
}
} // namespace

TEST_CASE("eigen_sym solves diagonal and known matrices")
{
    Mat4 d{};
    d[0][0] = 3.0;
    d[1][1] = -1.0;
    d[2][2] = 0.5;
    auto e = eigen_sym(d, 3);
    CHECK(e.values[0] == Catch::Approx(-1.0));
    CHECK(e.values[1] == Catch::Approx(0.5));
    CHECK(e.values[2] == Catch::Approx(3.0));

    // reference spectra for two measured correlation matrices
    Mat4 sma15los = {{{1.0, -0.27, -0.66, 0.08}, {-0.27, 1.0, 0.80, 0.15}, {-0.66, 0.80, 1.0, 0.09}, {0.08, 0.15, 0.09, 1.0}}};
    auto e1 = eigen_sym(sma15los, 4);
    CHECK(e1.values[0] == Catch::Approx(0.084913473736984).margin(1e-12));
    CHECK(e1.values[1] == Catch::Approx(0.658250105990359).margin(1e-12));
    CHECK(e1.values[2] == Catch::Approx(1.068505375074301).margin(1e-12));
    CHECK(e1.values[3] == Catch::Approx(2.188331045198355).margin(1e-12));

    Mat4 uma8nlos = {{{1.0, -0.18, 0.27, 0.67}, {-0.18, 1.0, -0.38, -0.66}, {0.27, -0.38, 1.0, 0.55}, {0.67, -0.66, 0.55, 1.0}}};
    auto e2 = eigen_sym(uma8nlos, 4);
    CHECK(e2.values[0] == Catch::Approx(0.128974687533027).margin(1e-12));
    CHECK(e2.values[3] == Catch::Approx(2.397407992297008).margin(1e-12));
}

TEST_CASE("eigen_sym reconstructs random symmetric matrices")
{
    RandomStream rng(5);
    for (int trial = 0; trial < 50; ++trial)
    {
        Mat4 a{};
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                a[i][j] = a[j][i] = rng.uniform(-1.0, 1.0);
        auto e = eigen_sym(a, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
            {
                double s = 0.0;
                for (int k = 0; k < 4; ++k)
                    s += e.vectors[i][k] * e.values[k] * e.vectors[j][k];
                REQUIRE(s == Catch::Approx(a[i][j]).margin(1e-12));
            }
    }
}

TEST_CASE("psd_project_unit_diag clips and renormalizes")
{
    // 2x2 with |r| > 1: eigenvalues 2.2 and -0.2, projects to perfect correlation
    Mat4 m{};
    m[0][0] = m[1][1] = 1.0;
    m[0][1] = m[1][0] = 1.2;
    Mat4 r = psd_project_unit_diag(m, 2);
    CHECK(r[0][0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(r[0][1] == Catch::Approx(1.0).margin(1e-14));
    CHECK(r[1][0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(r[1][1] == Catch::Approx(1.0).margin(1e-14));

    // already PSD input comes back bit-identical
    Mat4 id{};
    for (int i = 0; i < 4; ++i)
        id[i][i] = 1.0;
    Mat4 rid = psd_project_unit_diag(id, 4);
    CHECK(rid == id);

    // indefinite chain matrix, repaired values from an eigendecomposition oracle
    Mat4 chain = {{{1.0, 0.9, 0.0, 0.0}, {0.9, 1.0, 0.9, 0.0}, {0.0, 0.9, 1.0, 0.9}, {0.0, 0.0, 0.9, 1.0}}};
    REQUIRE(min_eigenvalue(chain, 4) == Catch::Approx(-0.456230589874906).margin(1e-12));
    Mat4 fixed = psd_project_unit_diag(chain, 4);
    CHECK(fixed[0][1] == Catch::Approx(0.717037833702).margin(1e-9));
    CHECK(fixed[0][2] == Catch::Approx(0.091667931822).margin(1e-9));
    CHECK(fixed[0][3] == Catch::Approx(-0.05931004704).margin(1e-9));
    CHECK(fixed[1][2] == Catch::Approx(0.630809209004).margin(1e-9));
    CHECK(min_eigenvalue(fixed, 4) >= -1e-12);

    // idempotent
    CHECK(psd_project_unit_diag(fixed, 4) == fixed);
}

TEST_CASE("cholesky_semidef factors PSD matrices")
{
    Mat4 a = {{{1.0, -0.27, -0.66, 0.08}, {-0.27, 1.0, 0.80, 0.15}, {-0.66, 0.80, 1.0, 0.09}, {0.08, 0.15, 0.09, 1.0}}};
    Mat4 l = cholesky_semidef(a, 4);
    Mat4 llt = matmul_t(l, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
        {
            CHECK(llt[i][j] == Catch::Approx(a[i][j]).margin(1e-12));
            if (j > i)
                CHECK(l[i][j] == 0.0);
        }

    // semidefinite: perfect correlation has a zero pivot
    Mat4 perfect{};
    perfect[0][0] = perfect[1][1] = 1.0;
    perfect[0][1] = perfect[1][0] = 1.0;
    Mat4 lp = cholesky_semidef(perfect, 2);
    Mat4 lltp = matmul_t(lp, 2);
    CHECK(lltp[0][1] == Catch::Approx(1.0).margin(1e-12));
    CHECK(lltp[1][1] == Catch::Approx(1.0).margin(1e-12));

    Mat4 indef{};
    indef[0][0] = indef[1][1] = 1.0;
    indef[0][1] = indef[1][0] = 1.2;
    CHECK_THROWS_AS(cholesky_semidef(indef, 2), DomainError);
}
