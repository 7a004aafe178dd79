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

#ifndef fr3chan_linalg_H
#define fr3chan_linalg_H

#include <algorithm>
#include <array>
#include <cmath>

#include "fr3chan/types.hpp"

namespace fr3chan
{

/// Dense row-major matrix for the n<=4 symmetric problems of this library.
using Mat4 = std::array<std::array<double, 4>, 4>;

struct EigenSym4
{
    std::array<double, 4> values{}; ///< ascending
    Mat4 vectors{};                 ///< column k is the eigenvector of values[k]
};

/// Cyclic Jacobi eigensolver for the leading n-by-n symmetric block.
inline EigenSym4 eigen_sym(Mat4 a, int n)
{
    if (n < 1 || n > 4)
        throw DomainError("eigen_sym: order must be in [1, 4]");

    Mat4 v{};
    for (int i = 0; i < n; ++i)
        v[i][i] = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep)
    {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off += a[p][q] * a[p][q];
        if (off < 1e-30)
            break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
            {
                if (std::fabs(a[p][q]) < 1e-300)
                    continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = a[q][p] = 0.0;
                for (int k = 0; k < n; ++k)
                {
                    if (k == p || k == q)
                        continue;
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = a[p][k] = c * akp - s * akq;
                    a[k][q] = a[q][k] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k)
                {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }

    EigenSym4 out;
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.begin() + n, [&](int i, int j) { return a[i][i] < a[j][j]; });
    for (int k = 0; k < n; ++k)
    {
        out.values[k] = a[order[k]][order[k]];
        for (int r = 0; r < n; ++r)
            out.vectors[r][k] = v[r][order[k]];
    }
    return out;
}

/// Smallest eigenvalue of the leading n-by-n symmetric block.
inline double min_eigenvalue(const Mat4 &a, int n)
{
    return eigen_sym(a, n).values[0];
}

/// Projects the leading n-by-n block onto the positive semidefinite cone:
/// negative eigenvalues are clipped to zero and the diagonal is renormalized
/// back to 1. Input is returned untouched when its smallest eigenvalue is
/// already >= -1e-12.
inline Mat4 psd_project_unit_diag(const Mat4 &a, int n)
{
    const EigenSym4 e = eigen_sym(a, n);
    if (e.values[0] >= -1e-12)
        return a;

    // build the upper triangle and mirror so the result is exactly symmetric
    Mat4 b{};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
        {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += e.vectors[i][k] * std::max(e.values[k], 0.0) * e.vectors[j][k];
            b[i][j] = b[j][i] = s;
        }

    std::array<double, 4> d{};
    for (int i = 0; i < n; ++i)
        d[i] = std::sqrt(std::max(b[i][i], 1e-300));

    Mat4 out{};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out[i][j] = out[j][i] = (i == j) ? 1.0 : std::clamp(b[i][j] / (d[i] * d[j]), -1.0, 1.0);
    return out;
}

/// Lower-triangular factor L with L*L^T equal to the leading n-by-n block.
/// Tolerates positive semidefinite input (zero pivots produce zero columns).
inline Mat4 cholesky_semidef(const Mat4 &a, int n)
{
    Mat4 l{};
    for (int j = 0; j < n; ++j)
    {
        double d = a[j][j];
        for (int k = 0; k < j; ++k)
            d -= l[j][k] * l[j][k];
        if (d < -1e-9)
            throw DomainError("cholesky_semidef: matrix is not positive semidefinite");
        l[j][j] = std::sqrt(std::max(d, 0.0));
        for (int i = j + 1; i < n; ++i)
        {
            if (l[j][j] < 1e-12)
            {
                l[i][j] = 0.0;
                continue;
            }
            double s = a[i][j];
            for (int k = 0; k < j; ++k)
                s -= l[i][k] * l[j][k];
            l[i][j] = s / l[j][j];
        }
    }
    return l;
}

} // namespace fr3chan

#endif
