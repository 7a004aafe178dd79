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

#ifndef fr3chan_random_H
#define fr3chan_random_H

#include <cmath>
#include <cstdint>

#include "fr3chan/types.hpp"

namespace fr3chan
{

namespace detail
{
/// splitmix64 output function; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Standard-normal quantile function (Wichura's AS 241, double precision).
/// Accurate to ~1e-15 over p in (0, 1).
inline double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("normal_quantile: p must be in (0, 1)");

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425)
    {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r + 6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) *
                        r +
                    1.3731693765509461125e+4) *
                       r +
                   1.9715909503065514427e+3) *
                      r +
                  1.3314166789178437745e+2) *
                     r +
                 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r + 3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) *
                        r +
                    5.3941960214247511077e+3) *
                       r +
                   6.8718700749205790830e+2) *
                      r +
                  4.2313330701600911252e+1) *
                     r +
                 1.0);
    }

    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0)
    {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r + 2.41780725177450611770e-1) * r +
                     1.27045825245236838258e+0) *
                        r +
                    3.64784832476320460504e+0) *
                       r +
                   5.76949722146069140550e+0) *
                      r +
                  4.63033784615654529590e+0) *
                     r +
                 1.42343711074968357734e+0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r + 1.51986665636164571966e-2) * r +
                     1.48103976427480074590e-1) *
                        r +
                    6.89767334985100004550e-1) *
                       r +
                   1.67638483018380384940e+0) *
                      r +
                  2.05319162663775882187e+0) *
                     r +
                 1.0);
    }
    else
    {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 1.24266094738807843860e-3) * r +
                     2.65321895265761230930e-2) *
                        r +
                    2.96560571828504891230e-1) *
                       r +
                   1.78482653991729133580e+0) *
                      r +
                  5.46378491116411436990e+0) *
                     r +
                 6.65790464350110377720e+0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r + 1.84631831751005468180e-5) * r +
                     7.86869131145613259100e-4) *
                        r +
                    1.48753612908506148525e-2) *
                       r +
                   1.36929880922735805310e-1) *
                      r +
                  5.99832206555887937690e-1) *
                     r +
                 1.0);
    }
    return (q < 0.0) ? -value : value;
}

/// Standard-normal CDF.
inline double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / 1.4142135623730951);
}

/// Standard-normal density.
inline double normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) / 2.5066282746310002;
}

/// Counter-based pseudorandom stream (splitmix64 sequence). Draws are a pure
/// function of (seed, draw index), so results do not depend on platform or on
/// how work is split across threads; substream() deterministically derives an
/// independent stream per link/position index.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), state_(seed)
    {
    }

    std::uint64_t next_u64()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform draw in the open interval (0, 1).
    double uniform01()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform01();
    }

    /// Standard normal via the inverse-CDF transform.
    double normal()
    {
        return normal_quantile(uniform01());
    }

    /// Exponential with unit mean.
    double exponential()
    {
        return -std::log(uniform01());
    }

    /// Independent child stream for element `index`; derivation depends only
    /// on this stream's construction seed, not on draws made so far.
    RandomStream substream(std::uint64_t index) const
    {
        return RandomStream(detail::mix64(detail::mix64(seed_ ^ 0xA3EC647659359ACDULL) + index));
    }

    std::uint64_t seed() const
    {
        return seed_;
    }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace fr3chan

#endif
