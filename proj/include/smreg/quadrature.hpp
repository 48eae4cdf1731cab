/*
   Copyright 2026 The smreg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <numbers>
#include <span>

namespace smreg {

inline constexpr double kPi = std::numbers::pi;

/// Four-point Gauss-Legendre rule on [a, b]; exact for cubics.
template <class F>
double gauss_legendre4(F&& f, double a, double b)
{
    constexpr double x0 = 0.33998104358485626;
    constexpr double x1 = 0.86113631159405258;
    constexpr double w0 = 0.65214515486254614;
    constexpr double w1 = 0.34785484513745386;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    return half * (w1 * (f(mid - half * x1) + f(mid + half * x1)) +
                   w0 * (f(mid - half * x0) + f(mid + half * x0)));
}

/// Composite four-point Gauss rule over `cells` equal subintervals.
template <class F>
double composite_gauss4(F&& f, double a, double b, std::size_t cells)
{
    const double w = (b - a) / static_cast<double>(cells);
    double acc = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double lo = a + w * static_cast<double>(i);
        acc += gauss_legendre4(f, lo, lo + w);
    }
    return acc;
}

/// Pairwise (cascade) summation; the result depends only on the order of
/// `values`, never on how the caller produced them.
double pairwise_sum(std::span<const double> values);

}  // namespace smreg
