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

#include <cmath>
#include <cstddef>
#include <vector>

namespace smreg::testing {

struct Summary {
    double mean = 0.0;
    double se = 0.0;
};

// Sample mean and its standard error, accumulated in long double.
inline Summary summarize(const std::vector<double>& xs)
{
    long double s = 0.0L;
    for (double x : xs) s += x;
    const long double n = static_cast<long double>(xs.size());
    const long double m = s / n;
    long double q = 0.0L;
    for (double x : xs) q += (x - m) * (x - m);
    const long double var = q / (n - 1.0L);
    return {static_cast<double>(m), static_cast<double>(std::sqrt(var / n))};
}

inline bool within_se(const Summary& s, double target, double k = 3.0)
{
    return std::abs(s.mean - target) <= k * s.se;
}

}  // namespace smreg::testing
