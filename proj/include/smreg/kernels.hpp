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

// OpenMP data-parallel kernels shared by the estimator and the risk harness.
// Every output element is produced by exactly one thread with a fixed
// summation order, so results do not depend on the thread count. Serial
// reference versions live in reference.hpp.

#include <span>
#include <vector>

namespace smreg {

/// Lookup table for phi_j(t_i) with t_i = i/p. Arguments are reduced as
/// ([j/2] * i) mod p, so no angle is ever formed from a large product.
class GridBasis {
public:
    explicit GridBasis(int p);

    int p() const { return p_; }
    double value(int j, long long i) const;
    /// sqrt(2) cos(2 pi m / p) and sqrt(2) sin(2 pi m / p) for 0 <= m < p.
    double cos_at(long long m) const { return cos_[static_cast<std::size_t>(m)]; }
    double sin_at(long long m) const { return sin_[static_cast<std::size_t>(m)]; }

private:
    int p_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// c_j = (1/p) sum_{i=1}^{p} values[i-1] phi_j(t_i) for j = 1..jmax.
std::vector<double> project(const GridBasis& basis, std::span<const double> values, int jmax);

/// f(t_i) = sum_j coef[j-1] phi_j(t_i) for i = 1..p.
std::vector<double> synthesize(const GridBasis& basis, std::span<const double> coef);

/// Sums of path increments by grid residue: out[i-1] = sum_k dy[k p + i - 1],
/// i = 1..p. `increments` holds n*p values.
std::vector<double> fold_increments(std::span<const double> increments, int p);

/// Number of OpenMP threads a parallel region would use (1 without OpenMP).
int available_threads();

/// Set the default thread count for subsequent parallel regions; n <= 0 keeps the
/// runtime default.
void set_threads(int n);

}  // namespace smreg
