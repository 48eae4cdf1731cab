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

#include "smreg/kernels.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "smreg/quadrature.hpp"

namespace smreg {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr long long kParallelGrain = 1 << 15;

}  // namespace

GridBasis::GridBasis(int p) : p_(p), cos_(static_cast<std::size_t>(p)), sin_(static_cast<std::size_t>(p))
{
    if (p < 1) throw std::invalid_argument("GridBasis: p must be positive");
    for (int m = 0; m < p; ++m) {
        const double angle = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(p);
        cos_[m] = kSqrt2 * std::cos(angle);
        sin_[m] = kSqrt2 * std::sin(angle);
    }
}

double GridBasis::value(int j, long long i) const
{
    if (j == 1) return 1.0;
    const long long k = j / 2;
    long long m = (k % p_) * (i % p_) % p_;
    if (m < 0) m += p_;
    return (j % 2 == 0) ? cos_[m] : sin_[m];
}

std::vector<double> project(const GridBasis& basis, std::span<const double> values, int jmax)
{
    const int p = basis.p();
    if (static_cast<int>(values.size()) != p) throw std::invalid_argument("project: expected p grid values");
    std::vector<double> out(static_cast<std::size_t>(jmax > 0 ? jmax : 0));
    const double inv_p = 1.0 / static_cast<double>(p);

#pragma omp parallel for schedule(static) if (static_cast<long long>(jmax) * p > kParallelGrain)
    for (int j = 1; j <= jmax; ++j) {
        double acc = 0.0;
        if (j == 1) {
            for (int i = 0; i < p; ++i) acc += values[i];
        } else {
            // phase index ([j/2] * i) mod p, advanced incrementally
            const long long k = (j / 2) % p;
            long long m = 0;
            const bool even = (j % 2 == 0);
            for (int i = 1; i <= p; ++i) {
                m += k;
                if (m >= p) m -= p;
                acc += values[i - 1] * (even ? basis.cos_at(m) : basis.sin_at(m));
            }
        }
        out[j - 1] = acc * inv_p;
    }
    return out;
}

std::vector<double> synthesize(const GridBasis& basis, std::span<const double> coef)
{
    const int p = basis.p();
    const int jmax = static_cast<int>(coef.size());
    std::vector<double> out(static_cast<std::size_t>(p));

#pragma omp parallel for schedule(static) if (static_cast<long long>(jmax) * p > kParallelGrain)
    for (int i = 1; i <= p; ++i) {
        double acc = jmax > 0 ? coef[0] : 0.0;
        // phase ([j/2] i) mod p advances by i for every frequency; j is still summed in ascending order
        const long long step = i % p;
        long long m = 0;
        for (int j = 2; j <= jmax; ++j) {
            if (j % 2 == 0) {
                m += step;
                if (m >= p) m -= p;
            }
            const double c = coef[j - 1];
            if (c != 0.0) acc += c * (j % 2 == 0 ? basis.cos_at(m) : basis.sin_at(m));
        }
        out[i - 1] = acc;
    }
    return out;
}

std::vector<double> fold_increments(std::span<const double> increments, int p)
{
    if (p < 1 || increments.size() % static_cast<std::size_t>(p) != 0) {
        throw std::invalid_argument("fold_increments: length is not a multiple of p");
    }
    const std::size_t periods = increments.size() / static_cast<std::size_t>(p);
    std::vector<double> out(static_cast<std::size_t>(p), 0.0);

#pragma omp parallel for schedule(static) if (static_cast<long long>(increments.size()) > kParallelGrain)
    for (int i = 0; i < p; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < periods; ++k) acc += increments[k * static_cast<std::size_t>(p) + i];
        out[i] = acc;
    }
    return out;
}

int available_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n)
{
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace smreg
