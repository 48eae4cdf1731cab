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

#include <functional>
#include <vector>

#include "smreg/noise.hpp"

namespace smreg {

/// Renewal density rho on the grid x_i = i h, 0 <= i <= T/h, and the
/// summaries of its deviation Upsilon = rho - 1/tau_bar.
struct RenewalSolution {
    double step = 0.0;
    double horizon = 0.0;
    std::vector<double> rho;
    double tau_bar = 0.0;
    /// ||Upsilon||_1: trapezoid over [0, T] plus the extrapolated tail.
    double upsilon_l1 = 0.0;
    double upsilon_tail = 0.0;
    /// |rho|_* = max over the grid.
    double rho_sup = 0.0;
    /// |rho(T) - 1/tau_bar| and whether it is within the tolerance.
    double tail_deviation = 0.0;
    bool tail_converged = false;

    double x(std::size_t i) const { return static_cast<double>(i) * step; }
    double upsilon(std::size_t i) const { return rho[i] - 1.0 / tau_bar; }
};

struct RenewalOptions {
    double tail_tolerance = 1e-6;
};

/// Solves rho = g + g * rho (Volterra equation of the second kind) by product
/// trapezoidal integration: rho is piecewise linear between nodes and the
/// kernel is integrated exactly against it on every cell.
///
/// Requires h <= tau_bar/50 and T >= 20 tau_bar; throws std::invalid_argument
/// otherwise, and for laws without a bounded density.
RenewalSolution solve_renewal_density(const InterarrivalLaw& eta, double h, double T,
                                      const RenewalOptions& options = {});

/// Same, for an arbitrary density g on [0, inf); cell moments by four-point
/// Gauss quadrature. Throws on negative, non-finite or non-normalized input.
RenewalSolution solve_renewal_density(const std::function<double(double)>& g, double h, double T,
                                      const RenewalOptions& options = {});

/// sigma_Q = rho1^2 + rho2^2 / tau_bar.
double proxy_variance(double rho1, double rho2, double tau_bar);

/// kappa_Q = rho1^2 + rho2^2 |rho|_*.
double kappa(double rho1, double rho2, double rho_sup);

struct NoiseScalars {
    double sigma_q = 0.0;
    double kappa_q = 0.0;
    double varsigma_star = 1.0;

    /// sigma_Q <= varsigma_star, the admissibility bound of the noise family.
    bool admissible() const { return sigma_q <= varsigma_star; }
};

NoiseScalars noise_scalars(const NoiseSpec& spec, const RenewalSolution& renewal, double varsigma_star);

/// Default grid for a law: h = tau_bar/200, T = 40 tau_bar.
RenewalSolution solve_renewal_density(const InterarrivalLaw& eta);

}  // namespace smreg
