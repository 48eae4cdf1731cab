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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smreg/rng.hpp"
#include "smreg/signal.hpp"

namespace smreg {

/// Law of the renewal inter-arrival times tau_l. The admissible families are
/// all gamma laws (exponential and chi-squared included), which have an
/// exponential moment. `degenerate` (tau == value) is a testing hook only.
struct InterarrivalLaw {
    enum class Kind { exponential, gamma, chi_squared, degenerate };

    Kind kind = Kind::chi_squared;
    double a = 3.0;  // rate | shape | degrees of freedom | value
    double b = 0.0;  // scale (gamma only)

    static InterarrivalLaw exponential(double rate) { return {Kind::exponential, rate, 0.0}; }
    static InterarrivalLaw gamma(double shape, double scale) { return {Kind::gamma, shape, scale}; }
    static InterarrivalLaw chi_squared(double df) { return {Kind::chi_squared, df, 0.0}; }
    static InterarrivalLaw degenerate(double value) { return {Kind::degenerate, value, 0.0}; }

    /// Mean inter-arrival time (tau check).
    double mean() const;
    /// Gamma shape/scale of the law; throws for the degenerate law.
    double gamma_shape() const;
    double gamma_scale() const;
    double density(double x) const;
    void validate() const;

    friend bool operator==(const InterarrivalLaw&, const InterarrivalLaw&) = default;
};

/// Standardized (mean 0, variance 1) laws for the marks Y_i. `unit` (Y == 1)
/// is a testing hook only.
enum class MarkLaw { normal, rademacher, uniform, unit };

/// Compound Poisson jump part of the Levy process. Jump sizes are scaled so
/// that Pi(x^2) = intensity * E[J^2] = 1.
struct LevyJumps {
    enum class Shape { two_point, gaussian, exponential };

    double intensity = 1.0;
    Shape shape = Shape::two_point;

    /// Scale of a single jump: +-s for two_point, N(0, s^2), Exp with mean s.
    double jump_scale() const;
    double jump_mean() const;
    double jump_second_moment() const;
    /// Pi(x^2); equals 1 up to rounding.
    double pi_x2() const { return intensity * jump_second_moment(); }

    friend bool operator==(const LevyJumps&, const LevyJumps&) = default;
};

/// xi_t = rho1 L_t + rho2 z_t with L_t = rho_check w_t + sqrt(1 - rho_check^2) Lcheck_t.
struct NoiseSpec {
    double rho1 = 0.5;
    double rho2 = 0.5;
    double rho_check = 1.0;
    std::optional<LevyJumps> levy;
    InterarrivalLaw interarrival = InterarrivalLaw::chi_squared(3.0);
    MarkLaw marks = MarkLaw::normal;
    /// Admit the degenerate inter-arrival law and unit marks.
    bool allow_test_laws = false;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;

    friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Sampled values y_{t_j}, t_j = j/p, j = 0..n p.
struct ObservationPath {
    int n = 0;
    int p = 0;
    std::vector<double> y;

    /// y_{t_j} - y_{t_{j-1}} for j = 1..n p.
    std::vector<double> increments() const;
};

/// Renewal epochs T_k = tau_1 + ... + tau_k <= horizon.
std::vector<double> sample_renewal_times(const InterarrivalLaw& eta, double horizon,
                                         const RngStream& rng, bool allow_test_laws = false);

/// z increments over the cells (s_{m-1}, s_m] of `grid` (grid[0] = 0).
std::vector<double> sample_semimarkov_increments(std::span<const double> grid, const NoiseSpec& spec,
                                                 const RngStream& rng);

/// L increments over the cells of `grid`.
std::vector<double> sample_levy_increments(std::span<const double> grid, const NoiseSpec& spec,
                                           const RngStream& rng);

/// One observation path of dy = S dt + dxi on t_j = j/p, 0 <= j <= n p.
ObservationPath sample_observations(const SignalSpec& signal, const NoiseSpec& spec, int n, int p,
                                    const RngStream& rng);

/// Uniform grid j/p, j = 0..n p.
std::vector<double> uniform_grid(int n, int p);

std::string to_string(MarkLaw law);
std::string to_string(const InterarrivalLaw& law);
std::string to_string(const std::optional<LevyJumps>& levy);
MarkLaw parse_mark_law(const std::string& text);
InterarrivalLaw parse_interarrival(const std::string& text);
std::optional<LevyJumps> parse_levy(const std::string& text);

}  // namespace smreg
