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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "smreg/noise.hpp"
#include "smreg/renewal.hpp"

using namespace smreg;

namespace {

// Closed form for gamma(2, 1) arrivals: the Laplace transform of the renewal
// density is g/(1 - g) = 1/(s (s + 2)), which inverts to (1 - e^{-2x}) / 2.
double gamma2_density(double x) { return 0.5 * (1.0 - std::exp(-2.0 * x)); }

}  // namespace

TEST_CASE("Poisson arrivals have a flat renewal density")
{
    for (double h : {1e-3, 5e-3, 0.02}) {
        const auto sol = solve_renewal_density(InterarrivalLaw::exponential(1.0), h, 20.0);
        double worst = 0.0;
        for (double r : sol.rho) worst = std::max(worst, std::abs(r - 1.0));
        CHECK(worst < 1e-6);
        CHECK(sol.upsilon_l1 < 1e-4);
        CHECK(sol.tail_converged);
    }
    // scaled law: rho == rate
    const auto slow = solve_renewal_density(InterarrivalLaw::exponential(0.25));
    for (double r : slow.rho) REQUIRE(r == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("gamma(2, 1) arrivals match the closed form")
{
    const auto sol = solve_renewal_density(InterarrivalLaw::gamma(2.0, 1.0), 1e-3, 40.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.rho.size(); ++i) worst = std::max(worst, std::abs(sol.rho[i] - gamma2_density(sol.x(i))));
    CHECK(worst < 1e-4);
    CHECK(sol.rho[1000] == doctest::Approx(0.432332).epsilon(1e-5));
    CHECK(sol.upsilon_l1 == doctest::Approx(0.25).epsilon(1e-3 / 0.25));
    CHECK(sol.tau_bar == doctest::Approx(2.0));
    CHECK(sol.rho_sup == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("chi-squared arrivals converge to 1 / tau_bar")
{
    const auto sol = solve_renewal_density(InterarrivalLaw::chi_squared(3.0), 0.01, 100.0);
    CHECK(sol.tail_deviation < 1e-6);
    CHECK(sol.tail_converged);
    CHECK(sol.rho.back() == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
    CHECK(std::isfinite(sol.upsilon_l1));
    for (double r : sol.rho) REQUIRE(r >= 0.0);
}

TEST_CASE("renewal density is nonnegative and the tail converges for admissible laws")
{
    for (const auto& law : {InterarrivalLaw::exponential(2.0), InterarrivalLaw::gamma(3.0, 0.5),
                            InterarrivalLaw::gamma(1.5, 2.0), InterarrivalLaw::chi_squared(2.0),
                            InterarrivalLaw::chi_squared(5.0)}) {
        const auto sol = solve_renewal_density(law);
        CHECK(*std::min_element(sol.rho.begin(), sol.rho.end()) >= 0.0);
        CHECK(sol.tail_converged);
        CHECK(std::isfinite(sol.upsilon_l1));
        CHECK(sol.rho_sup >= 1.0 / law.mean() - 1e-9);
    }
}

TEST_CASE("grid refinement converges")
{
    const auto law = InterarrivalLaw::gamma(2.0, 1.0);
    const double u0 = solve_renewal_density(law, 0.04, 40.0).upsilon_l1;
    const double u1 = solve_renewal_density(law, 0.02, 40.0).upsilon_l1;
    const double u2 = solve_renewal_density(law, 0.01, 40.0).upsilon_l1;
    // the change from halving h shrinks: it stays below 4 x the previous change (the error estimate)
    CHECK(std::abs(u2 - u1) < std::max(4.0 * std::abs(u1 - u0), 1e-12));
    CHECK(std::abs(u2 - 0.25) < 1e-3);
}

TEST_CASE("solver input checks")
{
    const auto law = InterarrivalLaw::exponential(1.0);
    CHECK_THROWS_AS(solve_renewal_density(law, 0.05, 20.0), std::invalid_argument);  // h > tau/50
    CHECK_THROWS_AS(solve_renewal_density(law, 0.01, 10.0), std::invalid_argument);  // T < 20 tau
    CHECK_THROWS_AS(solve_renewal_density(InterarrivalLaw::chi_squared(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(solve_renewal_density(InterarrivalLaw::degenerate(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(solve_renewal_density([](double x) { return x < 1.0 ? -0.1 : 0.0; }, 0.01, 20.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_renewal_density([](double x) { return 2.0 * std::exp(-x); }, 0.01, 20.0),
                    std::invalid_argument);
}

TEST_CASE("generic density overload agrees with the closed-form law")
{
    const auto generic = solve_renewal_density([](double x) { return x * std::exp(-x); }, 1e-3, 40.0);
    CHECK(generic.tau_bar == doctest::Approx(2.0).epsilon(1e-6));
    double worst = 0.0;
    for (std::size_t i = 0; i < generic.rho.size(); ++i) {
        worst = std::max(worst, std::abs(generic.rho[i] - gamma2_density(generic.x(i))));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("solver agrees with the renewal-epoch histogram")
{
    const auto law = InterarrivalLaw::gamma(2.0, 1.0);
    const double width = 0.25;
    const int bins = 20;
    const int paths = 100000;
    std::vector<double> counts(bins, 0.0);
    for (std::uint32_t r = 0; r < paths; ++r) {
        for (double t : sample_renewal_times(law, bins * width, RngStream{77, r})) {
            const auto b = static_cast<std::size_t>(t / width);
            if (b < counts.size()) counts[b] += 1.0;
        }
    }
    const auto sol = solve_renewal_density(law, 1e-3, 40.0);
    const auto per_bin = static_cast<std::size_t>(std::llround(width / sol.step));
    for (int b = 0; b < bins; ++b) {
        // bin average of the solver's rho by the trapezoid rule
        double avg = 0.0;
        const std::size_t lo = static_cast<std::size_t>(b) * per_bin;
        for (std::size_t i = lo; i < lo + per_bin; ++i) avg += 0.5 * (sol.rho[i] + sol.rho[i + 1]);
        avg /= static_cast<double>(per_bin);
        const double est = counts[static_cast<std::size_t>(b)] / (paths * width);
        const double se = std::sqrt(counts[static_cast<std::size_t>(b)]) / (paths * width);
        CHECK(std::abs(est - avg) <= 3.0 * se);
    }
}

TEST_CASE("noise scalars")
{
    CHECK(proxy_variance(0.5, 0.5, 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(proxy_variance(1.0, 0.0, 7.0) == 1.0);
    CHECK(proxy_variance(0.0, 1.0, 2.0) == 0.5);
    CHECK_THROWS_AS(proxy_variance(0.5, 0.5, 0.0), std::invalid_argument);
    CHECK(kappa(0.5, 0.5, 1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(kappa(1.0, 0.0, 5.0) == 1.0);
    CHECK(kappa(0.0, 1.0, 0.5) == 0.5);

    NoiseSpec spec;
    const auto sol = solve_renewal_density(spec.interarrival);
    const auto s = noise_scalars(spec, sol, 1.0);
    CHECK(s.sigma_q == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(s.admissible());
    CHECK(s.kappa_q >= s.sigma_q);
    CHECK_FALSE(noise_scalars(spec, sol, 0.3).admissible());
}
