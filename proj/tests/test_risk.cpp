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

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "smreg/risk.hpp"

using namespace smreg;

namespace {

ExperimentConfig small_config(int p = 101, int reps = 64)
{
    ExperimentConfig c;
    c.n_values = {20};
    c.p = p;
    c.replications = reps;
    c.estimator.kstar0 = 3;
    return c;
}

RiskOptions quiet_options(bool oracle = true) { return RiskOptions{.with_oracle = oracle, .timing = false, .estimator = {}}; }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_row(const RiskRow& a, const RiskRow& b)
{
    return a.n == b.n && a.p == b.p && a.replications == b.replications && same_bits(a.r_bar, b.r_bar) &&
           same_bits(a.r_bar_se, b.r_bar_se) && same_bits(a.oracle, b.oracle) && same_bits(a.oracle_se, b.oracle_se) &&
           a.oracle_index == b.oracle_index && same_bits(a.mean_sigma_hat, b.mean_sigma_hat);
}

// ((2k+1) r)^(1/(2k+1)) (k / ((k+1) pi))^(2k/(2k+1)) in 50-digit arithmetic.
double pinsker_reference(int k, double r)
{
    using big = boost::multiprecision::cpp_bin_float_50;
    const big kk = k;
    const big e = 2 * kk + 1;
    const big pi = boost::math::constants::pi<big>();
    const big v = pow(e * big(r), 1 / e) * pow(kk / ((kk + 1) * pi), 2 * kk / e);
    return static_cast<double>(v);
}

// Smallest q with q^6 >= n^5, by exact integer arithmetic.
int h5_floor(int n)
{
    const unsigned __int128 target = static_cast<unsigned __int128>(n) * n * n * n * n;
    int q = 1;
    while (true) {
        const unsigned __int128 qq = q;
        if (qq * qq * qq * qq * qq * qq >= target) return q;
        ++q;
    }
}

}  // namespace

TEST_CASE("the harness scores an exact estimator at zero")
{
    auto c = small_config();
    const auto truth = sample_on_grid(c.signal, c.p);
    RiskOptions opt = quiet_options(false);
    opt.estimator = [&](const ObservationPath&) { return truth; };
    const auto row = evaluate_risk(c, 20, opt);
    CHECK(row.r_bar == 0.0);
    CHECK(row.r_bar_se == 0.0);
    CHECK(std::isnan(row.oracle));
    CHECK(row.seconds == 0.0);

    opt.estimator = [&](const ObservationPath&) { return std::vector<double>(3, 0.0); };
    CHECK_THROWS_AS(evaluate_risk(c, 20, opt), std::invalid_argument);
}

TEST_CASE("a constant estimator has the squared bias as risk")
{
    auto c = small_config();
    const auto truth = sample_on_grid(c.signal, c.p);
    RiskOptions opt = quiet_options(false);
    opt.estimator = [&](const ObservationPath&) { return std::vector<double>(truth.size(), 0.0); };
    const auto row = evaluate_risk(c, 20, opt);
    CHECK(row.r_bar == doctest::Approx(discrete_norm_sq(truth, c.p)).epsilon(1e-14));
    CHECK(row.r_rel == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("with a single candidate the oracle is the selected estimator")
{
    for (int p : {101, 100}) {
        auto c = small_config(p);
        c.estimator.kstar = 1;
        c.estimator.eps = 0.9;  // m = 1
        REQUIRE(weight_family_for(c, 20).nu() == 1);
        const auto row = evaluate_risk(c, 20, quiet_options());
        CHECK(row.oracle_index == 0);
        if (p % 2 == 1) {
            // coefficient-space loss versus grid-space loss: equal up to rounding
            CHECK(row.oracle == doctest::Approx(row.r_bar).epsilon(1e-10));
        } else {
            CHECK(row.oracle == row.r_bar);
        }
    }
}

TEST_CASE("noise-free oracle equals the deterministic minimum")
{
    for (int p : {101, 64}) {
        auto c = small_config(p, 40);
        c.noise.rho1 = 0.0;
        c.noise.rho2 = 0.0;
        const auto row = evaluate_risk(c, 20, quiet_options());
        CHECK(row.oracle_se == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

        const auto truth = sample_on_grid(c.signal, p);
        const auto fam = weight_family_for(c, 20);
        const auto est = theta_hat(sample_observations(c.signal, c.noise, 20, p, RngStream{}));
        long double best = std::numeric_limits<long double>::infinity();
        for (const auto& w : fam.weights) {
            long double acc = 0.0L;
            for (int i = 1; i <= p; ++i) {
                const long double d = weighted_estimate_at(w, est, static_cast<double>(i) / p) - truth[static_cast<std::size_t>(i - 1)];
                acc += d * d;
            }
            best = std::min(best, acc / p);
        }
        CHECK(row.oracle == doctest::Approx(static_cast<double>(best)).epsilon(1e-9));
        CHECK(row.r_bar >= row.oracle * (1.0 - 1e-12));
    }
}

TEST_CASE("risk evaluation is reproducible and thread-count invariant")
{
    auto c = small_config(101, 70);  // three blocks, the last one partial
    set_threads(1);
    const auto a = evaluate_risk(c, 20, quiet_options());
    const auto b = evaluate_risk(c, 20, quiet_options());
    set_threads(4);
    const auto d = evaluate_risk(c, 20, quiet_options());
    set_threads(0);
    CHECK(same_row(a, b));
    CHECK(same_row(a, d));

    c.seed = 2;
    CHECK_FALSE(same_bits(evaluate_risk(c, 20, quiet_options()).r_bar, a.r_bar));
}

TEST_CASE("risk decreases with the observation horizon")
{
    auto c = small_config(1001, 100);
    c.estimator.kstar0 = 100;
    const double r20 = empirical_risk(c, 20);
    const double r100 = empirical_risk(c, 100);
    const double r400 = empirical_risk(c, 400);
    CHECK(r100 < r20);
    CHECK(r400 < r100);
}

TEST_CASE("test-only noise laws are refused for estimation")
{
    auto c = small_config();
    c.noise.allow_test_laws = true;
    c.noise.interarrival = InterarrivalLaw::degenerate(1.0);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(evaluate_risk(c, 20, quiet_options()), std::invalid_argument);
    CHECK_THROWS_AS(estimate_once(c, 20, 0), std::invalid_argument);
}

TEST_CASE("relative risk")
{
    const auto half_cos = SignalSpec::trig_polynomial({0.0, 0.5});
    CHECK(relative_risk(0.0398, half_cos, 101) == doctest::Approx(0.1592).epsilon(1e-12));
    CHECK(relative_risk(0.0398, SignalSpec::benchmark(), 100001) == doctest::Approx(0.0398 * 24.0).epsilon(1e-6));
    CHECK(0.0398 / 0.1883601 == doctest::Approx(0.2113).epsilon(1e-3));
    CHECK_THROWS_AS(relative_risk(0.1, SignalSpec::trig_polynomial({0.0}), 11), std::domain_error);
}

TEST_CASE("Pinsker constant")
{
    for (int k = 1; k <= 6; ++k) {
        for (double r : {1e-6, 0.5, 1.0, 3.0, 40.0}) {
            CHECK(pinsker_constant(k, r) == doctest::Approx(pinsker_reference(k, r)).epsilon(1e-13));
        }
    }
    CHECK(pinsker_constant(1, 1.0) == doctest::Approx(0.4236).epsilon(1e-4));
    CHECK(pinsker_constant(2, 1.0) == doctest::Approx(0.39921).epsilon(1e-5));
    CHECK(pinsker_constant(3, 0.0) == 0.0);
    CHECK(pinsker_constant(1, 1e-12) < 1e-3);
    CHECK_THROWS_AS(pinsker_constant(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(pinsker_constant(1, -1.0), std::invalid_argument);
}

TEST_CASE("grid size rule")
{
    ExperimentConfig c;
    c.p = 0;
    c.p_min = 3;
    for (int n = 1; n <= 3000; ++n) {
        const int q = c.resolve_p(n);
        REQUIRE(q == std::max(3, h5_floor(n)));
        REQUIRE(satisfies_h5(n, q));
    }
    CHECK(c.resolve_p(64) == 32);
    CHECK(satisfies_h5(64, 32));
    CHECK_FALSE(satisfies_h5(64, 31));
    CHECK(c.resolve_p(20) == 13);
    CHECK(c.resolve_p(100) == 47);
    CHECK(c.resolve_p(1000) == 317);
    c.p_min = 500;
    CHECK(c.resolve_p(1000) == 500);
    c.p = 7;
    CHECK(c.resolve_p(1000) == 7);
}

TEST_CASE("configuration validation")
{
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.strict_h5 = true;
    CHECK_NOTHROW(c.validate());
    c.p = 10;
    c.n_values = {100};
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("p = 10"), std::invalid_argument);
    c.strict_h5 = false;
    CHECK_NOTHROW(c.validate());

    auto bad = [](auto mutate) {
        ExperimentConfig x;
        mutate(x);
        return x;
    };
    CHECK_THROWS_AS(bad([](auto& x) { x.n_values.clear(); }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.p = 2; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.replications = 1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.n_values = {2}; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.estimator.eps = 1.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.estimator.varsigma_star = 50.0; x.n_values = {20}; }).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.estimator.delta_rule = EstimatorParams::DeltaRule::fixed; }).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(bad([](auto& x) { x.noise.rho1 = -1.0; }).validate(), std::invalid_argument);
}

TEST_CASE("estimator parameter rules")
{
    EstimatorParams e;
    CHECK(e.kstar_for(100) == 102);
    CHECK(e.eps_for(100) == doctest::Approx(1.0 / std::log(100.0)));
    CHECK(e.delta_for(100) == default_delta(100));
    CHECK(e.upsilon_for(100) == 100.0);
    e.kstar = 5;
    e.eps = 0.25;
    e.delta_rule = EstimatorParams::DeltaRule::efficiency;
    e.varsigma_star = 2.0;
    CHECK(e.kstar_for(100) == 5);
    CHECK(e.eps_for(100) == 0.25);
    CHECK(e.delta_for(100) == efficiency_delta(100));
    CHECK(e.upsilon_for(100) == 50.0);
    e.delta_rule = EstimatorParams::DeltaRule::fixed;
    e.delta_value = 0.125;
    CHECK(e.delta_for(7) == 0.125);
}

TEST_CASE("risk table covers every n")
{
    auto c = small_config(101, 8);
    c.n_values = {20, 30};
    const auto report = risk_table(c, quiet_options(false));
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].n == 20);
    CHECK(report.rows[1].n == 30);
    CHECK(report.rows[1].replications == 8);
    CHECK(report.rows[0].mean_sigma_hat > 0.0);
}
