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

#include "smreg/risk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "smreg/kernels.hpp"
#include "smreg/quadrature.hpp"

namespace smreg {

namespace {

// Replications are reduced in fixed blocks of this size. Block sums are then
// combined in block order, which keeps every total independent of how the
// blocks were scheduled across threads.
constexpr int kBlock = 32;

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct BlockResult {
    Moments selected;
    double sigma_sum = 0.0;
    std::vector<Moments> candidates;
};

double mean_squared_error(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> sq(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq[i] = d * d;
    }
    return pairwise_sum(sq) / static_cast<double>(a.size());
}

Moments block_moments(std::span<const double> losses)
{
    std::vector<double> sq(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) sq[i] = losses[i] * losses[i];
    return {pairwise_sum(losses), pairwise_sum(sq)};
}

Moments combine(std::span<const Moments> parts)
{
    std::vector<double> s(parts.size());
    std::vector<double> q(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s[i] = parts[i].sum;
        q[i] = parts[i].sum_sq;
    }
    return {pairwise_sum(s), pairwise_sum(q)};
}

double standard_error(const Moments& m, int count)
{
    const double n = static_cast<double>(count);
    const double mean = m.sum / n;
    const double var = std::max(0.0, (m.sum_sq - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
}

void require_estimation_laws(const NoiseSpec& noise)
{
    if (noise.interarrival.kind == InterarrivalLaw::Kind::degenerate || noise.marks == MarkLaw::unit) {
        throw std::invalid_argument("test-only noise laws are excluded from estimation runs");
    }
}

}  // namespace

int EstimatorParams::kstar_for(int n) const { return kstar > 0 ? kstar : default_kstar(n, kstar0); }

double EstimatorParams::eps_for(int n) const { return eps > 0.0 ? eps : default_eps(n); }

double EstimatorParams::delta_for(int n) const
{
    switch (delta_rule) {
    case DeltaRule::log_squared: return default_delta(n);
    case DeltaRule::efficiency: return efficiency_delta(n);
    case DeltaRule::fixed: return delta_value;
    }
    throw std::logic_error("unknown delta rule");
}

double EstimatorParams::upsilon_for(int n) const { return static_cast<double>(n) / varsigma_star; }

bool satisfies_h5(int n, int p)
{
    // p^6 >= n^5, compared in extended precision to avoid pow() rounding at exact powers
    const long double lp = static_cast<long double>(p);
    const long double ln = static_cast<long double>(n);
    return lp * lp * lp * lp * lp * lp >= ln * ln * ln * ln * ln;
}

int ExperimentConfig::resolve_p(int n) const
{
    if (p > 0) return p;
    int q = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 5.0 / 6.0)));
    while (q > 1 && satisfies_h5(n, q - 1)) --q;
    while (!satisfies_h5(n, q)) ++q;
    return std::max(p_min, q);
}

void ExperimentConfig::validate() const
{
    if (n_values.empty()) throw std::invalid_argument("config: n must list at least one value");
    if (p != 0 && p < 3) throw std::invalid_argument("config: p must be 0 (rule) or >= 3");
    if (p_min < 3) throw std::invalid_argument("config: p_min must be >= 3");
    if (replications < 2) throw std::invalid_argument("config: replications must be >= 2");
    noise.validate();

    const auto& e = estimator;
    if (e.kstar < 0 || (e.kstar == 0 && e.kstar0 < 1)) throw std::invalid_argument("config: kstar must be >= 1");
    if (!(e.eps >= 0.0 && e.eps < 1.0)) throw std::invalid_argument("config: eps must lie in (0, 1)");
    if (e.delta_rule == EstimatorParams::DeltaRule::fixed && !(e.delta_value > 0.0)) {
        throw std::invalid_argument("config: fixed delta must be positive");
    }
    if (!(e.varsigma_star > 0.0) || !std::isfinite(e.varsigma_star)) {
        throw std::invalid_argument("config: varsigma_star must be positive");
    }
    for (int n : n_values) {
        if (n < 1) throw std::invalid_argument("config: n must be positive");
        if (e.eps == 0.0 && n < 3) throw std::invalid_argument("config: the eps rule 1/ln n needs n >= 3");
        if (!(e.upsilon_for(n) > 1.0)) throw std::invalid_argument("config: n / varsigma_star must exceed 1");
        if (strict_h5 && !satisfies_h5(n, resolve_p(n))) {
            throw std::invalid_argument("config: p = " + std::to_string(resolve_p(n)) + " violates p >= n^(5/6) for n = " +
                                        std::to_string(n));
        }
    }
}

WeightFamily weight_family_for(const ExperimentConfig& config, int n)
{
    const auto& e = config.estimator;
    return build_weight_family(e.kstar_for(n), e.eps_for(n), e.upsilon_for(n), config.resolve_p(n));
}

SelectionResult estimate_once(const ExperimentConfig& config, int n, std::uint32_t stream_index)
{
    config.validate();
    require_estimation_laws(config.noise);
    const int p = config.resolve_p(n);
    const GridBasis basis(p);
    const auto path = sample_observations(config.signal, config.noise, n, p, RngStream{config.seed, stream_index});
    const auto family = weight_family_for(config, n);
    return select_model(theta_hat(path, basis, coefficients_needed(family, n, p)), family,
                        config.estimator.delta_for(n), basis);
}

RiskRow evaluate_risk(const ExperimentConfig& config, int n, const RiskOptions& options)
{
    config.validate();
    require_estimation_laws(config.noise);
    const auto start = std::chrono::steady_clock::now();
    const int p = config.resolve_p(n);
    const int reps = config.replications;
    const GridBasis basis(p);
    const auto truth = sample_on_grid(config.signal, p);
    const double norm_sq = discrete_norm_sq(truth, p);
    const auto theta = discrete_fourier_coeffs(config.signal, p).theta;

    const bool need_family = !options.estimator || options.with_oracle;
    WeightFamily family;
    if (need_family) family = weight_family_for(config, n);
    const double delta = config.estimator.delta_for(n);
    const std::size_t nu = options.with_oracle ? family.nu() : 0;
    const int jmax = need_family ? coefficients_needed(family, n, p) : p - 1;
    // With odd p the basis phi_1..phi_p is orthonormal on the grid, so a
    // candidate's error follows from its coefficients alone.
    const bool parseval = (p % 2) == 1;

    const int blocks = (reps + kBlock - 1) / kBlock;
    std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
    // exceptions cannot leave a parallel region; keep one per block and rethrow the first
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));

    auto run_block = [&](int b) {
        const int first = b * kBlock;
        const int last = std::min(reps, first + kBlock);
        const auto count = static_cast<std::size_t>(last - first);
        std::vector<double> losses(count);
        std::vector<double> sigmas(count, 0.0);
        std::vector<double> cand(count * nu);

        for (int r = first; r < last; ++r) {
            const auto slot = static_cast<std::size_t>(r - first);
            const auto path = sample_observations(config.signal, config.noise, n, p,
                                                  RngStream{config.seed, static_cast<std::uint32_t>(r)});
            CoefficientEstimates est;
            if (need_family) est = theta_hat(path, basis, jmax);
            if (options.estimator) {
                const auto fit = options.estimator(path);
                if (fit.size() != truth.size()) throw std::invalid_argument("risk: estimator must return p values");
                losses[slot] = mean_squared_error(fit, truth);
            } else {
                const auto sel = select_model(est, family, delta, basis);
                losses[slot] = mean_squared_error(sel.estimate, truth);
                sigmas[slot] = sel.sigma_hat;
            }
            for (std::size_t k = 0; k < nu; ++k) {
                const auto& w = family.weights[k];
                double loss = 0.0;
                if (parseval) {
                    const int upper = std::min(w.support(), p - 1);
                    std::vector<double> terms(static_cast<std::size_t>(std::max(upper, 0)));
                    for (int j = 1; j <= upper; ++j) {
                        const double c = w.at(j) * est.at(j);
                        const double t = theta[static_cast<std::size_t>(j - 1)];
                        terms[static_cast<std::size_t>(j - 1)] = (c - t) * (c - t) - t * t;
                    }
                    loss = pairwise_sum(terms) + norm_sq;
                } else {
                    loss = mean_squared_error(weighted_estimate(w, est, basis), truth);
                }
                cand[slot * nu + k] = loss;
            }
        }

        auto& out = results[static_cast<std::size_t>(b)];
        out.selected = block_moments(losses);
        out.sigma_sum = pairwise_sum(sigmas);
        out.candidates.resize(nu);
        std::vector<double> column(count);
        for (std::size_t k = 0; k < nu; ++k) {
            for (std::size_t s = 0; s < count; ++s) column[s] = cand[s * nu + k];
            out.candidates[k] = block_moments(column);
        }
    };

#pragma omp parallel for schedule(dynamic, 1)
    for (int b = 0; b < blocks; ++b) {
        try {
            run_block(b);
        } catch (...) {
            errors[static_cast<std::size_t>(b)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    RiskRow row;
    row.n = n;
    row.p = p;
    row.replications = reps;
    std::vector<Moments> parts(static_cast<std::size_t>(blocks));
    std::vector<double> sigma_parts(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) {
        parts[static_cast<std::size_t>(b)] = results[static_cast<std::size_t>(b)].selected;
        sigma_parts[static_cast<std::size_t>(b)] = results[static_cast<std::size_t>(b)].sigma_sum;
    }
    const Moments sel = combine(parts);
    row.r_bar = sel.sum / static_cast<double>(reps);
    row.r_bar_se = standard_error(sel, reps);
    row.r_rel = norm_sq > 0.0 ? row.r_bar / norm_sq : std::numeric_limits<double>::quiet_NaN();
    row.mean_sigma_hat = pairwise_sum(sigma_parts) / static_cast<double>(reps);

    if (nu > 0) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < nu; ++k) {
            for (int b = 0; b < blocks; ++b) {
                parts[static_cast<std::size_t>(b)] = results[static_cast<std::size_t>(b)].candidates[k];
            }
            const Moments m = combine(parts);
            const double mean = m.sum / static_cast<double>(reps);
            if (mean < best) {
                best = mean;
                row.oracle = mean;
                row.oracle_se = standard_error(m, reps);
                row.oracle_index = k;
            }
        }
    } else {
        row.oracle = std::numeric_limits<double>::quiet_NaN();
        row.oracle_se = std::numeric_limits<double>::quiet_NaN();
    }

    if (options.timing) {
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return row;
}

double empirical_risk(const ExperimentConfig& config, int n)
{
    return evaluate_risk(config, n, RiskOptions{.with_oracle = false, .timing = false, .estimator = {}}).r_bar;
}

double oracle_risk(const ExperimentConfig& config, int n)
{
    return evaluate_risk(config, n, RiskOptions{.with_oracle = true, .timing = false, .estimator = {}}).oracle;
}

double relative_risk(double r_bar, const SignalSpec& signal, int p)
{
    const double norm_sq = discrete_norm_sq(sample_on_grid(signal, p), p);
    if (!(norm_sq > 0.0)) throw std::domain_error("relative_risk: signal has zero discrete norm");
    return r_bar / norm_sq;
}

double pinsker_constant(int k, double r)
{
    if (k < 1) throw std::invalid_argument("pinsker_constant: k must be >= 1");
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("pinsker_constant: r must be nonnegative");
    const double kk = static_cast<double>(k);
    const double e = 2.0 * kk + 1.0;
    return std::pow(e * r, 1.0 / e) * std::pow(kk / ((kk + 1.0) * kPi), 2.0 * kk / e);
}

RiskReport risk_table(const ExperimentConfig& config, const RiskOptions& options)
{
    config.validate();
    RiskReport report;
    for (int n : config.n_values) report.rows.push_back(evaluate_risk(config, n, options));
    return report;
}

}  // namespace smreg
