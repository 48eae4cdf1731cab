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

#include "smreg/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smreg/quadrature.hpp"

namespace smreg {

namespace {

void finish(WeightVector& w)
{
    while (!w.lambda.empty() && w.lambda.back() == 0.0) w.lambda.pop_back();
    w.sum = 0.0;
    w.norm_sq = 0.0;
    for (double v : w.lambda) {
        w.sum += v;
        w.norm_sq += v * v;
    }
}

}  // namespace

WeightVector WeightVector::custom(std::vector<double> values, int p)
{
    WeightVector w;
    if (static_cast<int>(values.size()) > p - 1) values.resize(static_cast<std::size_t>(std::max(p - 1, 0)));
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("weights must lie in [0, 1]");
    }
    w.lambda = std::move(values);
    finish(w);
    return w;
}

double WeightFamily::lambda_star() const
{
    double best = 0.0;
    for (const auto& w : weights) best = std::max(best, w.sum);
    return best;
}

CoefficientEstimates theta_hat(const ObservationPath& obs)
{
    if (obs.p < 3) throw std::invalid_argument("theta_hat: p must be >= 3");
    return theta_hat(obs, GridBasis(obs.p));
}

CoefficientEstimates theta_hat(const ObservationPath& obs, const GridBasis& basis)
{
    return theta_hat(obs, basis, obs.p - 1);
}

CoefficientEstimates theta_hat(const ObservationPath& obs, const GridBasis& basis, int jmax)
{
    if (obs.n < 1 || obs.p < 3) throw std::invalid_argument("theta_hat: need n >= 1 and p >= 3");
    const std::size_t cells = static_cast<std::size_t>(obs.n) * static_cast<std::size_t>(obs.p);
    if (obs.y.size() != cells + 1) throw std::invalid_argument("theta_hat: path length must be n p + 1");
    if (basis.p() != obs.p) throw std::invalid_argument("theta_hat: basis built for a different p");

    auto folded = fold_increments(obs.increments(), obs.p);
    // project() averages over p grid points; rescale to the 1/n normalization
    const double scale = static_cast<double>(obs.p) / static_cast<double>(obs.n);
    for (auto& v : folded) v *= scale;

    CoefficientEstimates out;
    out.n = obs.n;
    out.p = obs.p;
    out.theta_hat = project(basis, folded, std::clamp(jmax, 1, obs.p - 1));
    return out;
}

int coefficients_needed(const WeightFamily& family, int n, int p)
{
    int need = std::min(p, n);
    for (const auto& w : family.weights) need = std::max(need, w.support());
    return std::clamp(need, 1, p - 1);
}

double sigma_hat(const CoefficientEstimates& est)
{
    const int l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(est.n))));
    const int p_check = std::min(est.p, est.n);
    if (l > p_check) return 0.0;
    const int upper = std::min(p_check, est.p - 1);
    double acc = 0.0;
    for (int j = l; j <= upper; ++j) acc += est.at(j) * est.at(j);
    return static_cast<double>(est.n) / static_cast<double>(p_check) * acc;
}

WeightVector pinsker_weights(int beta, double l, double upsilon, int p)
{
    if (beta < 1) throw std::invalid_argument("pinsker_weights: beta must be >= 1");
    if (!(l > 0.0)) throw std::invalid_argument("pinsker_weights: l must be positive");
    if (!(upsilon > 1.0)) throw std::invalid_argument("pinsker_weights: upsilon must exceed 1");
    if (p < 2) throw std::invalid_argument("pinsker_weights: p must be >= 2");

    const double b = static_cast<double>(beta);
    const int j_star = 1 + static_cast<int>(std::floor(std::log(upsilon)));
    // d_beta = (beta+1)(2 beta+1) / (pi^{2 beta} beta) underflows for large beta; stay in logs
    const double log_d = std::log((b + 1.0) * (2.0 * b + 1.0) / b) - 2.0 * b * std::log(kPi);
    const double omega = std::exp((log_d + std::log(l) + std::log(upsilon)) / (2.0 * b + 1.0));

    const double last = std::max(static_cast<double>(j_star - 1), std::floor(omega));
    const int support = static_cast<int>(std::min(last, static_cast<double>(p - 1)));

    WeightVector w;
    w.beta = beta;
    w.l = l;
    w.lambda.assign(static_cast<std::size_t>(std::max(support, 0)), 0.0);
    for (int j = 1; j <= support; ++j) {
        double v = 0.0;
        if (j < j_star) v = 1.0;
        else if (static_cast<double>(j) <= omega) v = 1.0 - std::pow(static_cast<double>(j) / omega, b);
        w.lambda[static_cast<std::size_t>(j - 1)] = v;
    }
    finish(w);
    return w;
}

WeightFamily build_weight_family(int kstar, double eps, double upsilon, int p)
{
    if (kstar < 1) throw std::invalid_argument("build_weight_family: kstar must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("build_weight_family: eps must lie in (0, 1)");
    WeightFamily fam;
    fam.kstar = kstar;
    fam.eps = eps;
    fam.m = static_cast<int>(std::floor(1.0 / (eps * eps)));
    fam.upsilon = upsilon;
    fam.p = p;
    fam.weights.reserve(static_cast<std::size_t>(kstar) * static_cast<std::size_t>(fam.m));
    for (int beta = 1; beta <= kstar; ++beta) {
        for (int i = 1; i <= fam.m; ++i) {
            fam.weights.push_back(pinsker_weights(beta, eps * static_cast<double>(i), upsilon, p));
        }
    }
    const double star = fam.lambda_star();
    if (star < 1.0) throw std::invalid_argument("build_weight_family: |Lambda|_* < 1; increase upsilon");
    if (star > 1.0 + std::cbrt(upsilon / eps)) {
        throw std::logic_error("build_weight_family: |Lambda|_* exceeds 1 + (upsilon/eps)^(1/3)");
    }
    return fam;
}

double penalty(const WeightVector& lambda, double sigma_hat, int n)
{
    if (n < 1) throw std::invalid_argument("penalty: n must be >= 1");
    return sigma_hat * lambda.norm_sq / static_cast<double>(n);
}

double cost(const WeightVector& lambda, const CoefficientEstimates& est, double sigma_hat, double delta)
{
    const double shift = sigma_hat / static_cast<double>(est.n);
    const int upper = std::min(lambda.support(), est.p - 1);
    double acc = 0.0;
    for (int j = 1; j <= upper; ++j) {
        const double w = lambda.at(j);
        const double t2 = est.at(j) * est.at(j);
        acc += w * w * t2 - 2.0 * w * (t2 - shift);
    }
    return acc + delta * penalty(lambda, sigma_hat, est.n);
}

std::vector<double> evaluate_costs(const WeightFamily& family, const CoefficientEstimates& est, double sigma_hat,
                                   double delta)
{
    const auto count = static_cast<long long>(family.weights.size());
    std::vector<double> costs(family.weights.size());
#pragma omp parallel for schedule(static) if (count > 256)
    for (long long k = 0; k < count; ++k) {
        costs[static_cast<std::size_t>(k)] = cost(family.weights[static_cast<std::size_t>(k)], est, sigma_hat, delta);
    }
    return costs;
}

std::vector<double> weighted_estimate(const WeightVector& lambda, const CoefficientEstimates& est,
                                      const GridBasis& basis)
{
    if (basis.p() != est.p) throw std::invalid_argument("weighted_estimate: basis built for a different p");
    const int upper = std::min(lambda.support(), est.p - 1);
    std::vector<double> coef(static_cast<std::size_t>(std::max(upper, 0)));
    for (int j = 1; j <= upper; ++j) coef[static_cast<std::size_t>(j - 1)] = lambda.at(j) * est.at(j);
    return synthesize(basis, coef);
}

double weighted_estimate_at(const WeightVector& lambda, const CoefficientEstimates& est, double t)
{
    const int upper = std::min(lambda.support(), est.p - 1);
    double acc = 0.0;
    for (int j = 1; j <= upper; ++j) {
        const double w = lambda.at(j);
        if (w != 0.0) acc += w * est.at(j) * psi_basis(j, est.p, t);
    }
    return acc;
}

SelectionResult select_model(const CoefficientEstimates& est, const WeightFamily& family, double delta)
{
    return select_model(est, family, delta, GridBasis(est.p));
}

SelectionResult select_model(const CoefficientEstimates& est, const WeightFamily& family, double delta,
                             const GridBasis& basis)
{
    if (family.weights.empty()) throw std::invalid_argument("select_model: empty weight family");
    SelectionResult out;
    out.delta = delta;
    out.sigma_hat = sigma_hat(est);
    out.costs = evaluate_costs(family, est, out.sigma_hat, delta);
    // fixed-order argmin; strict comparison keeps the lowest index on ties
    std::size_t best = 0;
    for (std::size_t k = 1; k < out.costs.size(); ++k) {
        if (out.costs[k] < out.costs[best]) best = k;
    }
    out.selected = best;
    out.lambda_hat = family.weights[best];
    out.estimate = weighted_estimate(out.lambda_hat, est, basis);
    return out;
}

double default_delta(int n)
{
    const double d = 3.0 + std::log(static_cast<double>(n));
    return 1.0 / (d * d);
}

double efficiency_delta(int n) { return 1.0 / (6.0 + std::log(static_cast<double>(n))); }

double default_eps(int n)
{
    if (n < 3) throw std::invalid_argument("default_eps: n must be >= 3");
    return 1.0 / std::log(static_cast<double>(n));
}

int default_kstar(int n, int kstar0)
{
    return kstar0 + static_cast<int>(std::floor(std::sqrt(std::log(static_cast<double>(n)))));
}

}  // namespace smreg
