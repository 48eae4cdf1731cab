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
#include <vector>

#include "smreg/kernels.hpp"
#include "smreg/noise.hpp"

namespace smreg {

/// Raw coefficient estimates theta_hat_{j,p}, j = 1..p-1, or a leading
/// run j = 1..jmax of them when only those are needed.
struct CoefficientEstimates {
    int n = 0;
    int p = 0;
    std::vector<double> theta_hat;

    double at(int j) const { return theta_hat[static_cast<std::size_t>(j - 1)]; }
};

/// A shrinkage weight sequence. lambda(j) is stored up to the last nonzero
/// index; entries beyond are zero, and lambda(j) = 0 for j >= p always.
struct WeightVector {
    int beta = 0;        // 0 for custom vectors
    double l = 0.0;
    std::vector<double> lambda;  // lambda[j-1], j = 1..support()
    double sum = 0.0;            // L(lambda)
    double norm_sq = 0.0;        // |lambda|^2

    int support() const { return static_cast<int>(lambda.size()); }
    double at(int j) const { return j >= 1 && j <= support() ? lambda[static_cast<std::size_t>(j - 1)] : 0.0; }

    /// Weights from explicit values for j = 1..; truncated below p.
    static WeightVector custom(std::vector<double> values, int p);
};

struct WeightFamily {
    std::vector<WeightVector> weights;
    int kstar = 0;
    double eps = 0.0;
    int m = 0;
    double upsilon = 0.0;
    int p = 0;

    std::size_t nu() const { return weights.size(); }
    /// |Lambda|_* = max L(lambda).
    double lambda_star() const;
};

struct SelectionResult {
    std::size_t selected = 0;
    WeightVector lambda_hat;
    double sigma_hat = 0.0;
    double delta = 0.0;
    std::vector<double> costs;
    /// S_hat_*(t_i), t_i = i/p, i = 1..p.
    std::vector<double> estimate;
};

/// theta_hat_{j,p} = (1/n) sum_{l=1}^{np} phi_j(t_l) (y_{t_l} - y_{t_{l-1}}), j = 1..p-1.
/// Increments are folded by grid residue first, then projected in parallel.
CoefficientEstimates theta_hat(const ObservationPath& obs);
CoefficientEstimates theta_hat(const ObservationPath& obs, const GridBasis& basis);
/// Only j = 1..jmax (clamped to p-1). Each value is bitwise equal to the full computation.
CoefficientEstimates theta_hat(const ObservationPath& obs, const GridBasis& basis, int jmax);

/// Largest j the selection step reads: the widest candidate support or min(p, n),
/// whichever is larger, capped at p-1.
int coefficients_needed(const WeightFamily& family, int n, int p);

/// (n / p_check) sum_{j=l}^{p_check} theta_hat_j^2 with l = [sqrt n], p_check = min(p, n);
/// the sum is truncated at p - 1 and the estimate is 0 when l > p_check.
double sigma_hat(const CoefficientEstimates& est);

/// Pinsker weights lambda_alpha for alpha = (beta, l).
WeightVector pinsker_weights(int beta, double l, double upsilon, int p);

/// {1..kstar} x {eps, 2 eps, ..., m eps}, m = [1/eps^2]; one weight vector per
/// grid point, ordered by beta then l. Throws std::logic_error if the
/// resulting |Lambda|_* violates its upper bound 1 + (upsilon/eps)^(1/3).
WeightFamily build_weight_family(int kstar, double eps, double upsilon, int p);

/// P_n(lambda) = sigma_hat |lambda|^2 / n.
double penalty(const WeightVector& lambda, double sigma_hat, int n);

/// J_n(lambda) = sum lambda^2 theta_hat^2 - 2 sum lambda (theta_hat^2 - sigma_hat/n) + delta P_n(lambda).
double cost(const WeightVector& lambda, const CoefficientEstimates& est, double sigma_hat, double delta);

/// Costs of every candidate, evaluated in parallel.
std::vector<double> evaluate_costs(const WeightFamily& family, const CoefficientEstimates& est, double sigma_hat,
                                   double delta);

/// S_hat_lambda(t_i) = sum_j lambda(j) theta_hat_j Psi_{j,p}(t_i) on t_i = i/p, i = 1..p.
std::vector<double> weighted_estimate(const WeightVector& lambda, const CoefficientEstimates& est,
                                      const GridBasis& basis);

/// S_hat_lambda at arbitrary t > 0 (step-basis evaluation).
double weighted_estimate_at(const WeightVector& lambda, const CoefficientEstimates& est, double t);

/// argmin of J_n over the family (lowest index on ties), with the estimate on the grid.
SelectionResult select_model(const CoefficientEstimates& est, const WeightFamily& family, double delta);
SelectionResult select_model(const CoefficientEstimates& est, const WeightFamily& family, double delta,
                             const GridBasis& basis);

/// Defaults driven by the observation horizon n.
double default_delta(int n);           // (3 + ln n)^-2
double efficiency_delta(int n);        // (6 + ln n)^-1
double default_eps(int n);             // 1 / ln n
int default_kstar(int n, int kstar0);  // kstar0 + [sqrt(ln n)]

}  // namespace smreg
