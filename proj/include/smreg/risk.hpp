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

#include <cstdint>
#include <functional>
#include <vector>

#include "smreg/estimator.hpp"
#include "smreg/noise.hpp"
#include "smreg/signal.hpp"

namespace smreg {

/// Tuning of the selection procedure as functions of n.
struct EstimatorParams {
    enum class DeltaRule { log_squared, efficiency, fixed };  // (3 + ln n)^-2, (6 + ln n)^-1, delta_value

    int kstar0 = 100;
    int kstar = 0;     // > 0 overrides kstar0 + [sqrt(ln n)]
    double eps = 0.0;  // > 0 overrides 1 / ln n
    DeltaRule delta_rule = DeltaRule::log_squared;
    double delta_value = 0.0;  // used by DeltaRule::fixed
    double varsigma_star = 1.0;

    int kstar_for(int n) const;
    double eps_for(int n) const;
    double delta_for(int n) const;
    /// upsilon_n = n / varsigma_star.
    double upsilon_for(int n) const;

    friend bool operator==(const EstimatorParams&, const EstimatorParams&) = default;
};

struct ExperimentConfig {
    std::vector<int> n_values{20, 100, 200, 1000};
    int p = 100001;  // 0 selects p = max(p_min, ceil(n^(5/6)))
    int p_min = 3;
    int replications = 10000;
    NoiseSpec noise;
    SignalSpec signal = SignalSpec::benchmark();
    EstimatorParams estimator;
    std::uint64_t seed = 1;
    bool strict_h5 = false;

    int resolve_p(int n) const;
    /// Throws std::invalid_argument on invalid values or, with strict_h5, when
    /// p < n^(5/6) for some n.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// p >= n^(5/6).
bool satisfies_h5(int n, int p);

/// Replacement estimator for harness tests: maps a path to S_hat(t_i), i = 1..p.
using GridEstimator = std::function<std::vector<double>(const ObservationPath&)>;

struct RiskOptions {
    bool with_oracle = true;
    bool timing = true;
    GridEstimator estimator;  // empty: the model selection procedure
};

struct RiskRow {
    int n = 0;
    int p = 0;
    int replications = 0;
    double r_bar = 0.0;
    double r_bar_se = 0.0;
    double r_rel = 0.0;
    double oracle = 0.0;
    double oracle_se = 0.0;
    std::size_t oracle_index = 0;
    double mean_sigma_hat = 0.0;
    double seconds = 0.0;
};

struct RiskReport {
    std::vector<RiskRow> rows;
};

/// Monte Carlo risks for one n. Replication r uses RngStream{seed, r}; the
/// selected estimator and every fixed-lambda candidate see the same paths.
/// Reductions run in replication order, so the result is independent of the
/// thread count.
RiskRow evaluate_risk(const ExperimentConfig& config, int n, const RiskOptions& options = {});

/// R_bar = (1/p) sum_j mean_r (S_hat(t_j) - S(t_j))^2.
double empirical_risk(const ExperimentConfig& config, int n);

/// min over the weight family of the Monte Carlo risk of S_hat_lambda.
double oracle_risk(const ExperimentConfig& config, int n);

/// R_bar / ||S||_p^2; throws std::domain_error when the norm is zero.
double relative_risk(double r_bar, const SignalSpec& signal, int p);

/// ((2k+1) r)^(1/(2k+1)) (k / ((k+1) pi))^(2k/(2k+1)).
double pinsker_constant(int k, double r);

RiskReport risk_table(const ExperimentConfig& config, const RiskOptions& options = {});

/// Weight family used for a given n under the config's estimator parameters.
WeightFamily weight_family_for(const ExperimentConfig& config, int n);

/// One estimation run: selection result for replication `stream_index`.
SelectionResult estimate_once(const ExperimentConfig& config, int n, std::uint32_t stream_index);

}  // namespace smreg
