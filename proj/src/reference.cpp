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

#include "smreg/reference.hpp"

#include <stdexcept>

#include "smreg/signal.hpp"

namespace smreg::reference {

std::vector<double> project(std::span<const double> values, int p, int jmax)
{
    if (static_cast<int>(values.size()) != p) throw std::invalid_argument("reference::project: need p values");
    std::vector<double> out(static_cast<std::size_t>(jmax), 0.0);
    for (int j = 1; j <= jmax; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= p; ++i) {
            acc += values[static_cast<std::size_t>(i - 1)] * trig_basis(j, static_cast<double>(i) / p);
        }
        out[static_cast<std::size_t>(j - 1)] = acc / p;
    }
    return out;
}

std::vector<double> synthesize(std::span<const double> coef, int p)
{
    std::vector<double> out(static_cast<std::size_t>(p), 0.0);
    for (int i = 1; i <= p; ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= coef.size(); ++j) {
            acc += coef[j - 1] * trig_basis(static_cast<int>(j), static_cast<double>(i) / p);
        }
        out[static_cast<std::size_t>(i - 1)] = acc;
    }
    return out;
}

CoefficientEstimates theta_hat(const ObservationPath& obs)
{
    const std::size_t cells = static_cast<std::size_t>(obs.n) * static_cast<std::size_t>(obs.p);
    if (obs.y.size() != cells + 1) throw std::invalid_argument("reference::theta_hat: path length must be n p + 1");
    CoefficientEstimates out;
    out.n = obs.n;
    out.p = obs.p;
    out.theta_hat.assign(static_cast<std::size_t>(obs.p - 1), 0.0);
    for (int j = 1; j < obs.p; ++j) {
        double acc = 0.0;
        for (std::size_t l = 1; l <= cells; ++l) {
            // phi_j is 1-periodic; reduce t_l to (0, 1] before evaluating
            const double t = static_cast<double>((l - 1) % static_cast<std::size_t>(obs.p) + 1) / obs.p;
            acc += trig_basis(j, t) * (obs.y[l] - obs.y[l - 1]);
        }
        out.theta_hat[static_cast<std::size_t>(j - 1)] = acc / obs.n;
    }
    return out;
}

std::vector<double> evaluate_costs(const WeightFamily& family, const CoefficientEstimates& est, double sigma_hat,
                                   double delta)
{
    std::vector<double> out;
    out.reserve(family.weights.size());
    for (const auto& w : family.weights) out.push_back(cost(w, est, sigma_hat, delta));
    return out;
}

}  // namespace smreg::reference
