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

// Straightforward serial versions of the parallel kernels. They evaluate the
// basis with std::cos/std::sin at every point and loop in the obvious order;
// tests compare the fast paths against them and the benchmark times both.

#include <span>
#include <vector>

#include "smreg/estimator.hpp"
#include "smreg/noise.hpp"

namespace smreg::reference {

std::vector<double> project(std::span<const double> values, int p, int jmax);

std::vector<double> synthesize(std::span<const double> coef, int p);

/// Direct sum over all n p cells, without folding by residue.
CoefficientEstimates theta_hat(const ObservationPath& obs);

std::vector<double> evaluate_costs(const WeightFamily& family, const CoefficientEstimates& est, double sigma_hat,
                                   double delta);

}  // namespace smreg::reference
