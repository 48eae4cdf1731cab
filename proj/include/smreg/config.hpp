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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "smreg/risk.hpp"

namespace smreg {

/// Everything a run needs: the experiment plus the renewal-solver grid.
struct RunConfig {
    ExperimentConfig experiment;
    double renewal_step = 0.0;     // 0: tau_bar / 200
    double renewal_horizon = 0.0;  // 0: 40 tau_bar

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Applies `key = value` lines on top of `base`. Keys are dotted
/// (noise.rho1, estimator.delta, ...); `#` starts a comment. Unknown keys,
/// repeated keys and malformed values throw std::invalid_argument naming the
/// offending line. The result is validated.
RunConfig parse_config(std::string_view text, const RunConfig& base = {});

/// Reads and parses a config file; throws std::runtime_error if it cannot be read.
RunConfig load_config(const std::filesystem::path& path, const RunConfig& base = {});

/// Canonical text form: every key, fixed order, shortest round-trip numbers.
/// parse_config(emit_config(c)) == c for every serializable config.
std::string emit_config(const RunConfig& config);

/// Named starting points: "paper-sec6" (full scale: p = 100001, 10^4
/// replications) and "desk-scale" (n in {20, 100}, p = 1001, 500 replications).
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

std::string signal_to_string(const SignalSpec& signal);
SignalSpec parse_signal(std::string_view text);

}  // namespace smreg
