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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smreg/config.hpp"
#include "smreg/manifest.hpp"

namespace smreg::cli {

inline const std::vector<std::string> kSubcommands = {"simulate", "estimate", "risk-table", "renewal-density",
                                                       "figures"};

struct RunRequest {
    std::string subcommand;
    RunConfig config;
    std::filesystem::path out_dir = ".";
    int n = 0;                   // simulate/estimate: 0 picks the first configured n
    std::uint32_t stream = 0;    // replication index of the sampled path
    std::optional<std::filesystem::path> input;  // estimate: path CSV instead of simulation
    bool timing = false;         // risk-table: fill the seconds column
    bool oracle = true;          // risk-table: compute the oracle column
};

/// Runs one subcommand, writes its CSVs and `<subcommand>.manifest` under
/// out_dir, and returns the manifest. Errors propagate as exceptions.
RunManifest run(const RunRequest& request);

/// Reads a path CSV (columns j, t_j, y_j; '#' lines skipped) and recovers n and p.
ObservationPath read_path_csv(const std::filesystem::path& path);

}  // namespace smreg::cli
