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
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "smreg/config.hpp"

namespace smreg {

inline constexpr std::string_view kVersion = "0.1.0";

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Provenance record written next to every set of outputs. The rendered
/// manifest is itself a loadable config file: provenance lines are comments.
struct RunManifest {
    std::string subcommand;
    std::string config_text;  // emit_config of the resolved config
    std::vector<std::pair<std::string, std::string>> options;  // subcommand flags outside the config
    std::vector<std::pair<std::string, std::string>> inputs;   // name, sha256 of contents
    std::vector<std::filesystem::path> outputs;
    std::string version{kVersion};

    /// Digest over the subcommand, the canonical config, the options and the input digests.
    std::string digest() const;
    std::string render() const;
};

RunManifest make_manifest(std::string subcommand, const RunConfig& config);

/// Streaming CSV writer. The first line is a comment carrying the manifest
/// digest, the second the column names.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const RunManifest& manifest, const std::vector<std::string>& columns);

    CsvWriter& row(const std::vector<double>& values);
    CsvWriter& row(const std::vector<std::string>& cells);
    /// Flushes and throws std::runtime_error if any write failed.
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

}  // namespace smreg
