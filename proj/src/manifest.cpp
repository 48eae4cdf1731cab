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

#include "smreg/manifest.hpp"

#include <array>
#include <stdexcept>

#include <openssl/evp.h>

#include "smreg/text.hpp"

namespace smreg {

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256: digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 0xf]);
    }
    return out;
}

std::string RunManifest::digest() const
{
    std::string blob = "subcommand " + subcommand + "\n" + config_text;
    for (const auto& [name, value] : options) blob += "option " + name + " " + value + "\n";
    for (const auto& [name, hash] : inputs) blob += "input " + name + " " + hash + "\n";
    return sha256_hex(blob);
}

std::string RunManifest::render() const
{
    std::string out;
    out += "# smreg " + version + "\n";
    out += "# subcommand = " + subcommand + "\n";
    out += "# digest = " + digest() + "\n";
    for (const auto& [name, value] : options) out += "# option " + name + " = " + value + "\n";
    for (const auto& [name, hash] : inputs) out += "# input = " + name + " sha256:" + hash + "\n";
    for (const auto& p : outputs) out += "# output = " + p.filename().string() + "\n";
    out += config_text;
    return out;
}

RunManifest make_manifest(std::string subcommand, const RunConfig& config)
{
    RunManifest m;
    m.subcommand = std::move(subcommand);
    m.config_text = emit_config(config);
    return m;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const RunManifest& manifest,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size())
{
    if (!out_) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out_ << "# smreg " << manifest.version << ' ' << manifest.subcommand << " digest=" << manifest.digest() << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

CsvWriter& CsvWriter::row(const std::vector<double>& values)
{
    if (values.size() != columns_) throw std::invalid_argument("csv: wrong number of values in row");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << '\n';
    return *this;
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_) throw std::invalid_argument("csv: wrong number of cells in row");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    return *this;
}

void CsvWriter::close()
{
    out_.flush();
    if (!out_) throw std::runtime_error("write failed for '" + path_.string() + "'");
    out_.close();
}

}  // namespace smreg
