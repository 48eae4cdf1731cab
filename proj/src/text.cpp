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

#include "smreg/text.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace smreg {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

double parse_double(std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

long long parse_integer(std::string_view text)
{
    text = trim(text);
    long long value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

CallExpr parse_call(std::string_view text)
{
    text = trim(text);
    CallExpr out;
    const auto open = text.find('(');
    if (open == std::string_view::npos) {
        out.name = std::string(text);
        return out;
    }
    if (text.back() != ')') throw std::invalid_argument("unbalanced parentheses in '" + std::string(text) + "'");
    out.name = std::string(trim(text.substr(0, open)));
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    if (trim(inner).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = inner.find(',', start);
        out.args.emplace_back(trim(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace smreg
