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

#include <string>
#include <string_view>
#include <vector>

namespace smreg {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Strict parse of the whole string; throws std::invalid_argument.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::string_view trim(std::string_view text);

/// A call-like token "name(arg, arg, ...)" or a bare "name".
struct CallExpr {
    std::string name;
    std::vector<std::string> args;
};

CallExpr parse_call(std::string_view text);

}  // namespace smreg
