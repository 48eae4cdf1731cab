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

#include "smreg/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "smreg/text.hpp"

namespace smreg {

namespace {

std::uint64_t parse_u64(std::string_view text)
{
    text = trim(text);
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an unsigned 64-bit integer: '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text)
{
    const long long v = parse_integer(text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw std::invalid_argument("integer out of range: '" + std::string(trim(text)) + "'");
    }
    return static_cast<int>(v);
}

bool parse_bool(std::string_view text)
{
    text = trim(text);
    if (text == "true") return true;
    if (text == "false") return false;
    throw std::invalid_argument("expected true or false, got '" + std::string(text) + "'");
}

bool is_auto(std::string_view text) { return trim(text) == "auto"; }

std::string auto_or(double v) { return v == 0.0 ? "auto" : format_double(v); }
std::string auto_or(int v) { return v == 0 ? "auto" : std::to_string(v); }

std::vector<int> parse_int_list(std::string_view text)
{
    std::vector<int> out;
    text = trim(text);
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        out.push_back(parse_int(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters()
{
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"seed", [](RunConfig& c, std::string_view v) { c.experiment.seed = parse_u64(v); }},
        {"n", [](RunConfig& c, std::string_view v) { c.experiment.n_values = parse_int_list(v); }},
        {"p", [](RunConfig& c, std::string_view v) { c.experiment.p = is_auto(v) ? 0 : parse_int(v); }},
        {"p_min", [](RunConfig& c, std::string_view v) { c.experiment.p_min = parse_int(v); }},
        {"replications", [](RunConfig& c, std::string_view v) { c.experiment.replications = parse_int(v); }},
        {"strict_h5", [](RunConfig& c, std::string_view v) { c.experiment.strict_h5 = parse_bool(v); }},
        {"signal", [](RunConfig& c, std::string_view v) { c.experiment.signal = parse_signal(v); }},
        {"noise.rho1", [](RunConfig& c, std::string_view v) { c.experiment.noise.rho1 = parse_double(v); }},
        {"noise.rho2", [](RunConfig& c, std::string_view v) { c.experiment.noise.rho2 = parse_double(v); }},
        {"noise.rho_check", [](RunConfig& c, std::string_view v) { c.experiment.noise.rho_check = parse_double(v); }},
        {"noise.levy", [](RunConfig& c, std::string_view v) { c.experiment.noise.levy = parse_levy(std::string(v)); }},
        {"noise.interarrival",
         [](RunConfig& c, std::string_view v) { c.experiment.noise.interarrival = parse_interarrival(std::string(v)); }},
        {"noise.marks", [](RunConfig& c, std::string_view v) { c.experiment.noise.marks = parse_mark_law(std::string(v)); }},
        {"noise.allow_test_laws",
         [](RunConfig& c, std::string_view v) { c.experiment.noise.allow_test_laws = parse_bool(v); }},
        {"estimator.kstar0", [](RunConfig& c, std::string_view v) { c.experiment.estimator.kstar0 = parse_int(v); }},
        {"estimator.kstar",
         [](RunConfig& c, std::string_view v) { c.experiment.estimator.kstar = is_auto(v) ? 0 : parse_int(v); }},
        {"estimator.eps",
         [](RunConfig& c, std::string_view v) { c.experiment.estimator.eps = is_auto(v) ? 0.0 : parse_double(v); }},
        {"estimator.delta",
         [](RunConfig& c, std::string_view v) {
             auto& e = c.experiment.estimator;
             const auto t = trim(v);
             if (t == "log_squared") {
                 e.delta_rule = EstimatorParams::DeltaRule::log_squared;
                 e.delta_value = 0.0;
             } else if (t == "efficiency") {
                 e.delta_rule = EstimatorParams::DeltaRule::efficiency;
                 e.delta_value = 0.0;
             } else {
                 e.delta_rule = EstimatorParams::DeltaRule::fixed;
                 e.delta_value = parse_double(t);
             }
         }},
        {"estimator.varsigma_star",
         [](RunConfig& c, std::string_view v) { c.experiment.estimator.varsigma_star = parse_double(v); }},
        {"renewal.step", [](RunConfig& c, std::string_view v) { c.renewal_step = is_auto(v) ? 0.0 : parse_double(v); }},
        {"renewal.horizon",
         [](RunConfig& c, std::string_view v) { c.renewal_horizon = is_auto(v) ? 0.0 : parse_double(v); }},
    };
    return table;
}

std::string delta_text(const EstimatorParams& e)
{
    switch (e.delta_rule) {
    case EstimatorParams::DeltaRule::log_squared: return "log_squared";
    case EstimatorParams::DeltaRule::efficiency: return "efficiency";
    case EstimatorParams::DeltaRule::fixed: return format_double(e.delta_value);
    }
    return "log_squared";
}

void validate_run(const RunConfig& c)
{
    c.experiment.validate();
    if (!(c.renewal_step >= 0.0) || !(c.renewal_horizon >= 0.0)) {
        throw std::invalid_argument("config: renewal.step and renewal.horizon must be nonnegative");
    }
}

}  // namespace

std::string signal_to_string(const SignalSpec& signal)
{
    switch (signal.kind()) {
    case SignalSpec::Kind::benchmark: return "benchmark";
    case SignalSpec::Kind::trig_polynomial: return "trig(" + join(signal.coefficients()) + ")";
    case SignalSpec::Kind::tabulated: return "tabulated(" + join(signal.coefficients()) + ")";
    case SignalSpec::Kind::custom: break;
    }
    throw std::invalid_argument("custom signal '" + signal.name() + "' has no text form");
}

SignalSpec parse_signal(std::string_view text)
{
    const auto call = parse_call(text);
    std::vector<double> values;
    for (const auto& a : call.args) values.push_back(parse_double(a));
    if (call.name == "benchmark" && values.empty()) return SignalSpec::benchmark();
    if (call.name == "trig" && !values.empty()) return SignalSpec::trig_polynomial(std::move(values));
    if (call.name == "tabulated" && !values.empty()) return SignalSpec::tabulated(std::move(values));
    throw std::invalid_argument("unknown signal '" + std::string(trim(text)) + "'");
}

RunConfig parse_config(std::string_view text, const RunConfig& base)
{
    RunConfig out = base;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto where = "config line " + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument(where + "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        if (value.empty()) throw std::invalid_argument(where + "empty value for '" + key + "'");

        const auto& table = setters();
        const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == key; });
        if (it == table.end()) throw std::invalid_argument(where + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw std::invalid_argument(where + "duplicate key '" + key + "'");
        try {
            it->second(out, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + key + ": " + e.what());
        }
    }
    validate_run(out);
    return out;
}

RunConfig load_config(const std::filesystem::path& path, const RunConfig& base)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), base);
}

std::string emit_config(const RunConfig& c)
{
    const auto& x = c.experiment;
    std::string ns;
    for (std::size_t i = 0; i < x.n_values.size(); ++i) ns += (i > 0 ? ", " : "") + std::to_string(x.n_values[i]);

    std::ostringstream out;
    out << "seed = " << x.seed << '\n'
        << "n = " << ns << '\n'
        << "p = " << auto_or(x.p) << '\n'
        << "p_min = " << x.p_min << '\n'
        << "replications = " << x.replications << '\n'
        << "strict_h5 = " << (x.strict_h5 ? "true" : "false") << '\n'
        << "signal = " << signal_to_string(x.signal) << '\n'
        << "noise.rho1 = " << format_double(x.noise.rho1) << '\n'
        << "noise.rho2 = " << format_double(x.noise.rho2) << '\n'
        << "noise.rho_check = " << format_double(x.noise.rho_check) << '\n'
        << "noise.levy = " << to_string(x.noise.levy) << '\n'
        << "noise.interarrival = " << to_string(x.noise.interarrival) << '\n'
        << "noise.marks = " << to_string(x.noise.marks) << '\n'
        << "noise.allow_test_laws = " << (x.noise.allow_test_laws ? "true" : "false") << '\n'
        << "estimator.kstar0 = " << x.estimator.kstar0 << '\n'
        << "estimator.kstar = " << auto_or(x.estimator.kstar) << '\n'
        << "estimator.eps = " << auto_or(x.estimator.eps) << '\n'
        << "estimator.delta = " << delta_text(x.estimator) << '\n'
        << "estimator.varsigma_star = " << format_double(x.estimator.varsigma_star) << '\n'
        << "renewal.step = " << auto_or(c.renewal_step) << '\n'
        << "renewal.horizon = " << auto_or(c.renewal_horizon) << '\n';
    return out.str();
}

RunConfig preset(std::string_view name)
{
    RunConfig c;
    if (name == "paper-sec6") {
        c.experiment.n_values = {20, 100, 200, 1000};
        c.experiment.p = 100001;
        c.experiment.replications = 10000;
        return c;
    }
    if (name == "desk-scale") {
        c.experiment.n_values = {20, 100};
        c.experiment.p = 1001;
        c.experiment.replications = 500;
        return c;
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"paper-sec6", "desk-scale"}; }

}  // namespace smreg
