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

#include "smreg/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "smreg/text.hpp"

namespace smreg {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double draw_interarrival(const InterarrivalLaw& law, Philox4x32& eng)
{
    switch (law.kind) {
        case InterarrivalLaw::Kind::exponential:
            return std::exponential_distribution<double>(law.a)(eng);
        case InterarrivalLaw::Kind::gamma:
            return std::gamma_distribution<double>(law.a, law.b)(eng);
        case InterarrivalLaw::Kind::chi_squared:
            return std::chi_squared_distribution<double>(law.a)(eng);
        case InterarrivalLaw::Kind::degenerate:
            return law.a;
    }
    return law.a;
}

class MarkSampler {
public:
    MarkSampler(MarkLaw law, Philox4x32 eng) : law_(law), eng_(eng) {}

    double operator()()
    {
        switch (law_) {
            case MarkLaw::normal:
                return normal_(eng_);
            case MarkLaw::rademacher:
                return (eng_() >> 63) ? 1.0 : -1.0;
            case MarkLaw::uniform:
                return std::uniform_real_distribution<double>(-kSqrt3, kSqrt3)(eng_);
            case MarkLaw::unit:
                return 1.0;
        }
        return 0.0;
    }

private:
    MarkLaw law_;
    Philox4x32 eng_;
    std::normal_distribution<double> normal_;
};

void check_grid(std::span<const double> grid)
{
    if (grid.empty()) throw std::invalid_argument("grid must contain at least one point");
    for (std::size_t m = 1; m < grid.size(); ++m) {
        if (!(grid[m] >= grid[m - 1])) throw std::invalid_argument("grid must be nondecreasing");
    }
}

}  // namespace

double InterarrivalLaw::mean() const
{
    switch (kind) {
        case Kind::exponential:
            return 1.0 / a;
        case Kind::gamma:
            return a * b;
        case Kind::chi_squared:
        case Kind::degenerate:
            return a;
    }
    return a;
}

double InterarrivalLaw::gamma_shape() const
{
    switch (kind) {
        case Kind::exponential:
            return 1.0;
        case Kind::gamma:
            return a;
        case Kind::chi_squared:
            return 0.5 * a;
        case Kind::degenerate:
            break;
    }
    throw std::invalid_argument("degenerate law has no density");
}

double InterarrivalLaw::gamma_scale() const
{
    switch (kind) {
        case Kind::exponential:
            return 1.0 / a;
        case Kind::gamma:
            return b;
        case Kind::chi_squared:
            return 2.0;
        case Kind::degenerate:
            break;
    }
    throw std::invalid_argument("degenerate law has no density");
}

double InterarrivalLaw::density(double x) const
{
    if (x < 0.0) return 0.0;
    const double k = gamma_shape();
    const double theta = gamma_scale();
    if (x == 0.0) {
        if (k == 1.0) return 1.0 / theta;
        return k < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return std::exp((k - 1.0) * std::log(x) - x / theta - std::lgamma(k) - k * std::log(theta));
}

void InterarrivalLaw::validate() const
{
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("inter-arrival parameter must be positive");
    if (kind == Kind::gamma && (!(b > 0.0) || !std::isfinite(b))) {
        throw std::invalid_argument("gamma scale must be positive");
    }
}

double LevyJumps::jump_scale() const
{
    return shape == Shape::exponential ? 1.0 / std::sqrt(2.0 * intensity) : 1.0 / std::sqrt(intensity);
}

double LevyJumps::jump_mean() const { return shape == Shape::exponential ? jump_scale() : 0.0; }

double LevyJumps::jump_second_moment() const
{
    const double s = jump_scale();
    return shape == Shape::exponential ? 2.0 * s * s : s * s;
}

void NoiseSpec::validate() const
{
    if (!(rho1 >= 0.0) || !(rho2 >= 0.0)) throw std::invalid_argument("noise amplitudes must be nonnegative");
    if (!(rho_check >= 0.0 && rho_check <= 1.0)) throw std::invalid_argument("rho_check must lie in [0, 1]");
    if (levy && !(levy->intensity > 0.0)) throw std::invalid_argument("jump intensity must be positive");
    if (rho1 > 0.0 && rho_check < 1.0 && !levy) {
        throw std::invalid_argument("rho_check < 1 requires a jump specification");
    }
    interarrival.validate();
    if (!allow_test_laws) {
        if (interarrival.kind == InterarrivalLaw::Kind::degenerate) {
            throw std::invalid_argument("degenerate inter-arrival law is a testing hook only");
        }
        if (marks == MarkLaw::unit) throw std::invalid_argument("unit marks are a testing hook only");
    }
}

std::vector<double> ObservationPath::increments() const
{
    std::vector<double> out(y.size() > 0 ? y.size() - 1 : 0);
    for (std::size_t j = 1; j < y.size(); ++j) out[j - 1] = y[j] - y[j - 1];
    return out;
}

std::vector<double> sample_renewal_times(const InterarrivalLaw& eta, double horizon, const RngStream& rng,
                                         bool allow_test_laws)
{
    eta.validate();
    if (!allow_test_laws && eta.kind == InterarrivalLaw::Kind::degenerate) {
        throw std::invalid_argument("degenerate inter-arrival law is a testing hook only");
    }
    if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    std::vector<double> epochs;
    epochs.reserve(static_cast<std::size_t>(horizon / eta.mean() * 1.2) + 16);
    auto eng = rng.engine(Substream::renewal);
    double t = 0.0;
    while (true) {
        t += draw_interarrival(eta, eng);
        if (t > horizon) break;
        epochs.push_back(t);
    }
    return epochs;
}

std::vector<double> sample_semimarkov_increments(std::span<const double> grid, const NoiseSpec& spec,
                                                 const RngStream& rng)
{
    check_grid(grid);
    std::vector<double> dz(grid.size() - 1, 0.0);
    if (dz.empty()) return dz;
    const auto epochs = sample_renewal_times(spec.interarrival, grid.back(), rng, spec.allow_test_laws);
    MarkSampler marks(spec.marks, rng.engine(Substream::marks));
    auto cell = grid.begin();
    for (double t : epochs) {
        const double y = marks();
        if (t <= grid.front()) continue;
        // first grid point >= t closes the cell (s_{m-1}, s_m] containing t
        cell = std::lower_bound(cell, grid.end(), t);
        dz[static_cast<std::size_t>(cell - grid.begin()) - 1] += y;
    }
    return dz;
}

std::vector<double> sample_levy_increments(std::span<const double> grid, const NoiseSpec& spec,
                                           const RngStream& rng)
{
    check_grid(grid);
    if (spec.rho_check < 1.0 && !spec.levy) {
        throw std::invalid_argument("rho_check < 1 requires a jump specification");
    }
    std::vector<double> dl(grid.size() - 1, 0.0);
    auto brownian = rng.engine(Substream::brownian);
    std::normal_distribution<double> normal;
    for (std::size_t m = 1; m < grid.size(); ++m) {
        const double w = grid[m] - grid[m - 1];
        const double z = normal(brownian);
        dl[m - 1] = spec.rho_check * std::sqrt(w) * z;
    }
    if (spec.rho_check < 1.0) {
        const LevyJumps& jumps = *spec.levy;
        const double s = jumps.jump_scale();
        const double comp = jumps.intensity * jumps.jump_mean();
        const double amp = std::sqrt(1.0 - spec.rho_check * spec.rho_check);
        auto eng = rng.engine(Substream::levy_jumps);
        std::normal_distribution<double> gauss;
        std::exponential_distribution<double> expo(1.0 / s);
        for (std::size_t m = 1; m < grid.size(); ++m) {
            const double w = grid[m] - grid[m - 1];
            if (w <= 0.0) continue;
            const auto count = std::poisson_distribution<long long>(jumps.intensity * w)(eng);
            double sum = 0.0;
            for (long long c = 0; c < count; ++c) {
                switch (jumps.shape) {
                    case LevyJumps::Shape::two_point:
                        sum += (eng() >> 63) ? s : -s;
                        break;
                    case LevyJumps::Shape::gaussian:
                        sum += s * gauss(eng);
                        break;
                    case LevyJumps::Shape::exponential:
                        sum += expo(eng);
                        break;
                }
            }
            dl[m - 1] += amp * (sum - comp * w);
        }
    }
    return dl;
}

std::vector<double> uniform_grid(int n, int p)
{
    const long long cells = static_cast<long long>(n) * p;
    std::vector<double> grid(static_cast<std::size_t>(cells + 1));
    for (long long j = 0; j <= cells; ++j) grid[j] = static_cast<double>(j) / p;
    return grid;
}

ObservationPath sample_observations(const SignalSpec& signal, const NoiseSpec& spec, int n, int p,
                                    const RngStream& rng)
{
    if (n < 1) throw std::invalid_argument("sample_observations: n must be >= 1");
    if (p < 3) throw std::invalid_argument("sample_observations: p must be >= 3");
    spec.validate();
    const auto grid = uniform_grid(n, p);
    const std::size_t cells = grid.size() - 1;
    const auto drift = cell_integrals(signal, p);

    std::vector<double> dz;
    std::vector<double> dl;
    if (spec.rho2 != 0.0) dz = sample_semimarkov_increments(grid, spec, rng);
    if (spec.rho1 != 0.0) dl = sample_levy_increments(grid, spec, rng);

    ObservationPath path;
    path.n = n;
    path.p = p;
    path.y.assign(cells + 1, 0.0);
    double y = 0.0;
    for (std::size_t j = 1; j <= cells; ++j) {
        double dy = drift[(j - 1) % static_cast<std::size_t>(p)];
        if (!dl.empty()) dy += spec.rho1 * dl[j - 1];
        if (!dz.empty()) dy += spec.rho2 * dz[j - 1];
        y += dy;
        path.y[j] = y;
    }
    return path;
}

std::string to_string(MarkLaw law)
{
    switch (law) {
        case MarkLaw::normal:
            return "normal";
        case MarkLaw::rademacher:
            return "rademacher";
        case MarkLaw::uniform:
            return "uniform";
        case MarkLaw::unit:
            return "unit";
    }
    return "normal";
}

std::string to_string(const InterarrivalLaw& law)
{
    switch (law.kind) {
        case InterarrivalLaw::Kind::exponential:
            return "exponential(" + format_double(law.a) + ")";
        case InterarrivalLaw::Kind::gamma:
            return "gamma(" + format_double(law.a) + ", " + format_double(law.b) + ")";
        case InterarrivalLaw::Kind::chi_squared:
            return "chi_squared(" + format_double(law.a) + ")";
        case InterarrivalLaw::Kind::degenerate:
            return "degenerate(" + format_double(law.a) + ")";
    }
    return {};
}

std::string to_string(const std::optional<LevyJumps>& levy)
{
    if (!levy) return "none";
    const char* shape = "two_point";
    if (levy->shape == LevyJumps::Shape::gaussian) shape = "gaussian";
    if (levy->shape == LevyJumps::Shape::exponential) shape = "exponential";
    return std::string(shape) + "(" + format_double(levy->intensity) + ")";
}

MarkLaw parse_mark_law(const std::string& text)
{
    const auto t = trim(text);
    if (t == "normal") return MarkLaw::normal;
    if (t == "rademacher") return MarkLaw::rademacher;
    if (t == "uniform") return MarkLaw::uniform;
    if (t == "unit") return MarkLaw::unit;
    throw std::invalid_argument("unknown mark law '" + std::string(t) + "'");
}

InterarrivalLaw parse_interarrival(const std::string& text)
{
    const auto call = parse_call(text);
    auto need = [&](std::size_t k) {
        if (call.args.size() != k) throw std::invalid_argument("wrong argument count in '" + text + "'");
    };
    InterarrivalLaw law;
    if (call.name == "exponential") {
        need(1);
        law = InterarrivalLaw::exponential(parse_double(call.args[0]));
    } else if (call.name == "gamma") {
        need(2);
        law = InterarrivalLaw::gamma(parse_double(call.args[0]), parse_double(call.args[1]));
    } else if (call.name == "chi_squared") {
        need(1);
        law = InterarrivalLaw::chi_squared(parse_double(call.args[0]));
    } else if (call.name == "degenerate") {
        need(1);
        law = InterarrivalLaw::degenerate(parse_double(call.args[0]));
    } else {
        throw std::invalid_argument("unknown inter-arrival law '" + text + "'");
    }
    law.validate();
    return law;
}

std::optional<LevyJumps> parse_levy(const std::string& text)
{
    const auto call = parse_call(text);
    if (call.name == "none" && call.args.empty()) return std::nullopt;
    if (call.args.size() != 1) throw std::invalid_argument("jump law takes one intensity argument: '" + text + "'");
    LevyJumps jumps;
    jumps.intensity = parse_double(call.args[0]);
    if (call.name == "two_point") jumps.shape = LevyJumps::Shape::two_point;
    else if (call.name == "gaussian") jumps.shape = LevyJumps::Shape::gaussian;
    else if (call.name == "exponential") jumps.shape = LevyJumps::Shape::exponential;
    else throw std::invalid_argument("unknown jump law '" + text + "'");
    if (!(jumps.intensity > 0.0)) throw std::invalid_argument("jump intensity must be positive");
    return jumps;
}

}  // namespace smreg
