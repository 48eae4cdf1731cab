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

#include "smreg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smreg/kernels.hpp"
#include "smreg/quadrature.hpp"

namespace smreg {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double wrap_closed_open(double t) { return t - std::floor(t); }

// periodic representative in (0, 1]
double wrap_open_closed(double t) { return t - std::ceil(t) + 1.0; }

// int_a^b (c0 + c1 t) phi_j(t) dt in closed form
double linear_times_basis(int j, double a, double b, double c0, double c1)
{
    if (j == 1) return c0 * (b - a) + 0.5 * c1 * (b * b - a * a);
    const double w = 2.0 * kPi * static_cast<double>(j / 2);
    auto primitive = [&](double t) {
        const double lin = c0 + c1 * t;
        if (j % 2 == 0) return lin * std::sin(w * t) / w + c1 * std::cos(w * t) / (w * w);
        return -lin * std::cos(w * t) / w + c1 * std::sin(w * t) / (w * w);
    };
    return kSqrt2 * (primitive(b) - primitive(a));
}

// Integrate f over [a, b] with four-point Gauss on pieces split at the signal's
// breakpoints. [a, b] must lie within [0, 1].
template <class F>
double integrate_split(F&& f, double a, double b, const std::vector<double>& bps)
{
    double acc = 0.0;
    double lo = a;
    auto it = std::upper_bound(bps.begin(), bps.end(), a);
    for (; it != bps.end() && *it < b; ++it) {
        acc += gauss_legendre4(f, lo, *it);
        lo = *it;
    }
    return acc + gauss_legendre4(f, lo, b);
}

}  // namespace

double trig_basis(int j, double x)
{
    if (j < 1) throw std::out_of_range("trig_basis: index must be >= 1");
    if (j == 1) return 1.0;
    const double arg = 2.0 * kPi * static_cast<double>(j / 2) * x;
    return kSqrt2 * ((j % 2 == 0) ? std::cos(arg) : std::sin(arg));
}

long long grid_cell(int p, double t)
{
    auto l = static_cast<long long>(std::ceil(t * p));
    // guard against t*p rounding up across an integer
    if (static_cast<double>(l - 1) / p >= t) --l;
    else if (static_cast<double>(l) / p < t) ++l;
    return l;
}

double psi_basis(int j, int p, double t)
{
    if (j < 1 || j > p - 1) throw std::out_of_range("psi_basis: index outside 1..p-1");
    if (!(t > 0.0)) throw std::out_of_range("psi_basis: t must be positive");
    const long long l = grid_cell(p, t);
    return trig_basis(j, static_cast<double>(l) / p);
}

SignalSpec SignalSpec::benchmark()
{
    SignalSpec s;
    s.kind_ = Kind::benchmark;
    s.name_ = "benchmark";
    return s;
}

SignalSpec SignalSpec::trig_polynomial(std::vector<double> coefficients)
{
    if (coefficients.empty()) throw std::invalid_argument("trig_polynomial: no coefficients");
    SignalSpec s;
    s.kind_ = Kind::trig_polynomial;
    s.data_ = std::move(coefficients);
    s.name_ = "trig";
    return s;
}

SignalSpec SignalSpec::tabulated(std::vector<double> values)
{
    if (values.empty()) throw std::invalid_argument("tabulated: no values");
    SignalSpec s;
    s.kind_ = Kind::tabulated;
    s.data_ = std::move(values);
    s.name_ = "tabulated";
    return s;
}

SignalSpec SignalSpec::custom(std::string name, std::function<double(double)> fn,
                              std::function<double(double)> derivative)
{
    if (!fn) throw std::invalid_argument("custom: empty function");
    SignalSpec s;
    s.kind_ = Kind::custom;
    s.name_ = std::move(name);
    s.fn_ = std::move(fn);
    s.derivative_ = std::move(derivative);
    return s;
}

double SignalSpec::operator()(double t) const
{
    switch (kind_) {
        case Kind::benchmark: {
            const double u = wrap_closed_open(t);
            return (u >= 0.25 && u <= 0.75) ? std::abs(u - 0.5) : 0.25;
        }
        case Kind::trig_polynomial: {
            double acc = 0.0;
            for (std::size_t j = 0; j < data_.size(); ++j) {
                if (data_[j] != 0.0) acc += data_[j] * trig_basis(static_cast<int>(j + 1), t);
            }
            return acc;
        }
        case Kind::tabulated: {
            const double m = static_cast<double>(data_.size());
            const double x = wrap_closed_open(t) * m;
            auto k = static_cast<std::size_t>(x);
            if (k >= data_.size()) k = data_.size() - 1;
            const double frac = x - static_cast<double>(k);
            const double next = data_[(k + 1) % data_.size()];
            return data_[k] + frac * (next - data_[k]);
        }
        case Kind::custom:
            return fn_(wrap_open_closed(t));
    }
    return 0.0;
}

double SignalSpec::derivative(double t) const
{
    switch (kind_) {
        case Kind::benchmark: {
            const double u = wrap_closed_open(t);
            if (u < 0.25 || u >= 0.75) return 0.0;
            return u < 0.5 ? -1.0 : 1.0;
        }
        case Kind::trig_polynomial: {
            double acc = 0.0;
            for (std::size_t idx = 1; idx < data_.size(); ++idx) {
                const int j = static_cast<int>(idx + 1);
                const double w = 2.0 * kPi * static_cast<double>(j / 2);
                const double arg = w * t;
                acc += data_[idx] * kSqrt2 * w * ((j % 2 == 0) ? -std::sin(arg) : std::cos(arg));
            }
            return acc;
        }
        case Kind::tabulated: {
            const double m = static_cast<double>(data_.size());
            auto k = static_cast<std::size_t>(wrap_closed_open(t) * m);
            if (k >= data_.size()) k = data_.size() - 1;
            return (data_[(k + 1) % data_.size()] - data_[k]) * m;
        }
        case Kind::custom:
            if (!derivative_) throw std::logic_error("custom signal has no derivative");
            return derivative_(wrap_open_closed(t));
    }
    return 0.0;
}

std::optional<double> SignalSpec::exact_coefficient(int j) const
{
    if (j < 1) throw std::out_of_range("exact_coefficient: index must be >= 1");
    switch (kind_) {
        case Kind::trig_polynomial:
            return static_cast<std::size_t>(j) <= data_.size() ? data_[j - 1] : 0.0;
        case Kind::benchmark:
        case Kind::tabulated: {
            const std::vector<double> nodes =
                kind_ == Kind::benchmark ? std::vector<double>{0.25, 0.25, 0.0, 0.25} : data_;
            const double m = static_cast<double>(nodes.size());
            double acc = 0.0;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                const double a = static_cast<double>(k) / m;
                const double b = static_cast<double>(k + 1) / m;
                const double slope = (nodes[(k + 1) % nodes.size()] - nodes[k]) * m;
                acc += linear_times_basis(j, a, b, nodes[k] - slope * a, slope);
            }
            return acc;
        }
        case Kind::custom:
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<double> SignalSpec::breakpoints() const
{
    switch (kind_) {
        case Kind::benchmark:
            return {0.0, 0.25, 0.5, 0.75, 1.0};
        case Kind::tabulated: {
            std::vector<double> out(data_.size() + 1);
            for (std::size_t k = 0; k <= data_.size(); ++k) {
                out[k] = static_cast<double>(k) / static_cast<double>(data_.size());
            }
            return out;
        }
        default:
            return {0.0, 1.0};
    }
}

bool operator==(const SignalSpec& a, const SignalSpec& b)
{
    return a.kind_ == b.kind_ && a.data_ == b.data_ && a.name_ == b.name_;
}

std::vector<double> sample_on_grid(const SignalSpec& signal, int p)
{
    if (p < 1) throw std::invalid_argument("sample_on_grid: p must be positive");
    std::vector<double> out(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) out[i - 1] = signal(static_cast<double>(i) / p);
    return out;
}

std::vector<double> cell_integrals(const SignalSpec& signal, int p)
{
    if (p < 1) throw std::invalid_argument("cell_integrals: p must be positive");
    const auto bps = signal.breakpoints();
    // custom signals are defined on (0, 1]; evaluate strictly inside each cell
    auto f = [&](double t) { return signal(t); };
    std::vector<double> out(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
        const double a = static_cast<double>(i - 1) / p;
        const double b = static_cast<double>(i) / p;
        out[i - 1] = integrate_split(f, a, b, bps);
    }
    return out;
}

FourierCoefficients discrete_fourier_coeffs(const SignalSpec& signal, int p)
{
    if (p < 3) throw std::invalid_argument("discrete_fourier_coeffs: p must be >= 3");
    const GridBasis basis(p);
    const auto values = sample_on_grid(signal, p);
    FourierCoefficients out;
    out.p = p;
    out.theta = project(basis, values, p);
    return out;
}

FourierCoefficients correction_coeffs(const SignalSpec& signal, int p)
{
    auto out = discrete_fourier_coeffs(signal, p);
    const GridBasis basis(p);
    auto cells = cell_integrals(signal, p);
    for (auto& c : cells) c *= p;  // project() divides by p
    auto bar = project(basis, cells, p);
    std::vector<double> h(bar.size());
    for (std::size_t j = 0; j < bar.size(); ++j) h[j] = bar[j] - out.theta[j];
    out.theta_bar = std::move(bar);
    out.h = std::move(h);
    return out;
}

double discrete_inner(std::span<const double> x, std::span<const double> y, int p)
{
    if (p < 1 || x.size() != static_cast<std::size_t>(p) || y.size() != static_cast<std::size_t>(p)) {
        throw std::invalid_argument("discrete_inner: arguments must hold p grid values");
    }
    double acc = 0.0;
    for (int i = 0; i < p; ++i) acc += x[i] * y[i];
    return acc / p;
}

double discrete_norm_sq(std::span<const double> x, int p) { return discrete_inner(x, x, p); }

double l2_norm_sq(const SignalSpec& signal, std::size_t cells)
{
    const auto bps = signal.breakpoints();
    auto f = [&](double t) {
        const double v = signal(t);
        return v * v;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(cells);
        const double b = static_cast<double>(i + 1) / static_cast<double>(cells);
        acc += integrate_split(f, a, b, bps);
    }
    return acc;
}

double derivative_l1_norm(const SignalSpec& signal, std::size_t cells)
{
    const auto bps = signal.breakpoints();
    auto f = [&](double t) { return std::abs(signal.derivative(t)); };
    double acc = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(cells);
        const double b = static_cast<double>(i + 1) / static_cast<double>(cells);
        acc += integrate_split(f, a, b, bps);
    }
    return acc;
}

}  // namespace smreg
