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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smreg {

/// Trigonometric basis of L2[0,1]: phi_1 = 1, phi_j = sqrt(2) cos(2 pi [j/2] x)
/// for even j and sqrt(2) sin(2 pi [j/2] x) for odd j >= 3.
double trig_basis(int j, double x);

/// Step version of phi_j on the grid t_l = l/p: the value phi_j(t_l) at the
/// right endpoint of the cell (t_{l-1}, t_l] containing t.
/// Throws std::out_of_range unless 1 <= j <= p - 1 and t > 0.
double psi_basis(int j, int p, double t);

/// Index l of the grid cell (t_{l-1}, t_l] that contains t > 0.
long long grid_cell(int p, double t);

/// A 1-periodic signal. Evaluation uses the periodic extension of the
/// definition on (0, 1] for custom signals and on [0, 1) for the others.
class SignalSpec {
public:
    enum class Kind { benchmark, trig_polynomial, tabulated, custom };

    /// |t - 1/2| on [1/4, 3/4], 1/4 elsewhere on [0, 1).
    static SignalSpec benchmark();
    /// sum_j c_j phi_j(t), coefficients indexed from j = 1.
    static SignalSpec trig_polynomial(std::vector<double> coefficients);
    /// Periodic piecewise-linear interpolation of values at t = k/m.
    static SignalSpec tabulated(std::vector<double> values);
    /// Arbitrary callable on (0, 1]; not serializable. `derivative` is optional.
    static SignalSpec custom(std::string name, std::function<double(double)> fn,
                             std::function<double(double)> derivative = {});

    Kind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return data_; }
    const std::string& name() const { return name_; }

    double operator()(double t) const;
    /// Derivative where it exists (one-sided at kinks). Throws for custom
    /// signals without a derivative.
    double derivative(double t) const;

    /// Exact L2[0,1] Fourier coefficient (S, phi_j), when it has a closed form
    /// (benchmark, trig polynomials and tabulated signals).
    std::optional<double> exact_coefficient(int j) const;

    /// Breakpoints in [0, 1] where the signal or its derivative may jump.
    std::vector<double> breakpoints() const;

    friend bool operator==(const SignalSpec& a, const SignalSpec& b);

private:
    SignalSpec() = default;

    Kind kind_ = Kind::benchmark;
    std::vector<double> data_;
    std::string name_;
    std::function<double(double)> fn_;
    std::function<double(double)> derivative_;
};

/// Discrete Fourier coefficients and, optionally, the correction terms
/// relating them to the step-basis coefficients.
struct FourierCoefficients {
    int p = 0;
    std::vector<double> theta;                     // theta[j-1] = theta_{j,p}, j = 1..p
    std::optional<std::vector<double>> theta_bar;  // int_0^1 S Psi_{j,p}
    std::optional<std::vector<double>> h;          // theta_bar - theta
};

/// Values S(t_i), t_i = i/p, i = 1..p.
std::vector<double> sample_on_grid(const SignalSpec& signal, int p);

/// Cell integrals int_{t_{i-1}}^{t_i} S(t) dt for i = 1..p (four-point Gauss per cell,
/// split at breakpoints).
std::vector<double> cell_integrals(const SignalSpec& signal, int p);

/// theta_{j,p} = (S, phi_j)_p for j = 1..p. Requires p >= 3.
FourierCoefficients discrete_fourier_coeffs(const SignalSpec& signal, int p);

/// theta_{j,p}, h_{j,p} and theta_bar_{j,p} for j = 1..p. Requires p >= 3.
FourierCoefficients correction_coeffs(const SignalSpec& signal, int p);

/// (x, y)_p = (1/p) sum x_i y_i; both arguments hold p grid values.
double discrete_inner(std::span<const double> x, std::span<const double> y, int p);
double discrete_norm_sq(std::span<const double> x, int p);

/// ||S||^2 = int_0^1 S^2 and ||S'||_1 = int_0^1 |S'|, by piecewise Gauss quadrature.
double l2_norm_sq(const SignalSpec& signal, std::size_t cells = 4096);
double derivative_l1_norm(const SignalSpec& signal, std::size_t cells = 4096);

}  // namespace smreg
