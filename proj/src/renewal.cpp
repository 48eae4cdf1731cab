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

#include "smreg/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "smreg/quadrature.hpp"

namespace smreg {

namespace {

// Kernel data on the grid x_i = i h: node densities g_i (i = 0..M), cell
// masses dG_m and first moments dM_m over [x_m, x_{m+1}] (m = 0..M-1).
struct KernelCells {
    std::vector<double> g;
    std::vector<double> mass;
    std::vector<double> moment;
    double tail_mass = 0.0;  // kernel mass beyond the horizon
};

void check_grid_args(double tau_bar, double h, double T)
{
    if (!(tau_bar > 0.0) || !std::isfinite(tau_bar)) throw std::invalid_argument("renewal: mean must be positive");
    if (!(h > 0.0) || h > tau_bar / 50.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("renewal: step must satisfy 0 < h <= tau_bar/50");
    }
    if (T < 20.0 * tau_bar * (1.0 - 1e-12)) throw std::invalid_argument("renewal: horizon must be >= 20 tau_bar");
}

std::size_t cell_count(double h, double T) { return static_cast<std::size_t>(std::llround(T / h)); }

RenewalSolution march(const KernelCells& k, double tau_bar, double h, const RenewalOptions& options)
{
    const std::size_t cells = k.mass.size();
    // Product trapezoid weights: on [x_m, x_{m+1}], the linear hat functions
    // integrated against g give A_m (left node) and B_m (right node).
    std::vector<double> a(cells);
    std::vector<double> b(cells);
    for (std::size_t m = 0; m < cells; ++m) {
        const double xm = static_cast<double>(m) * h;
        a[m] = (k.moment[m] - xm * k.mass[m]) / h;
        b[m] = (k.mass[m] - a[m]);
    }

    // Normalize the forcing so the discrete scheme's ergodic limit is exactly
    // 1/tau_bar: the limit of the unnormalized scheme is h (sum g - g_0 sum B)/tau_bar
    // with both sums running to infinity. Past the horizon the node sum is the
    // tail mass less half the last node, and B takes half of each cell's mass.
    const double sum_g = pairwise_sum(k.g);
    const double sum_b = pairwise_sum(b);
    const double beyond = k.tail_mass - 0.5 * h * k.g.back() - 0.5 * h * k.g[0] * k.tail_mass;
    const double norm = h * (sum_g - k.g[0] * sum_b) + std::max(beyond, 0.0);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("renewal: degenerate kernel");

    // C_d = A_{d-1} + B_d couples rho_{i-d} to rho_i for d >= 1.
    std::vector<double> c(cells + 1, 0.0);
    for (std::size_t d = 1; d <= cells; ++d) c[d] = a[d - 1] + (d < cells ? b[d] : 0.0);

    RenewalSolution out;
    out.step = h;
    out.horizon = static_cast<double>(cells) * h;
    out.tau_bar = tau_bar;
    out.rho.assign(cells + 1, 0.0);
    auto& rho = out.rho;
    const double diag = 1.0 - b[0];
    rho[0] = k.g[0] / norm;
    for (std::size_t i = 1; i <= cells; ++i) {
        double acc = k.g[i] / norm + rho[0] * a[i - 1];
        const double* ci = c.data() + i;
        for (std::size_t kk = 1; kk < i; ++kk) acc += rho[kk] * ci[-static_cast<std::ptrdiff_t>(kk)];
        rho[i] = acc / diag;
    }

    const double limit = 1.0 / tau_bar;
    std::vector<double> abs_dev(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) abs_dev[i] = std::abs(rho[i] - limit);
    std::vector<double> trap(cells);
    for (std::size_t i = 0; i < cells; ++i) trap[i] = 0.5 * h * (abs_dev[i] + abs_dev[i + 1]);
    const double body = pairwise_sum(trap);

    // Geometric tail from the decay of |Upsilon| peaks over the last two decades.
    const std::size_t decade = std::max<std::size_t>(cells / 10, 1);
    const double peak_last = *std::max_element(abs_dev.end() - static_cast<std::ptrdiff_t>(decade), abs_dev.end());
    const double peak_prev = *std::max_element(abs_dev.end() - static_cast<std::ptrdiff_t>(2 * decade),
                                               abs_dev.end() - static_cast<std::ptrdiff_t>(decade));
    const double span = static_cast<double>(decade) * h;
    double tail = 0.0;
    if (peak_last > 0.0) {
        const double rate = std::log(peak_prev / peak_last) / span;
        if (rate > 0.0 && std::isfinite(rate)) tail = peak_last / rate;
        else if (peak_last < options.tail_tolerance * 1e-6) tail = peak_last * span;  // at rounding level
        else tail = std::numeric_limits<double>::infinity();
    }

    out.upsilon_tail = tail;
    out.upsilon_l1 = body + tail;
    out.rho_sup = *std::max_element(rho.begin(), rho.end());
    out.tail_deviation = abs_dev.back();
    out.tail_converged = out.tail_deviation <= options.tail_tolerance && std::isfinite(tail);
    return out;
}

}  // namespace

RenewalSolution solve_renewal_density(const InterarrivalLaw& eta, double h, double T, const RenewalOptions& options)
{
    eta.validate();
    if (eta.kind == InterarrivalLaw::Kind::degenerate) {
        throw std::invalid_argument("renewal: degenerate law has no density");
    }
    const double shape = eta.gamma_shape();
    const double scale = eta.gamma_scale();
    if (shape < 1.0) throw std::invalid_argument("renewal: density must be bounded (gamma shape >= 1)");
    const double tau_bar = eta.mean();
    check_grid_args(tau_bar, h, T);

    const std::size_t cells = cell_count(h, T);
    KernelCells k;
    k.g.resize(cells + 1);
    k.mass.resize(cells);
    k.moment.resize(cells);
    for (std::size_t i = 0; i <= cells; ++i) k.g[i] = eta.density(static_cast<double>(i) * h);
    // upper regularized incomplete gamma keeps tail differences accurate
    double q0 = 1.0;
    double q1 = 1.0;
    for (std::size_t m = 0; m < cells; ++m) {
        const double x = static_cast<double>(m + 1) * h / scale;
        const double q0_next = boost::math::gamma_q(shape, x);
        const double q1_next = boost::math::gamma_q(shape + 1.0, x);
        k.mass[m] = q0 - q0_next;
        k.moment[m] = tau_bar * (q1 - q1_next);
        q0 = q0_next;
        q1 = q1_next;
    }
    k.tail_mass = q0;
    return march(k, tau_bar, h, options);
}

RenewalSolution solve_renewal_density(const std::function<double(double)>& g, double h, double T,
                                      const RenewalOptions& options)
{
    if (!(h > 0.0) || !(T > h)) throw std::invalid_argument("renewal: need 0 < h < T");
    const std::size_t cells = cell_count(h, T);
    KernelCells k;
    k.g.resize(cells + 1);
    k.mass.resize(cells);
    k.moment.resize(cells);
    auto checked = [&](double x) {
        const double v = g(x);
        if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("renewal: density must be finite and nonnegative");
        return v;
    };
    for (std::size_t i = 0; i <= cells; ++i) k.g[i] = checked(static_cast<double>(i) * h);
    for (std::size_t m = 0; m < cells; ++m) {
        const double lo = static_cast<double>(m) * h;
        k.mass[m] = gauss_legendre4(checked, lo, lo + h);
        k.moment[m] = gauss_legendre4([&](double x) { return x * checked(x); }, lo, lo + h);
    }
    const double total = pairwise_sum(k.mass);
    if (!(std::abs(total - 1.0) <= 1e-3)) {
        throw std::invalid_argument("renewal: density does not integrate to one over [0, T]");
    }
    const double tau_bar = pairwise_sum(k.moment);
    check_grid_args(tau_bar, h, T);
    return march(k, tau_bar, h, options);
}

RenewalSolution solve_renewal_density(const InterarrivalLaw& eta)
{
    const double tau_bar = eta.mean();
    return solve_renewal_density(eta, tau_bar / 200.0, 40.0 * tau_bar);
}

double proxy_variance(double rho1, double rho2, double tau_bar)
{
    if (!(tau_bar > 0.0)) throw std::invalid_argument("proxy_variance: tau_bar must be positive");
    return rho1 * rho1 + rho2 * rho2 / tau_bar;
}

double kappa(double rho1, double rho2, double rho_sup)
{
    if (!(rho_sup >= 0.0)) throw std::invalid_argument("kappa: rho_sup must be nonnegative");
    return rho1 * rho1 + rho2 * rho2 * rho_sup;
}

NoiseScalars noise_scalars(const NoiseSpec& spec, const RenewalSolution& renewal, double varsigma_star)
{
    NoiseScalars s;
    s.sigma_q = proxy_variance(spec.rho1, spec.rho2, renewal.tau_bar);
    s.kappa_q = kappa(spec.rho1, spec.rho2, renewal.rho_sup);
    s.varsigma_star = varsigma_star;
    return s;
}

}  // namespace smreg
