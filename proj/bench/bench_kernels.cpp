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

// Parallel kernels against their serial references at desk-scale sizes
// (p = 1001), plus the fast paths alone at p = 10001 where the references
// take seconds per call.
//
//   bench_kernels --benchmark_filter=theta_hat

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "smreg/estimator.hpp"
#include "smreg/kernels.hpp"
#include "smreg/reference.hpp"

namespace {

std::vector<double> noise_vector(std::size_t size, unsigned seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::vector<double> v(size);
    for (auto& x : v) x = normal(gen);
    return v;
}

smreg::ObservationPath bench_path(int n, int p)
{
    smreg::NoiseSpec noise;
    return smreg::sample_observations(smreg::SignalSpec::benchmark(), noise, n, p, smreg::RngStream{1, 0});
}

void BM_project(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const smreg::GridBasis basis(p);
    const auto values = noise_vector(static_cast<std::size_t>(p), 1);
    for (auto _ : state) benchmark::DoNotOptimize(smreg::project(basis, values, p - 1));
    state.SetComplexityN(p);
}

void BM_project_reference(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const auto values = noise_vector(static_cast<std::size_t>(p), 1);
    for (auto _ : state) benchmark::DoNotOptimize(smreg::reference::project(values, p, p - 1));
    state.SetComplexityN(p);
}

void BM_synthesize(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const smreg::GridBasis basis(p);
    const auto coef = noise_vector(static_cast<std::size_t>(p - 1), 2);
    for (auto _ : state) benchmark::DoNotOptimize(smreg::synthesize(basis, coef));
}

void BM_synthesize_reference(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    const auto coef = noise_vector(static_cast<std::size_t>(p - 1), 2);
    for (auto _ : state) benchmark::DoNotOptimize(smreg::reference::synthesize(coef, p));
}

void BM_theta_hat(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    const auto obs = bench_path(n, p);
    const smreg::GridBasis basis(p);
    for (auto _ : state) benchmark::DoNotOptimize(smreg::theta_hat(obs, basis));
}

void BM_theta_hat_reference(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    const auto obs = bench_path(n, p);
    for (auto _ : state) benchmark::DoNotOptimize(smreg::reference::theta_hat(obs));
}

// Candidate costs for the default family at n = 100.
struct CostInputs {
    smreg::WeightFamily family;
    smreg::CoefficientEstimates est;
    double sigma = 0.0;
    double delta = 0.0;
};

CostInputs cost_inputs(int p)
{
    const int n = 100;
    CostInputs in;
    in.est = smreg::theta_hat(bench_path(n, p));
    in.family = smreg::build_weight_family(smreg::default_kstar(n, 100), smreg::default_eps(n), n, p);
    in.sigma = smreg::sigma_hat(in.est);
    in.delta = smreg::default_delta(n);
    return in;
}

void BM_costs(benchmark::State& state)
{
    const auto in = cost_inputs(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(smreg::evaluate_costs(in.family, in.est, in.sigma, in.delta));
    state.counters["candidates"] = static_cast<double>(in.family.nu());
}

void BM_costs_reference(benchmark::State& state)
{
    const auto in = cost_inputs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(smreg::reference::evaluate_costs(in.family, in.est, in.sigma, in.delta));
    }
    state.counters["candidates"] = static_cast<double>(in.family.nu());
}

}  // namespace

BENCHMARK(BM_project)->Arg(101)->Arg(1001)->Arg(10001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_project_reference)->Arg(101)->Arg(1001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_synthesize)->Arg(1001)->Arg(10001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_synthesize_reference)->Arg(1001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_theta_hat)->Args({100, 1001})->Args({20, 10001})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theta_hat_reference)->Args({100, 1001})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_costs)->Arg(1001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_costs_reference)->Arg(1001)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
