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

// Command-line front end: resolves a config from preset, file and flags,
// then hands one subcommand to smreg::cli::run.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "smreg/cli.hpp"
#include "smreg/kernels.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive model selection for periodic signals under semi-Markov noise"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool strict_h5 = false;
    std::string out_dir = ".";
    app.add_option("--config", config_path, "config file (key = value lines)")->check(CLI::ExistingFile);
    app.add_option("--preset", preset_name, "starting point for the config")
        ->check(CLI::IsMember(smreg::preset_names()));
    app.add_option("--seed", seed, "base seed (overrides the config)");
    app.add_option("--threads", threads, "OpenMP threads; results do not depend on it")->check(CLI::NonNegativeNumber);
    app.add_flag("--strict-h5", strict_h5, "reject p < n^(5/6)");
    app.add_option("--out", out_dir, "output directory");

    smreg::cli::RunRequest req;
    int n = 0;
    std::uint32_t stream = 0;
    std::string input;
    bool timing = false;
    bool no_oracle = false;

    auto* simulate = app.add_subcommand("simulate", "sample one observation path (j, t_j, y_j)");
    auto* estimate = app.add_subcommand("estimate", "fit the selected estimator and dump the candidate costs");
    auto* risk = app.add_subcommand("risk-table", "Monte Carlo risk table (n, p, N, R_bar, ...)");
    auto* renewal = app.add_subcommand("renewal-density", "renewal density of the inter-arrival law (x, rho, upsilon)");
    auto* figures = app.add_subcommand("figures", "estimates on the grid for every configured n (t, S, S_hat)");
    for (auto* sub : {simulate, estimate}) {
        sub->add_option("--n", n, "number of periods (default: first configured n)")->check(CLI::PositiveNumber);
        sub->add_option("--stream", stream, "replication index of the path");
    }
    figures->add_option("--stream", stream, "replication index of the paths");
    estimate->add_option("--input", input, "path CSV to estimate from instead of simulating")->check(CLI::ExistingFile);
    risk->add_flag("--timing", timing, "record wall-clock seconds (makes the CSV run-dependent)");
    risk->add_flag("--no-oracle", no_oracle, "skip the oracle column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        smreg::RunConfig cfg = preset_name.empty() ? smreg::RunConfig{} : smreg::preset(preset_name);
        if (!config_path.empty()) cfg = smreg::load_config(config_path, cfg);
        if (seed) cfg.experiment.seed = *seed;
        if (strict_h5) cfg.experiment.strict_h5 = true;
        cfg.experiment.validate();
        smreg::set_threads(threads);

        req.subcommand = app.get_subcommands().front()->get_name();
        req.config = cfg;
        req.out_dir = out_dir;
        req.n = n;
        req.stream = stream;
        if (!input.empty()) req.input = input;
        req.timing = timing;
        req.oracle = !no_oracle;

        const auto manifest = smreg::cli::run(req);
        for (const auto& p : manifest.outputs) std::cout << p.string() << '\n';
        std::cout << "digest " << manifest.digest() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "smreg: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
