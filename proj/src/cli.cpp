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

#include "smreg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "smreg/estimator.hpp"
#include "smreg/kernels.hpp"
#include "smreg/renewal.hpp"
#include "smreg/risk.hpp"
#include "smreg/text.hpp"

namespace smreg::cli {

namespace {

namespace fs = std::filesystem;

int pick_n(const RunRequest& req)
{
    if (req.n > 0) return req.n;
    return req.config.experiment.n_values.front();
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_estimate(const fs::path& dir, const std::string& stem, RunManifest& manifest, const SignalSpec& signal,
                    const SelectionResult& sel, int p)
{
    const auto path = dir / (stem + ".csv");
    CsvWriter csv(path, manifest, {"t", "S", "S_hat"});
    for (int i = 1; i <= p; ++i) {
        const double t = static_cast<double>(i) / p;
        csv.row({t, signal(t), sel.estimate[static_cast<std::size_t>(i - 1)]});
    }
    csv.close();
    manifest.outputs.push_back(path);
}

void write_selection(const fs::path& path, RunManifest& manifest, const WeightFamily& family,
                     const SelectionResult& sel)
{
    CsvWriter csv(path, manifest, {"candidate", "beta", "l", "J", "selected"});
    for (std::size_t k = 0; k < family.weights.size(); ++k) {
        const auto& w = family.weights[k];
        csv.row({std::to_string(k), std::to_string(w.beta), format_double(w.l), format_double(sel.costs[k]),
                 k == sel.selected ? "1" : "0"});
    }
    csv.close();
    manifest.outputs.push_back(path);
}

void run_simulate(const RunRequest& req, RunManifest& m)
{
    const auto& x = req.config.experiment;
    const int n = pick_n(req);
    const int p = x.resolve_p(n);
    const auto path = sample_observations(x.signal, x.noise, n, p, RngStream{x.seed, req.stream});
    const auto file = req.out_dir / ("path_n" + std::to_string(n) + ".csv");
    CsvWriter csv(file, m, {"j", "t_j", "y_j"});
    for (std::size_t j = 0; j < path.y.size(); ++j) {
        csv.row({std::to_string(j), format_double(static_cast<double>(j) / p), format_double(path.y[j])});
    }
    csv.close();
    m.outputs.push_back(file);
}

void run_estimate(const RunRequest& req, RunManifest& m)
{
    ExperimentConfig x = req.config.experiment;
    SelectionResult sel;
    WeightFamily family;
    int n = 0;
    int p = 0;
    if (req.input) {
        const auto obs = read_path_csv(*req.input);
        n = obs.n;
        p = obs.p;
        x.p = p;
        const GridBasis basis(p);
        family = weight_family_for(x, n);
        const auto est = theta_hat(obs, basis, coefficients_needed(family, n, p));
        sel = select_model(est, family, x.estimator.delta_for(n), basis);
    } else {
        n = pick_n(req);
        p = x.resolve_p(n);
        family = weight_family_for(x, n);
        sel = estimate_once(x, n, req.stream);
    }
    const std::string suffix = "_n" + std::to_string(n);
    write_estimate(req.out_dir, "estimate" + suffix, m, x.signal, sel, p);
    write_selection(req.out_dir / ("selection" + suffix + ".csv"), m, family, sel);
}

void run_risk_table(const RunRequest& req, RunManifest& m)
{
    const auto report = risk_table(req.config.experiment,
                                   RiskOptions{.with_oracle = req.oracle, .timing = req.timing, .estimator = {}});
    const auto file = req.out_dir / "risk_table.csv";
    CsvWriter csv(file, m, {"n", "p", "N", "R_bar", "R_bar_se", "R_rel", "oracle", "seconds"});
    for (const auto& r : report.rows) {
        csv.row({std::to_string(r.n), std::to_string(r.p), std::to_string(r.replications), format_double(r.r_bar),
                 format_double(r.r_bar_se), format_double(r.r_rel), format_double(r.oracle),
                 format_double(r.seconds)});
    }
    csv.close();
    m.outputs.push_back(file);
}

void run_renewal_density(const RunRequest& req, RunManifest& m)
{
    const auto& law = req.config.experiment.noise.interarrival;
    const double tau = law.mean();
    const double h = req.config.renewal_step > 0.0 ? req.config.renewal_step : tau / 200.0;
    const double T = req.config.renewal_horizon > 0.0 ? req.config.renewal_horizon : 40.0 * tau;
    const auto sol = solve_renewal_density(law, h, T);
    const auto file = req.out_dir / "renewal_density.csv";
    CsvWriter csv(file, m, {"x", "rho", "upsilon"});
    for (std::size_t i = 0; i < sol.rho.size(); ++i) csv.row({sol.x(i), sol.rho[i], sol.upsilon(i)});
    csv.close();
    m.outputs.push_back(file);
}

void run_figures(const RunRequest& req, RunManifest& m)
{
    const auto& x = req.config.experiment;
    for (int n : x.n_values) {
        const auto sel = estimate_once(x, n, req.stream);
        write_estimate(req.out_dir, "figure_n" + std::to_string(n), m, x.signal, sel, x.resolve_p(n));
    }
}

}  // namespace

ObservationPath read_path_csv(const std::filesystem::path& path)
{
    std::istringstream in(slurp(path));
    std::string line;
    bool header = true;
    std::vector<double> t;
    std::vector<double> y;
    while (std::getline(in, line)) {
        const auto view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        if (header) {
            if (view != "j,t_j,y_j") throw std::invalid_argument("path csv: expected header 'j,t_j,y_j'");
            header = false;
            continue;
        }
        const auto c1 = view.find(',');
        const auto c2 = view.find(',', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
            throw std::invalid_argument("path csv: malformed row '" + std::string(view) + "'");
        }
        const auto j = parse_integer(view.substr(0, c1));
        if (j != static_cast<long long>(y.size())) throw std::invalid_argument("path csv: rows must be j = 0, 1, ...");
        t.push_back(parse_double(view.substr(c1 + 1, c2 - c1 - 1)));
        y.push_back(parse_double(view.substr(c2 + 1)));
    }
    if (y.size() < 4) throw std::invalid_argument("path csv: too few rows");
    if (y.front() != 0.0) throw std::invalid_argument("path csv: y_0 must be 0");

    ObservationPath obs;
    obs.p = static_cast<int>(std::lround(1.0 / t[1]));
    const auto cells = y.size() - 1;
    if (obs.p < 3 || cells % static_cast<std::size_t>(obs.p) != 0) {
        throw std::invalid_argument("path csv: row count is not n p + 1 for p = 1 / t_1");
    }
    obs.n = static_cast<int>(cells / static_cast<std::size_t>(obs.p));
    obs.y = std::move(y);
    return obs;
}

RunManifest run(const RunRequest& req)
{
    if (std::find(kSubcommands.begin(), kSubcommands.end(), req.subcommand) == kSubcommands.end()) {
        throw std::invalid_argument("unknown subcommand '" + req.subcommand + "'");
    }
    req.config.experiment.validate();
    fs::create_directories(req.out_dir);

    RunManifest m = make_manifest(req.subcommand, req.config);
    if (req.subcommand == "simulate" || req.subcommand == "estimate") {
        if (!req.input) m.options.emplace_back("n", std::to_string(pick_n(req)));
        m.options.emplace_back("stream", std::to_string(req.stream));
    }
    if (req.subcommand == "figures") m.options.emplace_back("stream", std::to_string(req.stream));
    if (req.subcommand == "risk-table") {
        m.options.emplace_back("oracle", req.oracle ? "true" : "false");
        m.options.emplace_back("timing", req.timing ? "true" : "false");
    }
    if (req.input) m.inputs.emplace_back(req.input->filename().string(), sha256_hex(slurp(*req.input)));

    if (req.subcommand == "simulate") run_simulate(req, m);
    else if (req.subcommand == "estimate") run_estimate(req, m);
    else if (req.subcommand == "risk-table") run_risk_table(req, m);
    else if (req.subcommand == "renewal-density") run_renewal_density(req, m);
    else run_figures(req, m);

    const auto manifest_path = req.out_dir / (req.subcommand + ".manifest");
    std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
    out << m.render();
    out.close();
    if (!out) throw std::runtime_error("cannot write '" + manifest_path.string() + "'");
    return m;
}

}  // namespace smreg::cli
