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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smreg/cli.hpp"
#include "smreg/estimator.hpp"
#include "smreg/text.hpp"

using namespace smreg;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "smreg_test_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Data rows (comments and header dropped), split on commas.
std::vector<std::vector<std::string>> rows(const fs::path& path)
{
    std::vector<std::vector<std::string>> out;
    std::istringstream in(slurp(path));
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        out.push_back(cells);
    }
    return out;
}

RunConfig tiny()
{
    auto c = preset("desk-scale");
    c.experiment.replications = 40;
    c.experiment.p = 101;
    c.experiment.estimator.kstar0 = 3;
    return c;
}

int shell(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

}  // namespace

TEST_CASE("risk-table writes one row per n with a digest header")
{
    const auto dir = fresh_dir("risk");
    cli::RunRequest req{.subcommand = "risk-table", .config = tiny(), .out_dir = dir};
    const auto m = cli::run(req);
    const auto table = rows(dir / "risk_table.csv");
    REQUIRE(table.size() == 2);
    CHECK(table[0][0] == "20");
    CHECK(table[1][0] == "100");
    CHECK(table[0][2] == "40");
    CHECK(table[0][7] == "0");  // seconds column stays zero without --timing
    CHECK(parse_double(table[1][3]) > 0.0);

    const auto text = slurp(dir / "risk_table.csv");
    CHECK(text.rfind("# smreg " + std::string(kVersion) + " risk-table digest=" + m.digest() + "\n", 0) == 0);
    CHECK(parse_config(slurp(dir / "risk-table.manifest")) == req.config);

    // identical inputs give byte-identical outputs
    const auto again = fresh_dir("risk2");
    req.out_dir = again;
    cli::run(req);
    CHECK(slurp(again / "risk_table.csv") == text);

    req.oracle = false;
    req.out_dir = fresh_dir("risk3");
    const auto m3 = cli::run(req);
    CHECK(m3.digest() != m.digest());
    CHECK(rows(req.out_dir / "risk_table.csv")[0][6] == "nan");
}

TEST_CASE("renewal-density for unit-rate Poisson arrivals is flat")
{
    const auto dir = fresh_dir("renewal");
    auto c = tiny();
    c.experiment.noise.interarrival = InterarrivalLaw::exponential(1.0);
    cli::run({.subcommand = "renewal-density", .config = c, .out_dir = dir});
    const auto table = rows(dir / "renewal_density.csv");
    REQUIRE(table.size() == 8001);  // h = 1/200, T = 40
    for (const auto& r : table) REQUIRE(parse_double(r[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parse_double(table.back()[0]) == doctest::Approx(40.0));

    c.renewal_step = 0.01;
    c.renewal_horizon = 25.0;
    cli::run({.subcommand = "renewal-density", .config = c, .out_dir = dir});
    CHECK(rows(dir / "renewal_density.csv").size() == 2501);
}

TEST_CASE("simulate without noise traces the integral of the signal")
{
    const auto dir = fresh_dir("simulate");
    auto c = tiny();
    c.experiment.signal = SignalSpec::trig_polynomial({1.0});
    c.experiment.noise.rho1 = 0.0;
    c.experiment.noise.rho2 = 0.0;
    cli::run({.subcommand = "simulate", .config = c, .out_dir = dir, .n = 3});
    const auto table = rows(dir / "path_n3.csv");
    REQUIRE(table.size() == 3 * 101 + 1);
    for (std::size_t j = 0; j < table.size(); ++j) {
        REQUIRE(parse_double(table[j][1]) == doctest::Approx(j / 101.0).epsilon(1e-15));
        REQUIRE(parse_double(table[j][2]) == doctest::Approx(j / 101.0).epsilon(1e-12));
    }
}

TEST_CASE("estimate from a saved path matches the in-memory run")
{
    const auto dir = fresh_dir("estimate");
    const auto c = tiny();
    cli::run({.subcommand = "simulate", .config = c, .out_dir = dir, .n = 20, .stream = 5});
    const auto direct = fresh_dir("estimate_direct");
    cli::run({.subcommand = "estimate", .config = c, .out_dir = direct, .n = 20, .stream = 5});
    const auto from_file = fresh_dir("estimate_file");
    const auto m = cli::run({.subcommand = "estimate", .config = c, .out_dir = from_file, .input = dir / "path_n20.csv"});
    CHECK(rows(direct / "estimate_n20.csv") == rows(from_file / "estimate_n20.csv"));
    CHECK(rows(direct / "selection_n20.csv") == rows(from_file / "selection_n20.csv"));
    REQUIRE(m.inputs.size() == 1);
    CHECK(m.inputs[0].second == sha256_hex(slurp(dir / "path_n20.csv")));

    const auto sel = rows(direct / "selection_n20.csv");
    int chosen = 0;
    for (const auto& r : sel) chosen += r[4] == "1";
    CHECK(chosen == 1);
    CHECK(sel.size() == weight_family_for(c.experiment, 20).nu());
}

TEST_CASE("malformed path files are rejected")
{
    const auto dir = fresh_dir("badpath");
    auto write = [&](const std::string& body) {
        std::ofstream(dir / "p.csv") << body;
        return dir / "p.csv";
    };
    CHECK_THROWS_AS(cli::read_path_csv(write("a,b,c\n0,0,0\n")), std::invalid_argument);
    CHECK_THROWS_AS(cli::read_path_csv(write("j,t_j,y_j\n0,0,1\n1,0.25,1\n2,0.5,1\n3,0.75,1\n4,1,1\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli::read_path_csv(write("j,t_j,y_j\n0,0,0\n1,0.25,0\n2,0.5,0\n3,0.75,0\n4,1,0\n5,1.25,0\n")),
                    std::invalid_argument);
    const auto ok = cli::read_path_csv(write("j,t_j,y_j\n0,0,0\n1,0.25,1\n2,0.5,2\n3,0.75,3\n4,1,4\n"));
    CHECK(ok.p == 4);
    CHECK(ok.n == 1);
    CHECK_THROWS_AS(cli::run({.subcommand = "plot", .config = tiny(), .out_dir = dir}), std::invalid_argument);
}

TEST_CASE("figures writes one file per n")
{
    const auto dir = fresh_dir("figures");
    const auto m = cli::run({.subcommand = "figures", .config = tiny(), .out_dir = dir});
    CHECK(m.outputs.size() == 2);
    CHECK(rows(dir / "figure_n20.csv").size() == 101);
    CHECK(fs::exists(dir / "figure_n100.csv"));
    CHECK(fs::exists(dir / "figures.manifest"));
}

TEST_CASE("command-line tool")
{
    const std::string exe = SMREG_CLI_PATH;
    const auto dir = fresh_dir("binary");
    const std::string out = " --out " + dir.string();
    CHECK(shell(exe + " --preset desk-scale --seed 9" + out + " simulate --n 3") == 0);
    CHECK(slurp(dir / "simulate.manifest").find("seed = 9") != std::string::npos);
    CHECK(shell(exe + " --config " + (dir / "simulate.manifest").string() + out + " simulate --n 3") == 0);
    CHECK(shell(exe + out + " --preset nowhere simulate") != 0);
    CHECK(shell(exe + out + " frobnicate") != 0);
    CHECK(shell(exe + out + " --config /nonexistent.cfg simulate") != 0);
    CHECK(shell(exe + " --preset desk-scale --strict-h5" + out + " simulate --n 3") == 0);

    // the thread count does not enter the output
    const auto a = fresh_dir("threads1");
    const auto b = fresh_dir("threads3");
    const std::string cfg = (dir / "tiny.cfg").string();
    std::ofstream(cfg) << emit_config(tiny());
    REQUIRE(shell(exe + " --config " + cfg + " --threads 1 --out " + a.string() + " risk-table") == 0);
    REQUIRE(shell(exe + " --config " + cfg + " --threads 3 --out " + b.string() + " risk-table") == 0);
    CHECK(slurp(a / "risk_table.csv") == slurp(b / "risk_table.csv"));
    CHECK(slurp(a / "risk-table.manifest") == slurp(b / "risk-table.manifest"));
}
