// Copyright 2026 The dissgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dissgate/cli.hpp"
#include "dissgate/config.hpp"
#include "dissgate/errors.hpp"

using namespace dissgate;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dissgate");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dissgate_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<accepted>";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("empty document gives the benchmark parameters") {
    const RunConfig c = parse_config("{}");
    CHECK(c.params.gamma3 == 2.0 * std::sqrt(37.0));
    CHECK(c.params.g3 == std::sqrt(2.0));
    CHECK(c.n_max == 2);
    CHECK(c.params.max_rabi() == 0.0);
    CHECK(c.seed == 1);
  }

  TEST_CASE("values are read") {
    const RunConfig c = parse_config(R"({
      "params": {"g3": 2.5, "gamma3": 4, "omega": [[0, 0.1], [[0.2, -0.1], 0]]},
      "n_max": 3, "omega": 0.05, "omega_grid": [0.01, 0.02], "initial_states": ["01"],
      "trajectory": {"n_traj": 10, "t_final": 2.0}, "repeat": {"p0": [0.5]}, "seed": 99})");
    CHECK(c.params.g3 == 2.5);
    CHECK(c.params.gamma3 == 4.0);
    CHECK(c.params.rabi(1, 1) == Complex(0.1));
    CHECK(c.params.rabi(2, 0) == Complex(0.2, -0.1));
    CHECK(c.n_max == 3);
    CHECK(c.omega_grid.size() == 2);
    CHECK(c.trajectory.n_traj == 10);
    CHECK(*c.trajectory.t_final == 2.0);
    CHECK(c.seed == 99);
  }

  TEST_CASE("violations name the key") {
    CHECK(config_error_key(R"({"params": {"gamma3": -1}})") == "params.gamma3");
    CHECK(config_error_key(R"({"omega_grid": [0.2, 0.1]})") == "omega_grid");
    CHECK(config_error_key(R"({"omega_grid": []})") == "omega_grid");
    CHECK(config_error_key(R"({"gamma_grid": [0, 1]})") == "gamma_grid");
    CHECK(config_error_key(R"({"trajectory": {"bogus": 1}})") == "trajectory.bogus");
    CHECK(config_error_key(R"({"nmax": 2})") == "nmax");
    CHECK(config_error_key(R"({"n_max": 0})") == "n_max");
    CHECK(config_error_key(R"({"n_max": "2"})") == "n_max");
    CHECK(config_error_key(R"({"seed": -4})") == "seed");
    CHECK(config_error_key(R"({"evolve": {"drive": "pulse"}})") == "evolve.drive");
    CHECK(config_error_key(R"({"repeat": {"target_success": 1.0}})") == "repeat.target_success");
    CHECK(config_error_key(R"({"params": {"omega": [1, 2]}})") == "params.omega");
    CHECK(config_error_key("{\"n_max\": ") == "<root>");
    CHECK(config_error_key("[]") == "<root>");
  }
}

TEST_SUITE("cli") {
  TEST_CASE("cnot table") {
    const Run r = cli({"cnot", "--omega", "0.2"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "omega_over_g2,gamma3_over_g2,g3_over_g2,initial_label,p0,fidelity\r");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 4);
    CHECK(r.out.find("0.20000000000000001,12.165525060596439,1.4142135623730951,10-11,") != std::string::npos);
  }

  TEST_CASE("default Rabi sweep holds a row above 90% at 0.07") {
    const Run r = cli({"sweep-rabi"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    bool found = false;
    while (std::getline(lines, line)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
      REQUIRE(cells.size() == 6);
      if (std::stod(cells[0]) == 0.07 && std::stod(cells[4]) > 0.90 && std::stod(cells[5]) >= 0.984) found = true;
    }
    CHECK(found);
  }

  TEST_CASE("trajectories are reproducible") {
    const auto a = scratch("a.json"), b = scratch("b.json"), ha = scratch("a.csv"), hb = scratch("b.csv");
    const std::vector<std::string> common{"--seed", "314", "--omega", "0.1"};
    auto args = common;
    for (const auto& x : {std::string("--out"), a.string(), std::string("trajectories"), std::string("--histogram-out"), ha.string()}) args.push_back(x);
    REQUIRE(cli(args).code == 0);
    args = common;
    for (const auto& x : {std::string("trajectories"), std::string("--out"), b.string(), std::string("--histogram-out"), hb.string()}) args.push_back(x);
    REQUIRE(cli(args).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(ha) == slurp(hb));
    const auto summary = nlohmann::json::parse(slurp(a));
    CHECK(summary["n_traj"] == 5000);
    CHECK(summary["seed"] == 314);
    CHECK(std::abs(summary["p0_estimate"].get<double>() - summary["p0_exact"].get<double>()) <=
          4.0 * summary["stderr"].get<double>());
  }

  TEST_CASE("environment overrides") {
    ::setenv("DISSGATE_OMEGA", "0.05", 1);
    const Run r = cli({"cnot"});
    ::unsetenv("DISSGATE_OMEGA");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\r\n0.050000000000000003,") != std::string::npos);
  }

  TEST_CASE("dfs report") {
    const auto out = scratch("dfs.csv");
    REQUIRE(cli({"--out", out.string(), "dfs-report"}).code == 0);
    const auto basis = nlohmann::json::parse(slurp(out.string() + ".basis.json"));
    CHECK(basis.size() == 7);
    CHECK(basis[0].size() == 48);
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "re,im,is_dfs,trunc_population\r");
    int rows = 0, dfs = 0;
    while (std::getline(csv, line)) {
      ++rows;
      if (line.find(",1,") != std::string::npos) ++dfs;
    }
    CHECK(rows == 48);
    CHECK(dfs == 7);
  }

  TEST_CASE("evolve and repeat-stats") {
    const Run e = cli({"evolve"});
    REQUIRE(e.code == 0);
    CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 102);
    CHECK(e.out.rfind("t,p0,re_00_0,im_00_0,re_01_0,im_01_0,re_10_0,im_10_0,re_11_0,im_11_0\r\n", 0) == 0);
    const Run s = cli({"repeat-stats"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("0.94999999999999996,50,50,0.01825") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"nonsense"}).code == 1);
    CHECK(cli({"--threads", "0", "cnot"}).code == 1);
    CHECK(cli({"--config", "/nonexistent/dissgate.json", "cnot"}).code == 1);
    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"params": {"gamma3": -2}})";
    const Run r = cli({"--config", bad.string(), "cnot"});
    CHECK(r.code == 1);
    CHECK(r.err.find("params.gamma3") != std::string::npos);

    // |33>|0> has no overlap with the DFS; after t = 1e5 nothing is left to normalize.
    nlohmann::json cfg;
    std::vector<std::vector<double>> amps(48, {0.0, 0.0});
    amps[45] = {1.0, 0.0};
    cfg["evolve"] = {{"amplitudes", amps}, {"drive", "params"}};
    cfg["t_grid"] = {0.0, 1e5};
    const auto decay = scratch("decay.json");
    std::ofstream(decay) << cfg.dump();
    CHECK(cli({"--config", decay.string(), "evolve"}).code == 2);

    const Run w = cli({"--omega", "0.45", "cnot"});
    CHECK(w.code == 0);
    CHECK(w.err.find("warning") != std::string::npos);
  }
}
