// Copyright 2026 The noisyqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "noisyqec/cli/commands.hpp"
#include "noisyqec/cli/config.hpp"
#include "noisyqec/cli/records.hpp"

namespace fs = std::filesystem;
using noisyqec::cli::run_cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run_cli(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (const auto& line : lines(text)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int tool_exit(const std::string& args) {
  const std::string cmd = std::string(NOISYQEC_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("noisyqec_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run writes the record header and one row per point") {
  const auto o = cli({"run", "--code", "3bit", "--kappa", "1e-4,1e-3", "--T", "20,40,60"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "kappa,T,m_nec,m_ec,m_analytic,log_ratio,log_ratio_analytic,stderr");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], ',');
    REQUIRE(f.size() == 8);
    const double m_nec = std::stod(f[2]), m_ec = std::stod(f[3]);
    CHECK(m_nec >= 0.0);
    CHECK(m_nec <= 1.0);
    CHECK(m_ec >= 0.0);
    CHECK(m_ec <= 1.0);
    CHECK(std::abs(std::stod(f[5]) - std::log(m_nec / m_ec)) < 1e-12);
    CHECK(f[7].empty());
  }
  CHECK(split(rows[1], ',')[0] == "0.0001");
  CHECK(split(rows[4], ',')[0] == "0.001");
  CHECK(split(rows[2], ',')[1] == "40");
}

TEST_CASE("zero noise gives zero mismatch and a null log ratio") {
  const auto o = cli({"run", "--code", "3bit", "--kappa", "0", "--T", "20"});
  REQUIRE(o.code == 0);
  const auto f = split(lines(o.out).at(1), ',');
  REQUIRE(f.size() == 8);
  CHECK(std::stod(f[2]) == 0.0);
  CHECK(std::stod(f[3]) == 0.0);
  CHECK(f[5].empty());
  CHECK(f[6].empty());
}

TEST_CASE("json and csv carry the same values") {
  const std::vector<std::string> base{"run", "--code", "5bit", "--kappa", "1e-3", "--T", "40,60"};
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto csv = cli(base);
  const auto js = cli(json_args);
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  const auto& recs = doc.at("records");
  const auto rows = lines(csv.out);
  REQUIRE(recs.size() == rows.size() - 1);
  const std::vector<std::string> keys{"kappa", "T", "m_nec", "m_ec", "m_analytic",
                                      "log_ratio", "log_ratio_analytic", "stderr"};
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto f = split(rows[i + 1], ',');
    for (std::size_t k = 0; k < keys.size(); ++k) {
      const auto& v = recs[i].at(keys[k]);
      if (v.is_null()) {
        CHECK(f[k].empty());
      } else {
        CHECK(std::stod(f[k]) == v.get<double>());
      }
    }
  }
}

TEST_CASE("single-qubit mode matches the unprotected closed forms") {
  // Dephasing: coherence decays as exp(-2 kappa T). Isotropic Pauli noise:
  // the Bloch vector decays as exp(-4 kappa T).
  const double kappa = 2e-3;
  for (const auto& [code, rate] : {std::pair{"3bit", 2.0}, std::pair{"5bit", 4.0}}) {
    const auto o = cli({"run", "--code", code, "--single-qubit", "--kappa", "2e-3", "--T", "5,50,500"});
    REQUIRE(o.code == 0);
    const auto rows = lines(o.out);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto f = split(rows[i], ',');
      const double T = std::stod(f[1]);
      CHECK(std::abs(std::stod(f[2]) - 0.5 * (1.0 - std::exp(-rate * kappa * T))) < 1e-6);
      CHECK(f[3].empty());
      CHECK(f[5].empty());
    }
  }
}

TEST_CASE("trajectory runs report a standard error and repeat under a fixed seed") {
  const std::vector<std::string> args{"run", "--code", "3bit", "--method", "jumps", "--kappa", "1e-3", "--T", "40",
                                      "--trajectories", "30", "--seed", "11"};
  const auto a = cli(args);
  const auto b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto f = split(lines(a.out).at(1), ',');
  CHECK(!f[7].empty());
  CHECK(std::stod(f[7]) >= 0.0);
}

TEST_CASE("sweep writes the grid and the optimum curve") {
  TempDir tmp;
  const fs::path out = tmp.path / "grid.csv";
  const auto o = cli({"sweep", "--code", "3bit", "--kappa", "1e-4:1e-3:3", "--T", "20:100:5", "--output", out.string()});
  REQUIRE(o.code == 0);
  const auto grid = lines(slurp(out));
  REQUIRE(grid.size() == 16);
  CHECK(grid[0] == "kappa,T,m_nec,m_ec,m_analytic,log_ratio,log_ratio_analytic,stderr");
  CHECK(std::abs(std::stod(split(grid[6], ',')[0]) - std::sqrt(1e-4 * 1e-3)) < 1e-15);
  const auto opt = lines(slurp(tmp.path / "grid_topt.csv"));
  REQUIRE(opt.size() == 4);
  CHECK(opt[0] == "kappa,T_argmax,log_ratio_max,t_opt");
  // t_opt = sqrt(2 Delta / ((n - 1) kappa_n)) with Delta = 10, kappa_n = 2 kappa.
  const auto last = split(opt[3], ',');
  CHECK(std::abs(std::stod(last[3]) - std::sqrt(2.0 * 10.0 / (2.0 * 2e-3))) < 1e-9);
  double best = -1e300, best_T = 0.0;
  for (std::size_t i = 11; i < 16; ++i) {
    const auto f = split(grid[i], ',');
    if (std::stod(f[5]) > best) {
      best = std::stod(f[5]);
      best_T = std::stod(f[1]);
    }
  }
  CHECK(std::stod(last[1]) == best_T);
}

TEST_CASE("sweep to stdout puts the optimum block after a blank line") {
  const auto o = cli({"sweep", "--code", "3bit", "--kappa", "1e-3", "--T", "20,40"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[3].empty());
  CHECK(rows[4] == "kappa,T_argmax,log_ratio_max,t_opt");
}

TEST_CASE("config files fill options and flags take precedence") {
  TempDir tmp;
  const fs::path cfg = tmp.path / "run.toml";
  std::ofstream(cfg) << "# grid\ncode = \"3bit\"\nkappa = \"1e-3\"\nT = \"20,40\"\ntrajectory_dt = 0.005\n";
  const auto from_file = cli({"run", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  CHECK(lines(from_file.out).size() == 3);
  const auto flagged = cli({"run", "--config", cfg.string(), "--T", "60"});
  REQUIRE(flagged.code == 0);
  const auto rows = lines(flagged.out);
  REQUIRE(rows.size() == 2);
  CHECK(split(rows[1], ',')[1] == "60");
  const auto direct = cli({"run", "--code", "3bit", "--kappa", "1e-3", "--T", "60"});
  CHECK(direct.out == flagged.out);

  const fs::path bad = tmp.path / "bad.toml";
  std::ofstream(bad) << "no_such_key = 1\n";
  const auto rejected = cli({"run", "--config", bad.string()});
  CHECK(rejected.code == 2);
  CHECK(rejected.err.find("no_such_key") != std::string::npos);
}

TEST_CASE("analytic prints the worked examples") {
  const auto kv = key_values(cli({"analytic", "--n", "3", "--kappa", "1e-5", "--T", "1e4"}).out);
  CHECK(std::stod(kv.at("n_opt")) == doctest::Approx(std::sqrt(200.0)).epsilon(1e-9));
  CHECK(std::stod(kv.at("max_failure")) == doctest::Approx(0.6 * std::sqrt(8e-4)).epsilon(1e-9));
  CHECK(std::stod(kv.at("t_opt")) == doctest::Approx(1e4 / std::sqrt(200.0)).epsilon(1e-9));
  CHECK(kv.at("n_best") == "14");
  CHECK(std::stod(kv.at("crossover_kT")) == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  const auto c5 = key_values(cli({"analytic", "--n", "5", "--crossover"}).out);
  CHECK(std::abs(std::stod(c5.at("crossover_kT")) - 0.14) < 0.005);

  const auto js = cli({"analytic", "--n", "3", "--kappa", "1e-5", "--T", "1e4", "--format", "json"});
  REQUIRE(js.code == 0);
  CHECK(nlohmann::json::parse(js.out).at("n_opt").get<double>() == doctest::Approx(std::sqrt(200.0)));
}

TEST_CASE("derive-table lists every syndrome") {
  const auto t3 = lines(cli({"derive-table", "--code", "3bit"}).out);
  REQUIRE(t3.size() == 5);
  CHECK(t3[0] == "syndrome,ancillas,errors,correction");
  const auto t5 = lines(cli({"derive-table", "--code", "5bit"}).out);
  REQUIRE(t5.size() == 17);
  CHECK(t5[1] == "0,0000,none,I");
  // Every single-qubit Pauli error owns exactly one syndrome.
  std::map<std::string, int> seen;
  for (std::size_t i = 1; i < t5.size(); ++i) {
    const auto f = split(t5[i], ',');
    REQUIRE(f.size() == 4);
    CHECK(std::stoi(f[0]) == static_cast<int>(i) - 1);
    ++seen[f[2]];
    CHECK(std::string("IXYZ").find(f[3]) != std::string::npos);
    CHECK(f[3].size() == 1);
  }
  CHECK(seen.size() == 16);
  for (char p : std::string("XYZ")) {
    for (int q = 0; q < 5; ++q) CHECK(seen[std::string(1, p) + std::to_string(q)] == 1);
  }
  const auto sched = cli({"derive-table", "--code", "5bit", "--schedule"});
  REQUIRE(sched.code == 0);
  CHECK(nlohmann::json::parse(sched.out).is_object());
}

TEST_CASE("grids") {
  using noisyqec::cli::parse_grid;
  const auto lin = parse_grid("20:500:25", false, "T");
  REQUIRE(lin.size() == 25);
  CHECK(lin.front() == 20.0);
  CHECK(lin.back() == 500.0);
  CHECK(lin[1] == doctest::Approx(40.0));
  const auto lg = parse_grid("1e-4:1e-2:3", true, "kappa");
  REQUIRE(lg.size() == 3);
  CHECK(lg[1] == doctest::Approx(1e-3));
  CHECK(parse_grid("1,2.5,3", false, "T") == std::vector<double>{1.0, 2.5, 3.0});
  CHECK_THROWS(parse_grid("1:2", false, "T"));
  CHECK_THROWS(parse_grid("a,b", false, "T"));
}

TEST_CASE("exit codes of the tool") {
  CHECK(tool_exit("analytic --n 3 --crossover") == 0);
  CHECK(tool_exit("no-such-command") == 2);
  CHECK(tool_exit("analytic --n 4 --kappa 1e-3 --T 10") == 2);
  CHECK(tool_exit("analytic --n 3 --kappa 1e-3") == 2);
  CHECK(tool_exit("run --code 3bit --kappa 1e-3 --T 5") == 2);
  CHECK(tool_exit("run --code 3bit --kappa -1 --T 20") == 2);
  CHECK(tool_exit("run --code 3bit --kappa 1e-3 --T 40,20") == 2);
  CHECK(tool_exit("run --code 7 --kappa 1e-3 --T 20") == 2);
  // Two qubits have no crossover: a numerical failure, not a usage error.
  CHECK(tool_exit("analytic --n 2 --crossover") == 3);
}
