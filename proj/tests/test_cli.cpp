// End-to-end checks of the command-line tool: spawns the built binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string temp_path(const std::string& name) {
  return std::string("/tmp/qring_cli_test_") + name;
}

RunResult run(const std::string& args) {
  const std::string out_file = temp_path("stdout.txt");
  const std::string cmd = std::string(QRING_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

}  // namespace

TEST_CASE("spectrum: hexagonal ring lists one state per momentum") {
  const RunResult r = run("spectrum --geometry ring --nd 6 --a 0.1 --excitations 1 --out json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("schema") == 1);
  REQUIRE(j.at("states").size() == 6);
  std::multiset<int> ms;
  for (const auto& s : j.at("states")) ms.insert(s.at("m").get<int>());
  CHECK(ms == std::multiset<int>{-2, -1, 0, 1, 2, 3});
}

TEST_CASE("spectrum: double-ring pair manifold holds 66 states, ten with m = 3") {
  const RunResult r = run(
      "spectrum --geometry double-ring --nd 6 --a 0.16 --b-over-a 2.2 --excitations 2 --out json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("states").size() == 66);
  int m3 = 0;
  for (const auto& s : j.at("states")) {
    if (s.at("m").get<int>() == 3) ++m3;
  }
  CHECK(m3 == 10);
}

TEST_CASE("spectrum: ring plus center carries a deeply subradiant m = 0 state") {
  const RunResult r =
      run("spectrum --geometry ring-center --nd 6 --a 0.16 --excitations 1 --out json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  double best = 0.0;
  for (const auto& s : j.at("states")) {
    if (s.at("m").get<int>() == 0) {
      best = std::max(best, 1.0 / s.at("gamma_over_gamma0").get<double>());
    }
  }
  CHECK(best >= 200.0);
}

TEST_CASE("count: hexagonal single ring") {
  const RunResult r = run("count --nd 6 --nr 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# even_m=3 odd_m=2") != std::string::npos);
  CHECK(r.out.find("0,3,") != std::string::npos);
  CHECK(r.out.find("3,2,") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
  const std::string args =
      "sweep --geometry ring-center --nd 6 --target two-mode --a-min 0.1 --a-max 0.2 "
      "--a-steps 11";
  const RunResult a = run(args);
  const RunResult b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# schema=1\n", 0) == 0);

  const RunResult c = run("spectrum --geometry double-ring --a 0.16 --b-over-a 2.2 --out json");
  const RunResult d = run("spectrum --geometry double-ring --a 0.16 --b-over-a 2.2 --out json");
  CHECK(c.out == d.out);
}

TEST_CASE("pattern on a single emitter is the dipole donut") {
  const RunResult r = run("pattern --geometry single --theta-nodes 16 --phi-nodes 8");
  REQUIRE(r.exit_code == 0);
  // theta,phi,value,mask rows; value proportional to sin^2(theta)
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::array<double, 2>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double theta, phi, value;
    int mask;
    ls >> theta >> phi >> value >> mask;
    REQUIRE(mask == 0);
    rows.push_back({theta, value});
  }
  REQUIRE(rows.size() == 16u * 8u);
  // normalize out the prefactor with the most equatorial sample
  double ref_theta = rows[0][0], ref_value = rows[0][1];
  for (const auto& row : rows) {
    if (std::abs(std::sin(row[0])) > std::abs(std::sin(ref_theta))) {
      ref_theta = row[0];
      ref_value = row[1];
    }
  }
  const double prefactor = ref_value / std::pow(std::sin(ref_theta), 2);
  for (const auto& row : rows) {
    const double expect = prefactor * std::pow(std::sin(row[0]), 2);
    CHECK(std::abs(row[1] - expect) < 1e-9 * prefactor);
  }
}

TEST_CASE("g2 self-test passes for the antisymmetric product state") {
  const RunResult r = run(
      "g2 --geometry double-ring --nd 6 --a 0.16 --b-over-a 2.2 --config coincident "
      "--theta-nodes 24 --phi-nodes 60 --self-test --output /tmp/qring_cli_test_g2.csv");
  CHECK(r.exit_code == 0);
}

TEST_CASE("config file values apply where flags are absent") {
  const std::string cfg_path = temp_path("cfg.json");
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"geometry": "ring", "nd": 6, "a": 0.1, "excitations": 1})";
  }
  const RunResult from_cfg = run("spectrum --config " + cfg_path + " --out json");
  const RunResult from_flags =
      run("spectrum --geometry ring --nd 6 --a 0.1 --excitations 1 --out json");
  REQUIRE(from_cfg.exit_code == 0);
  const auto a = nlohmann::json::parse(from_cfg.out);
  const auto b = nlohmann::json::parse(from_flags.out);
  CHECK(a.at("states") == b.at("states"));

  // explicit flags override the file
  const RunResult overridden = run("spectrum --config " + cfg_path + " --a 0.2 --out json");
  const auto c = nlohmann::json::parse(overridden.out);
  CHECK(c.at("config").at("a").get<double>() == 0.2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("spectrum --geometry pentagram").exit_code == 2);
  CHECK(run("spectrum --geometry double-ring --b-over-a 0.5").exit_code == 2);
  CHECK(run("sweep --target nonsense").exit_code == 2);
  CHECK(run("scs --beam-ell 1 --beam-spin 0 --detuning-steps 3").exit_code == 2);
  CHECK(run("count --nd 1").exit_code == 2);
}

TEST_CASE("scs spectrum of a single emitter is flat at one") {
  const RunResult r = run(
      "scs --geometry single --detuning-min -2 --detuning-max 2 --detuning-steps 5 "
      "--theta-nodes 32 --phi-nodes 64 --out json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& p : j.at("points")) {
    CHECK(std::abs(p.at("scs_normalized").get<double>() - 1.0) < 1e-8);
  }
}

TEST_CASE("sweep emits one row per grid point in grid order") {
  const RunResult r = run(
      "sweep --geometry double-ring --nd 6 --b-over-a 2.2 --target b1-lifetime "
      "--a-min 0.15 --a-max 0.17 --a-steps 3");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<double> first;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'a') continue;
    first.push_back(std::stod(line.substr(0, line.find(','))));
  }
  REQUIRE(first.size() == 3);
  CHECK(first[0] == 0.15);
  CHECK(first[1] == 0.16);
  CHECK(first[2] == 0.17);
}
