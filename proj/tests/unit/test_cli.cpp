// Copyright 2026 The msgate Authors
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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "commands.hpp"
#include "config.hpp"

using namespace msgate;
using namespace msgate::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("msgate_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(MSGATE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const json& j, const std::string& command) {
  try {
    validate_config(command, j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("overrides create nested keys and parse JSON values") {
  json j = json::object();
  apply_override(j, "scenario.omega0_hz=25000");
  apply_override(j, "scenario.scheme=cdd");
  apply_override(j, "n_values=[1,2]");
  CHECK(j["scenario"]["omega0_hz"] == 25000);
  CHECK(j["scenario"]["scheme"] == "cdd");
  CHECK(j["n_values"].size() == 2);
  CHECK_THROWS_AS(apply_override(j, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(j, "scenario.scheme.x=1"), ConfigError);
}

TEST_CASE("unknown and malformed fields name their path") {
  CHECK(config_error(json::parse(R"({"scenario": {"schem": "pdd"}})"), "simulate").find("/scenario/schem") == 0);
  CHECK(config_error(json::parse(R"({"scenario": {"eta": "big"}})"), "simulate").find("/scenario/eta") == 0);
  CHECK(config_error(json::parse(R"({"scheme": "pdd", "tau": 1e-3})"), "filter").empty());
  CHECK_FALSE(config_error(json::parse(R"({"kind": "nope"})"), "scan").empty());
}

TEST_CASE("validation reports regime warnings") {
  const auto w = validate_config("simulate", json::parse(R"({"scenario": {"scheme": "cdd", "rotations": 200}})"));
  CHECK_FALSE(w.empty());
}

TEST_CASE("repeat runs write byte-identical files") {
  const auto a = scratch("a"), b = scratch("b");
  REQUIRE(run("--seed 5 --out " + a.string() + " mtms --all") == 0);
  REQUIRE(run("--seed 5 --out " + b.string() + " mtms --all") == 0);
  const std::string first = slurp(a / "mtms.csv");
  CHECK_FALSE(first.empty());
  CHECK(first == slurp(b / "mtms.csv"));
  CHECK(first.find("# seed: 5") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit");
  const fs::path cfg = dir / "bad.json";
  std::ofstream(cfg) << R"({"scenario": {"schem": "pdd"}})";
  CHECK(run("validate --config " + cfg.string() + " --as simulate") == 2);
  CHECK(run("--out " + dir.string() + " dag --preset mlcdd") == 0);
  CHECK(fs::exists(dir / "dag_mlcdd.json"));
  CHECK(run("--out " + dir.string() + " dag --preset none") != 0);
  const fs::path good = dir / "sim.json";
  std::ofstream(good) << R"({"scenario": {"scheme": "primitive"}})";
  CHECK(run("--out " + dir.string() + " simulate --config " + good.string()) == 0);
  const std::string csv = slurp(dir / "simulate.csv");
  CHECK(csv.find("# config_hash: ") == 0);
  fs::remove_all(dir);
}
