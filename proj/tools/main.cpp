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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "commands.hpp"
#include "msgate/csv.hpp"

namespace {

using namespace msgate::cli;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string default_out_dir() {
  const char* env = std::getenv("MSGATE_OUT_DIR");
  return env && *env ? env : "out";
}

struct Common {
  std::string config_path;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> overrides;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

json effective_config(const Common& c) {
  json cfg = c.config_path.empty() ? json::object() : load_config(c.config_path);
  for (const auto& o : c.overrides) apply_override(cfg, o);
  return cfg;
}

RunContext context(const Common& c, const std::string& command, const json& cfg) {
  if (c.jobs < 1) throw ConfigError("--jobs: must be >= 1");
  RunContext ctx;
  ctx.out_dir = c.out_dir;
  ctx.seed = c.seed;
  ctx.jobs = c.jobs;
  ctx.config_hash = config_hash(command, cfg);
  return ctx;
}

void print_result(const CriterionResult& r) { std::cout << format_result(r) << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"msgate: robust two-qubit gate simulation and synthesis"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Common common;
  app.add_option("--out", common.out_dir, "output directory (default: $MSGATE_OUT_DIR or ./out)");
  app.add_option("--seed", common.seed, "master seed")->capture_default_str();
  app.add_option("--set", common.overrides, "override a config field, key.path=value (repeatable)");
  app.add_option("--jobs", common.jobs, "worker threads (results do not depend on it)");

  auto* simulate = app.add_subcommand("simulate", "run one gate scenario");
  auto* scan = app.add_subcommand("scan", "static, heating, thermal or cat scans");
  auto* synthesize = app.add_subcommand("synthesize", "match or optimize a phase-space trajectory");
  auto* filter = app.add_subcommand("filter", "export a filter function");
  for (auto* sub : {simulate, scan, synthesize, filter}) sub->add_option("--config", common.config_path, "JSON config file")->check(CLI::ExistingFile);

  auto* mtms = app.add_subcommand("mtms", "multi-tone coefficients and metrics");
  int mtms_n = 5;
  bool mtms_all = false;
  mtms->add_option("--n", mtms_n, "number of tones")->capture_default_str();
  mtms->add_flag("--all", mtms_all, "write rows for 1..n");

  auto* dag = app.add_subcommand("dag", "calibration graph presets and metrics");
  std::string preset = "pdd";
  dag->add_option("--preset", preset, "pdd, cdd, cdd-table or mlcdd")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  std::string validate_as;
  validate->add_option("--config", common.config_path, "JSON config file")->required();
  validate->add_option("--as", validate_as, "command to validate for (default: the config's \"command\" field)");

  auto* reproduce = app.add_subcommand("reproduce-all", "run every acceptance criterion");
  AcceptanceOptions acc;
  bool strict = false;
  reproduce->add_option("--ensemble", acc.ensemble, "Monte-Carlo trajectories per point")->capture_default_str();
  reproduce->add_option("--starts", acc.optimizer_starts, "optimizer multistarts")->capture_default_str();
  reproduce->add_option("--only", acc.only, "criterion ids to run");
  reproduce->add_flag("--strict", strict, "documented known deviations also fail the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "reproduce-all") {
      json cfg = effective_config(common);
      const RunContext ctx = context(common, name, cfg);
      acc.seed = ctx.seed;
      acc.jobs = ctx.jobs;
      acc.out_dir = ctx.out_dir;
      acc.config_hash = ctx.config_hash;
      const auto results = run_acceptance(acc, print_result);
      std::vector<std::vector<double>> rows;
      int failures = 0;
      for (const auto& r : results) {
        rows.push_back({double(r.id), r.pass ? 1.0 : 0.0, r.known_deviation ? 1.0 : 0.0, r.seconds});
        if (!r.pass && (strict || !r.known_deviation)) ++failures;
      }
      std::filesystem::create_directories(ctx.out_dir);
      msgate::write_csv((std::filesystem::path(ctx.out_dir) / "acceptance.csv").string(),
                        {ctx.config_hash, ctx.seed, {}}, {"criterion", "pass", "known_deviation", "seconds"}, rows);
      std::cout << (failures ? "acceptance: " + std::to_string(failures) + " unexpected failure(s)"
                             : std::string("acceptance: no unexpected failures"))
                << std::endl;
      return failures ? kExitFailure : kExitPass;
    }
    if (name == "mtms") return cmd_mtms(mtms_n, mtms_all, context(common, name, json{{"n", mtms_n}, {"all", mtms_all}}));
    if (name == "dag") return cmd_dag(preset, context(common, name, json{{"preset", preset}}));

    if (common.config_path.empty() && name != "simulate")
      std::cerr << "note: no --config given, using defaults" << std::endl;
    json cfg = effective_config(common);
    if (name == "validate") {
      std::string as = validate_as;
      if (as.empty()) as = cfg.contains("command") && cfg["command"].is_string() ? cfg["command"].get<std::string>() : "simulate";
      const auto diagnostics = validate_config(as, cfg);
      for (const auto& d : diagnostics) std::cout << "warning: " << d << "\n";
      std::cout << common.config_path << ": valid " << as << " config, " << diagnostics.size() << " diagnostic(s)"
                << std::endl;
      return kExitPass;
    }
    if (name == "simulate" && !cfg.contains("scenario")) cfg["scenario"] = json::object();
    const RunContext ctx = context(common, name, cfg);
    if (name == "simulate") return cmd_simulate(cfg, ctx);
    if (name == "scan") return cmd_scan(cfg, ctx);
    if (name == "synthesize") return cmd_synthesize(cfg, ctx);
    if (name == "filter") return cmd_filter(cfg, ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitFailure;
  }
  return kExitFailure;
}
