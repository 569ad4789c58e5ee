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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace msgate::cli {

/// Settings shared by every subcommand.
struct RunContext {
  std::string out_dir = "out";
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string config_hash;
};

/// Hash of the effective configuration (after overrides) and the subcommand.
std::string config_hash(const std::string& command, const json& config);

/// Commands that read a config file. The optional top-level "command" field
/// must match the subcommand it is used with.
inline const std::vector<std::string> kConfigCommands{"simulate", "scan", "synthesize", "filter"};

/// Parses `config` for `command` without running anything; returns physics
/// diagnostics. Throws ConfigError on schema violations.
std::vector<std::string> validate_config(const std::string& command, const json& config);

int cmd_simulate(const json& config, const RunContext& ctx);
int cmd_scan(const json& config, const RunContext& ctx);
int cmd_synthesize(const json& config, const RunContext& ctx);
int cmd_filter(const json& config, const RunContext& ctx);
int cmd_mtms(int n, bool all, const RunContext& ctx);
int cmd_dag(const std::string& preset, const RunContext& ctx);

}  // namespace msgate::cli
