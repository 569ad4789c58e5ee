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
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "msgate/common.hpp"
#include "msgate/gate_sim.hpp"
#include "msgate/synthesis.hpp"

namespace msgate::cli {

using nlohmann::json;

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Schema violation; the message starts with the JSON path of the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Typed access to one JSON object that remembers the consumed keys so that
/// `finish()` can reject unknown (usually misspelled) ones.
class Reader {
 public:
  Reader(const json& j, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback);
  double number(const std::string& key);
  int integer(const std::string& key, int fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  Reader object(const std::string& key);
  const json& raw(const std::string& key);
  std::string path_of(const std::string& key) const { return path_ + "/" + key; }
  std::string path() const { return path_.empty() ? "/" : path_; }
  void finish() const;

 private:
  const json* j_;
  std::string path_;
  std::set<std::string> used_;
};

json load_config(const std::string& path);
/// Applies `a.b.c=value`; the value is parsed as JSON and kept as a string otherwise.
void apply_override(json& config, const std::string& assignment);

/// Scenario object: frequencies in Hz under `*_hz` keys, times in seconds.
SimulationScenario scenario_from_json(Reader r);
/// OU channel object {t2, correlation_time, std}.
OuChannel channel_from_json(Reader r);
/// Optimizer settings; the seed always comes from --seed.
OptimizerConfig optimizer_from_json(Reader r);
ModulationBase base_from_json(Reader& r, double default_omega0_hz, double eta);

}  // namespace msgate::cli
