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

#include "config.hpp"

#include <fstream>
#include <sstream>

#include "msgate/phase_space.hpp"

namespace msgate::cli {

Reader::Reader(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) throw ConfigError((path_.empty() ? "/" : path_) + ": expected an object");
}

bool Reader::has(const std::string& key) const { return j_->contains(key); }

const json& Reader::raw(const std::string& key) {
  if (!has(key)) throw ConfigError(path_of(key) + ": required field is missing");
  used_.insert(key);
  return j_->at(key);
}

double Reader::number(const std::string& key, double fallback) {
  if (!has(key)) return fallback;
  return number(key);
}

double Reader::number(const std::string& key) {
  if (!has(key)) throw ConfigError(path_of(key) + ": required number is missing");
  const json& v = raw(key);
  if (!v.is_number()) throw ConfigError(path_of(key) + ": expected a number");
  return v.get<double>();
}

int Reader::integer(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_number_integer()) throw ConfigError(path_of(key) + ": expected an integer");
  return v.get<int>();
}

bool Reader::flag(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_boolean()) throw ConfigError(path_of(key) + ": expected true or false");
  return v.get<bool>();
}

std::string Reader::text(const std::string& key, const std::string& fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_string()) throw ConfigError(path_of(key) + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> Reader::numbers(const std::string& key, const std::vector<double>& fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_array()) throw ConfigError(path_of(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path_of(key) + "/" + std::to_string(i) + ": expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Reader Reader::object(const std::string& key) { return Reader(raw(key), path_of(key)); }

void Reader::finish() const {
  for (auto it = j_->begin(); it != j_->end(); ++it)
    if (!used_.count(it.key())) throw ConfigError(path_of(it.key()) + ": unknown field");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot read config");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set " + assignment + ": expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &config;
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*node)[parts[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ConfigError("--set " + key + ": '" + parts[i] + "' is not an object");
    node = &next;
  }
  (*node)[parts.back()] = value;
}

OuChannel channel_from_json(Reader r) {
  OuChannel c;
  c.t2 = r.number("t2", 0.0);
  c.params.correlation_time = r.number("correlation_time", c.params.correlation_time);
  c.params.stationary_std = r.number("std", 0.0);
  r.finish();
  if (c.t2 < 0.0) throw ConfigError(r.path_of("t2") + ": must be >= 0");
  if (c.params.correlation_time <= 0.0) throw ConfigError(r.path_of("correlation_time") + ": must be > 0");
  return c;
}

ModulationBase base_from_json(Reader& r, double default_omega0_hz, double eta) {
  ModulationBase b;
  b.omega0 = kTwoPi * r.number("omega0_hz", default_omega0_hz);
  b.delta0 = kTwoPi * r.number("delta0_hz", 0.0);
  if (b.delta0 <= 0.0) b.delta0 = 2.0 * eta * b.omega0;
  b.phi0 = r.number("phi0", 0.0);
  return b;
}

OptimizerConfig optimizer_from_json(Reader r) {
  OptimizerConfig c;
  c.n_segments = r.integer("n_segments", c.n_segments);
  c.max_iterations = r.integer("max_iterations", c.max_iterations);
  c.outer_iterations = r.integer("outer_iterations", c.outer_iterations);
  c.starts = r.integer("starts", c.starts);
  c.tolerance = r.number("tolerance", c.tolerance);
  c.closure_weight = r.number("closure_weight", c.closure_weight);
  c.mean_weight = r.number("mean_weight", c.mean_weight);
  c.heat_weight = r.number("heat_weight", c.heat_weight);
  c.mean_square_slack = r.number("mean_square_slack", c.mean_square_slack);
  r.finish();
  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(r.path() + ": " + e.what());
  }
  return c;
}

SimulationScenario scenario_from_json(Reader r) {
  SimulationScenario s;
  try {
    s.scheme = parse_scheme(r.text("scheme", "primitive"));
  } catch (const Error& e) {
    throw ConfigError(r.path_of("scheme") + ": " + e.what());
  }
  s.omega0 = kTwoPi * r.number("omega0_hz", s.omega0 / kTwoPi);
  s.eta = r.number("eta", s.eta);
  s.delta0 = kTwoPi * r.number("delta0_hz", 0.0);
  s.nu = kTwoPi * r.number("nu_hz", s.nu / kTwoPi);
  s.delta_pm = kTwoPi * r.number("delta_pm_hz", 0.0);
  s.full_terms = r.flag("full_terms", false);
  s.n_bar = r.number("n_bar", 0.0);
  s.heating_rate = r.number("heating_rate", 0.0);
  s.num_pulses = r.integer("num_pulses", 0);
  s.rotations = r.number("rotations", 0.0);
  s.carrier_flips = r.integer("carrier_flips", 0);
  s.static_shift = kTwoPi * r.number("static_shift_hz", 0.0);
  const std::string kind = r.text("shift_kind", "b-field");
  if (kind == "b-field") {
    s.shift_kind = ShiftKind::BField;
  } else if (kind == "control-field") {
    s.shift_kind = ShiftKind::ControlField;
  } else {
    throw ConfigError(r.path_of("shift_kind") + ": expected b-field or control-field");
  }
  s.motional_shift = kTwoPi * r.number("motional_shift_hz", 0.0);
  if (r.has("dephasing")) s.dephasing = channel_from_json(r.object("dephasing"));
  if (r.has("amplitude")) s.amplitude = channel_from_json(r.object("amplitude"));
  if (r.has("modulation")) {
    const json& m = r.raw("modulation");
    try {
      s.modulation = m.is_string() ? load_modulation(m.get<std::string>()) : modulation_from_json(m.dump());
    } catch (const Error& e) {
      throw ConfigError(r.path_of("modulation") + ": " + e.what());
    }
  }
  s.ensemble = r.integer("ensemble", s.ensemble);
  s.fock_cutoff = r.integer("fock_cutoff", 0);
  s.max_dt = r.number("max_dt", 0.0);
  r.finish();
  try {
    s.validate();
  } catch (const Error& e) {
    throw ConfigError(r.path() + ": " + e.what());
  }
  return s;
}

}  // namespace msgate::cli
