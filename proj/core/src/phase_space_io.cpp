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

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "msgate/phase_space.hpp"

namespace msgate {

using nlohmann::json;

std::string modulation_to_json(const ModulationSequence& mod) {
  mod.validate();
  json j;
  j["kind"] = to_string(mod.kind);
  j["base"] = {{"omega0", mod.base.omega0}, {"delta0", mod.base.delta0}, {"phi0", mod.base.phi0}};
  json segs = json::array();
  for (const auto& s : mod.segments) {
    segs.push_back({{"duration", s.duration}, {"phase", s.phase}, {"detuning", s.detuning}, {"amplitude", s.amplitude}});
  }
  j["segments"] = segs;
  return j.dump(2);
}

ModulationSequence modulation_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("modulation_from_json: ") + e.what());
  }
  try {
    ModulationSequence m;
    m.kind = parse_modulation_kind(j.value("kind", std::string("phase")));
    const json& b = j.at("base");
    m.base.omega0 = b.at("omega0").get<double>();
    m.base.delta0 = b.at("delta0").get<double>();
    m.base.phi0 = b.value("phi0", 0.0);
    for (const auto& s : j.at("segments")) {
      Segment seg;
      seg.duration = s.at("duration").get<double>();
      seg.phase = s.value("phase", 0.0);
      seg.detuning = s.value("detuning", m.base.delta0);
      seg.amplitude = s.value("amplitude", 1.0);
      m.segments.push_back(seg);
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("modulation_from_json: ") + e.what());
  }
}

void save_modulation(const ModulationSequence& mod, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_modulation: cannot open " + path);
  out << modulation_to_json(mod) << '\n';
}

ModulationSequence load_modulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_modulation: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return modulation_from_json(ss.str());
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path, const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw Error("write_trajectory_csv: cannot open " + path);
  for (const auto& h : header) out << "# " << h << '\n';
  out << "t,re_alpha,im_alpha\n" << std::setprecision(12);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    out << traj.times[i] << ',' << traj.alpha[i].real() << ',' << traj.alpha[i].imag() << '\n';
}

}  // namespace msgate
