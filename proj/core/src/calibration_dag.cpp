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

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "msgate/calibration_dag.hpp"

namespace msgate {

using nlohmann::json;

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Frequency:
      return "frequency";
    case NodeKind::Rabi:
      return "rabi";
    case NodeKind::Derived:
      return "derived";
  }
  return "frequency";
}

std::string to_string(Dependency d) { return d == Dependency::Weak ? "weak" : "strong"; }

namespace {

NodeKind parse_node_kind(const std::string& s) {
  if (s == "frequency") return NodeKind::Frequency;
  if (s == "rabi") return NodeKind::Rabi;
  if (s == "derived") return NodeKind::Derived;
  throw Error("unknown node kind '" + s + "'");
}

Dependency parse_dependency(const std::string& s) {
  if (s == "weak") return Dependency::Weak;
  if (s == "strong") return Dependency::Strong;
  throw Error("unknown dependency '" + s + "'");
}

}  // namespace

int CalGraph::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return static_cast<int>(i);
  return -1;
}

bool CalGraph::has_node(const std::string& name) const { return index_of(name) >= 0; }

const CalNode& CalGraph::node(const std::string& name) const {
  const int i = index_of(name);
  if (i < 0) throw Error("CalGraph: unknown node '" + name + "'");
  return nodes_[i];
}

void CalGraph::add_node(const CalNode& node) {
  require(!node.name.empty(), "CalGraph: node name must be non-empty");
  require(!has_node(node.name), "CalGraph: duplicate node '" + node.name + "'");
  nodes_.push_back(node);
}

bool CalGraph::reaches(int from, int to) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack{from};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    if (seen[u]) continue;
    seen[u] = 1;
    for (const auto& e : edges_)
      if (index_of(e.parent) == u) stack.push_back(index_of(e.child));
  }
  return false;
}

void CalGraph::add_edge(const std::string& parent, const std::string& child, Dependency strength) {
  const int p = index_of(parent), c = index_of(child);
  if (p < 0) throw Error("CalGraph: unknown node '" + parent + "'");
  if (c < 0) throw Error("CalGraph: unknown node '" + child + "'");
  require(p != c, "CalGraph: self dependency on '" + parent + "'");
  for (const auto& e : edges_)
    require(!(e.parent == parent && e.child == child),
            "CalGraph: duplicate edge " + parent + " -> " + child);
  require(!reaches(c, p), "CalGraph: edge " + parent + " -> " + child + " closes a cycle");
  edges_.push_back({parent, child, strength});
}

std::vector<std::string> CalGraph::topological_order() const {
  const std::size_t n = nodes_.size();
  std::vector<int> indeg(n, 0);
  for (const auto& e : edges_) ++indeg[index_of(e.child)];
  std::vector<char> done(n, 0);
  std::vector<std::string> order;
  order.reserve(n);
  while (order.size() < n) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && indeg[i] == 0) {
        pick = i;
        break;
      }
    if (pick == n) throw Error("CalGraph: graph has a cycle");
    done[pick] = 1;
    order.push_back(nodes_[pick].name);
    for (const auto& e : edges_)
      if (e.parent == nodes_[pick].name) --indeg[index_of(e.child)];
  }
  return order;
}

bool CalGraph::is_acyclic() const {
  try {
    topological_order();
    return true;
  } catch (const Error&) {
    return false;
  }
}

CalMetrics metrics(const CalGraph& g) {
  CalMetrics m;
  m.nodes = static_cast<int>(g.nodes().size());
  for (const auto& e : g.edges()) (e.strength == Dependency::Strong ? m.strong : m.weak)++;
  return m;
}

CalPreset parse_cal_preset(const std::string& s) {
  if (s == "pdd") return CalPreset::Pdd;
  if (s == "cdd" || s == "cdd-text") return CalPreset::Cdd;
  if (s == "cdd-table") return CalPreset::CddTable;
  if (s == "mlcdd") return CalPreset::Mlcdd;
  throw Error("unknown calibration preset '" + s + "' (pdd, cdd, cdd-table, mlcdd)");
}

std::string to_string(CalPreset p) {
  switch (p) {
    case CalPreset::Pdd:
      return "pdd";
    case CalPreset::Cdd:
      return "cdd";
    case CalPreset::CddTable:
      return "cdd-table";
    case CalPreset::Mlcdd:
      return "mlcdd";
  }
  return "pdd";
}

namespace {

constexpr int kIons = 2;

std::string ion(const std::string& base, int i) { return base + "_" + std::to_string(i); }

/// Two-level schemes: qubit frequency, sidebands, carrier and Stark shift per
/// ion; shared secular frequency and MS detuning.
CalGraph two_level_graph(bool continuous_text) {
  const auto S = Dependency::Strong;
  const auto W = Dependency::Weak;
  CalGraph g;
  g.add_node({"nu", NodeKind::Frequency, false});
  for (int i = 1; i <= kIons; ++i) {
    g.add_node({ion("omega0", i), NodeKind::Frequency, true});
    g.add_node({ion("Omega_c", i), NodeKind::Rabi, true});
    g.add_node({ion("Omega_r", i), NodeKind::Rabi, true});
    g.add_node({ion("Omega_b", i), NodeKind::Rabi, true});
    g.add_node({ion("domega0", i), NodeKind::Frequency, true});
  }
  g.add_node({"delta0", NodeKind::Derived, false});
  for (int i = 1; i <= kIons; ++i) {
    g.add_edge(ion("omega0", i), ion("Omega_c", i), S);
    g.add_edge(ion("omega0", i), ion("Omega_r", i), S);
    g.add_edge(ion("omega0", i), ion("Omega_b", i), S);
    g.add_edge(ion("Omega_r", i), ion("domega0", i), S);
    g.add_edge(ion("domega0", i), "delta0", S);
    g.add_edge("nu", ion("Omega_r", i), W);
    g.add_edge("nu", ion("Omega_b", i), W);
    g.add_edge(ion("omega0", i), ion("domega0", i), W);
    g.add_edge(ion("Omega_c", i), ion("domega0", i), W);
    if (!continuous_text) {
      // The always-on carrier is calibrated together with the sidebands in
      // the continuous variant, removing these two dependencies.
      g.add_edge(ion("Omega_b", i), ion("domega0", i), S);
      g.add_edge(ion("Omega_c", i), "delta0", W);
    }
  }
  return g;
}

/// Dressed-state scheme: clock transition, both magnetic transitions, dressed
/// qubit frequency, sidebands and Stark shift per ion.
CalGraph multi_level_graph() {
  const auto S = Dependency::Strong;
  const auto W = Dependency::Weak;
  CalGraph g;
  g.add_node({"nu", NodeKind::Frequency, false});
  for (int i = 1; i <= kIons; ++i) {
    g.add_node({ion("omega_clk", i), NodeKind::Frequency, true});
    g.add_node({ion("Omega_clk", i), NodeKind::Rabi, true});
    g.add_node({ion("omega_p1", i), NodeKind::Frequency, true});
    g.add_node({ion("omega_m1", i), NodeKind::Frequency, true});
    g.add_node({ion("Omega_p1", i), NodeKind::Rabi, true});
    g.add_node({ion("Omega_m1", i), NodeKind::Rabi, true});
    g.add_node({ion("omega_D", i), NodeKind::Frequency, true});
    g.add_node({ion("Omega_r", i), NodeKind::Rabi, true});
    g.add_node({ion("Omega_b", i), NodeKind::Rabi, true});
    g.add_node({ion("domega0", i), NodeKind::Frequency, true});
  }
  g.add_node({"delta0", NodeKind::Derived, false});
  for (int i = 1; i <= kIons; ++i) {
    g.add_edge(ion("omega_clk", i), ion("Omega_clk", i), S);
    g.add_edge(ion("omega_clk", i), ion("omega_p1", i), S);
    g.add_edge(ion("omega_clk", i), ion("omega_m1", i), S);
    g.add_edge(ion("omega_p1", i), ion("Omega_p1", i), S);
    g.add_edge(ion("omega_m1", i), ion("Omega_m1", i), S);
    g.add_edge(ion("Omega_p1", i), ion("omega_D", i), S);
    g.add_edge(ion("Omega_m1", i), ion("omega_D", i), S);
    g.add_edge(ion("omega_D", i), ion("Omega_r", i), S);
    g.add_edge(ion("omega_D", i), ion("Omega_b", i), S);
    g.add_edge(ion("domega0", i), "delta0", S);
    g.add_edge(ion("Omega_clk", i), ion("omega_p1", i), W);
    g.add_edge(ion("Omega_clk", i), ion("omega_m1", i), W);
    g.add_edge("nu", ion("Omega_r", i), W);
    g.add_edge("nu", ion("Omega_b", i), W);
    g.add_edge(ion("Omega_r", i), ion("domega0", i), W);
    g.add_edge(ion("Omega_b", i), ion("domega0", i), W);
    g.add_edge(ion("omega_D", i), ion("domega0", i), W);
  }
  return g;
}

}  // namespace

CalGraph build_preset(CalPreset preset) {
  switch (preset) {
    case CalPreset::Pdd:
    case CalPreset::CddTable:
      return two_level_graph(false);
    case CalPreset::Cdd:
      return two_level_graph(true);
    case CalPreset::Mlcdd:
      return multi_level_graph();
  }
  throw Error("build_preset: unknown preset");
}

std::set<std::string> invalidate(const CalGraph& g, const std::string& node) {
  g.node(node);  // throws on unknown names
  std::set<std::string> out{node};
  std::vector<std::string> stack{node};
  while (!stack.empty()) {
    const std::string u = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges())
      if (e.strength == Dependency::Strong && e.parent == u && out.insert(e.child).second) stack.push_back(e.child);
  }
  return out;
}

std::string graph_to_json(const CalGraph& g) {
  json j;
  j["nodes"] = json::array();
  for (const auto& n : g.nodes())
    j["nodes"].push_back({{"name", n.name}, {"kind", to_string(n.kind)}, {"per_ion", n.per_ion}});
  j["edges"] = json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"parent", e.parent}, {"child", e.child}, {"strength", to_string(e.strength)}});
  return j.dump(2);
}

CalGraph graph_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    CalGraph g;
    for (const auto& n : j.at("nodes"))
      g.add_node({n.at("name").get<std::string>(), parse_node_kind(n.value("kind", std::string("frequency"))),
                  n.value("per_ion", false)});
    for (const auto& e : j.at("edges"))
      g.add_edge(e.at("parent").get<std::string>(), e.at("child").get<std::string>(),
                 parse_dependency(e.value("strength", std::string("strong"))));
    return g;
  } catch (const json::exception& e) {
    throw Error(std::string("graph_from_json: ") + e.what());
  }
}

std::string graph_to_dot(const CalGraph& g) {
  std::ostringstream os;
  os << "digraph calibration {\n  rankdir=TB;\n";
  for (const auto& n : g.nodes()) {
    const char* color = n.kind == NodeKind::Frequency ? "gold" : (n.kind == NodeKind::Rabi ? "tomato" : "lightgray");
    os << "  \"" << n.name << "\" [style=filled, fillcolor=" << color << "];\n";
  }
  for (const auto& e : g.edges())
    os << "  \"" << e.parent << "\" -> \"" << e.child << "\""
       << (e.strength == Dependency::Strong ? " [penwidth=3]" : " [penwidth=1]") << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace msgate
