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

#include <set>
#include <string>
#include <vector>

#include "msgate/common.hpp"

namespace msgate {

enum class NodeKind { Frequency, Rabi, Derived };
enum class Dependency { Weak, Strong };

std::string to_string(NodeKind k);
std::string to_string(Dependency d);

struct CalNode {
  std::string name;
  NodeKind kind = NodeKind::Frequency;
  bool per_ion = false;
};

/// A weak edge tolerates a small misset of the parent; a strong edge does not.
struct CalEdge {
  std::string parent;
  std::string child;
  Dependency strength = Dependency::Strong;
};

/// Calibration dependency graph. Mutators keep it acyclic and free of
/// duplicate edges and dangling endpoints.
class CalGraph {
 public:
  void add_node(const CalNode& node);
  void add_edge(const std::string& parent, const std::string& child, Dependency strength);

  const std::vector<CalNode>& nodes() const { return nodes_; }
  const std::vector<CalEdge>& edges() const { return edges_; }
  bool has_node(const std::string& name) const;
  const CalNode& node(const std::string& name) const;

  /// Kahn order with ties broken by insertion order.
  std::vector<std::string> topological_order() const;
  bool is_acyclic() const;

 private:
  int index_of(const std::string& name) const;
  bool reaches(int from, int to) const;

  std::vector<CalNode> nodes_;
  std::vector<CalEdge> edges_;
};

struct CalMetrics {
  int nodes = 0;
  int strong = 0;
  int weak = 0;
  bool operator==(const CalMetrics&) const = default;
};
CalMetrics metrics(const CalGraph& g);

/// `cdd` is the 12/10/8 variant given with the continuous scheme; `cdd_table`
/// is the 12/12/10 summary-table variant, structurally the pulsed graph.
enum class CalPreset { Pdd, Cdd, CddTable, Mlcdd };
CalPreset parse_cal_preset(const std::string& s);
std::string to_string(CalPreset p);

/// Per-ion subgraphs are repeated for ions 1 and 2 with names suffixed `_1`, `_2`.
CalGraph build_preset(CalPreset preset);

/// Nodes whose calibration is invalidated when `node` changes: the node and
/// its descendants along strong edges.
std::set<std::string> invalidate(const CalGraph& g, const std::string& node);

std::string graph_to_json(const CalGraph& g);
CalGraph graph_from_json(const std::string& text);
/// Graphviz dot text; strong edges get a heavier pen.
std::string graph_to_dot(const CalGraph& g);

}  // namespace msgate
