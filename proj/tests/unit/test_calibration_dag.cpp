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

#include "msgate/calibration_dag.hpp"

using namespace msgate;

TEST_CASE("preset metrics") {
  CHECK(metrics(build_preset(CalPreset::Pdd)) == CalMetrics{12, 12, 10});
  CHECK(metrics(build_preset(CalPreset::Cdd)) == CalMetrics{12, 10, 8});
  CHECK(metrics(build_preset(CalPreset::CddTable)) == CalMetrics{12, 12, 10});
  CHECK(metrics(build_preset(CalPreset::Mlcdd)) == CalMetrics{22, 20, 14});
  for (auto p : {CalPreset::Pdd, CalPreset::Cdd, CalPreset::CddTable, CalPreset::Mlcdd}) {
    CHECK(build_preset(p).is_acyclic());
    CHECK(parse_cal_preset(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_cal_preset("xyz"), Error);
}

TEST_CASE("mutators reject cycles, duplicates and dangling edges") {
  CalGraph g;
  g.add_node({"a", NodeKind::Frequency, false});
  g.add_node({"b", NodeKind::Rabi, false});
  g.add_node({"c", NodeKind::Derived, false});
  g.add_edge("a", "b", Dependency::Strong);
  g.add_edge("b", "c", Dependency::Weak);
  CHECK_THROWS_AS(g.add_edge("c", "a", Dependency::Strong), Error);
  CHECK_THROWS_AS(g.add_edge("a", "b", Dependency::Weak), Error);
  CHECK_THROWS_AS(g.add_edge("a", "zz", Dependency::Weak), Error);
  CHECK_THROWS_AS(g.add_node({"a", NodeKind::Rabi, false}), Error);
  CHECK(g.topological_order() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("invalidation follows strong edges only") {
  CalGraph g;
  for (const char* n : {"a", "b", "c", "d"}) g.add_node({n, NodeKind::Frequency, false});
  g.add_edge("a", "b", Dependency::Strong);
  g.add_edge("b", "c", Dependency::Strong);
  g.add_edge("a", "d", Dependency::Weak);
  CHECK(invalidate(g, "a") == std::set<std::string>{"a", "b", "c"});
  CHECK(invalidate(g, "d") == std::set<std::string>{"d"});
}

TEST_CASE("JSON and dot output") {
  const CalGraph g = build_preset(CalPreset::Mlcdd);
  const CalGraph back = graph_from_json(graph_to_json(g));
  CHECK(metrics(back) == metrics(g));
  CHECK(back.topological_order() == g.topological_order());
  const std::string dot = graph_to_dot(g);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("penwidth=3") != std::string::npos);
}
