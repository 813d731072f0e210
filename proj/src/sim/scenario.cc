// Copyright 2026 The SCOPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scope/sim/scenario.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "scope/common/status_macros.h"

namespace scope::sim {
namespace {

absl::StatusOr<Scenario> FromFlows(int id, std::string name,
                                   std::vector<std::vector<NodeId>> paths) {
  Scenario s;
  s.id = id;
  s.name = std::move(name);
  int flow_id = 1;
  for (auto& path : paths) {
    for (size_t k = 0; k < path.size(); ++k) {
      s.topology.AddNode(path[k]);
      if (k > 0) RETURN_IF_ERROR(s.topology.AddEdge(path[k - 1], path[k]));
    }
    s.flows.push_back({flow_id++, std::move(path)});
  }
  return s;
}

}  // namespace

absl::StatusOr<Scenario> BuildScenario(int id) {
  switch (id) {
    case 1:
      return FromFlows(1, "scenario-1", {{1, 2, 3}, {3, 2, 1}});
    case 2:
      return FromFlows(2, "scenario-2", {{1, 5, 3}, {3, 5, 1}, {2, 5, 4}, {4, 5, 2}});
    case 3:
      return FromFlows(3, "scenario-3",
                       {{1, 7, 4}, {4, 7, 1}, {2, 7, 5}, {5, 7, 2}, {3, 7, 6}, {6, 7, 3}});
    case 4:
      return FromFlows(4, "scenario-4",
                       {{1, 2, 3, 4, 5, 6, 7, 8, 9}, {9, 8, 7, 6, 5, 4, 3, 2, 1}});
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown scenario id ", id));
}

Scenario EavesdropScenario() {
  Scenario s = *BuildScenario(1);
  s.id = 0;
  s.name = "scenario-1-eavesdrop";
  (void)s.topology.AddEdge(4, 1);
  (void)s.topology.AddEdge(4, 2);
  return s;
}

absl::StatusOr<Scenario> ScenarioFromJson(const nlohmann::json& j) {
  try {
    Scenario s;
    s.name = j.value("name", std::string("custom"));
    for (const auto& n : j.at("nodes")) s.topology.AddNode(n.get<NodeId>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        return absl::InvalidArgumentError("scenario: each edge needs two node ids");
      }
      NodeId a = e[0].get<NodeId>(), b = e[1].get<NodeId>();
      if (!s.topology.HasNode(a) || !s.topology.HasNode(b)) {
        return absl::InvalidArgumentError(absl::StrCat("scenario: edge ", a, "-", b,
                                                       " names an unknown node"));
      }
      RETURN_IF_ERROR(s.topology.AddEdge(a, b));
    }
    std::set<int> ids;
    for (const auto& f : j.at("flows")) {
      FlowSpec flow{f.at("id").get<int>(), f.at("path").get<std::vector<NodeId>>()};
      if (flow.flow_id < 0 || flow.flow_id >= 0xffff || !ids.insert(flow.flow_id).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("scenario: bad or repeated flow id ", flow.flow_id));
      }
      s.flows.push_back(std::move(flow));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("scenario: ", e.what()));
  }
}

absl::StatusOr<Scenario> LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) return absl::InvalidArgumentError(absl::StrCat(path, ": not JSON"));
  return ScenarioFromJson(j);
}

nlohmann::json ScenarioToJson(const Scenario& s) {
  nlohmann::json edges = nlohmann::json::array();
  for (NodeId a : s.topology.Nodes()) {
    for (NodeId b : s.topology.Neighbors(a)) {
      if (a < b) edges.push_back({a, b});
    }
  }
  nlohmann::json flows = nlohmann::json::array();
  for (const auto& f : s.flows) flows.push_back({{"id", f.flow_id}, {"path", f.path}});
  return {{"name", s.name}, {"nodes", s.topology.Nodes()}, {"edges", edges}, {"flows", flows}};
}

std::optional<NodeId> IntersectingNode(const Scenario& s) {
  std::map<NodeId, int> relayed;
  for (const auto& f : s.flows) {
    for (size_t k = 1; k + 1 < f.path.size(); ++k) ++relayed[f.path[k]];
  }
  for (const auto& [node, n] : relayed) {
    if (n >= 2) return node;
  }
  return std::nullopt;
}

}  // namespace scope::sim
