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

#ifndef SCOPE_SIM_SCENARIO_H_
#define SCOPE_SIM_SCENARIO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json_fwd.hpp"
#include "scope/coding/topology.h"

namespace scope::sim {

using coding::FlowSpec;
using coding::Topology;

struct Scenario {
  int id = 0;  // 1..4 for the built-ins, 0 for loaded scenarios
  std::string name;
  Topology topology;
  std::vector<FlowSpec> flows;
};

// Scenario 1: N1-N2-N3 with two opposing flows. Scenarios 2 and 3: stars
// around N5 and N7 with opposing flow pairs through the hub. Scenario 4: a
// nine-node chain with two opposing end-to-end flows. Star and chain edges
// are reconstructed from the flow paths.
absl::StatusOr<Scenario> BuildScenario(int id);

// Scenario 1 plus an eavesdropper N4 adjacent to N1 and N2, off every flow.
Scenario EavesdropScenario();

// {"name": s, "nodes": [ids], "edges": [[a, b], ...],
//  "flows": [{"id": n, "path": [ids]}, ...]}
absl::StatusOr<Scenario> ScenarioFromJson(const nlohmann::json& j);
absl::StatusOr<Scenario> LoadScenarioFile(const std::string& path);
nlohmann::json ScenarioToJson(const Scenario& s);

// Lowest-numbered node that relays two or more flows, if any.
std::optional<NodeId> IntersectingNode(const Scenario& s);

}  // namespace scope::sim

#endif  // SCOPE_SIM_SCENARIO_H_
