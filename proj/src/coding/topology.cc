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

#include "scope/coding/topology.h"

#include "absl/strings/str_cat.h"

namespace scope::coding {

absl::Status Topology::AddEdge(NodeId a, NodeId b) {
  if (a == b) {
    return absl::InvalidArgumentError(absl::StrCat("self-loop at node ", a));
  }
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
  return absl::OkStatus();
}

bool Topology::Adjacent(NodeId a, NodeId b) const {
  auto it = adjacency_.find(a);
  return it != adjacency_.end() && it->second.count(b) > 0;
}

const std::set<NodeId>& Topology::Neighbors(NodeId id) const {
  static const std::set<NodeId> kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

std::vector<NodeId> Topology::Nodes() const {
  std::vector<NodeId> out;
  for (const auto& [id, _] : adjacency_) out.push_back(id);
  return out;
}

absl::Status ValidateFlow(const Topology& topo, const FlowSpec& flow) {
  if (flow.path.size() < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("flow ", flow.flow_id, ": path needs at least two nodes"));
  }
  std::set<NodeId> seen;
  for (size_t i = 0; i < flow.path.size(); ++i) {
    NodeId n = flow.path[i];
    if (!topo.HasNode(n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("flow ", flow.flow_id, ": unknown node ", n));
    }
    if (!seen.insert(n).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("flow ", flow.flow_id, ": node ", n, " repeats"));
    }
    if (i > 0 && !topo.Adjacent(flow.path[i - 1], n)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "flow ", flow.flow_id, ": ", flow.path[i - 1], " and ", n, " are not adjacent"));
    }
  }
  return absl::OkStatus();
}

}  // namespace scope::coding
