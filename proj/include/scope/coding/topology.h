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

#ifndef SCOPE_CODING_TOPOLOGY_H_
#define SCOPE_CODING_TOPOLOGY_H_

#include <map>
#include <set>
#include <vector>

#include "absl/status/status.h"
#include "scope/common/ids.h"

namespace scope::coding {

// Undirected radio-range graph without self-loops.
class Topology {
 public:
  void AddNode(NodeId id) { adjacency_[id]; }
  absl::Status AddEdge(NodeId a, NodeId b);

  bool HasNode(NodeId id) const { return adjacency_.count(id) > 0; }
  bool Adjacent(NodeId a, NodeId b) const;
  // Empty for unknown nodes.
  const std::set<NodeId>& Neighbors(NodeId id) const;
  std::vector<NodeId> Nodes() const;
  size_t size() const { return adjacency_.size(); }

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::map<NodeId, std::set<NodeId>> adjacency_;
};

struct FlowSpec {
  int flow_id = 0;
  std::vector<NodeId> path;  // source first, destination last

  NodeId source() const { return path.front(); }
  NodeId destination() const { return path.back(); }
  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

// Path of length >= 2, known nodes, consecutive nodes adjacent, no repeats.
absl::Status ValidateFlow(const Topology& topo, const FlowSpec& flow);

}  // namespace scope::coding

#endif  // SCOPE_CODING_TOPOLOGY_H_
