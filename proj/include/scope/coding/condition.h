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

#ifndef SCOPE_CODING_CONDITION_H_
#define SCOPE_CODING_CONDITION_H_

#include <map>
#include <set>

#include "absl/status/statusor.h"
#include "scope/coding/topology.h"

namespace scope::coding {

// Hop sets of one flow as seen from one node on it.
struct HopSets {
  std::set<NodeId> nh;
  std::set<NodeId> ph;
  std::map<NodeId, std::set<NodeId>> nb_ph;  // neighbors of each previous hop

  // Union of the previous hops' neighbor sets.
  std::set<NodeId> PreviousHopNeighbors() const;
  friend bool operator==(const HopSets&, const HopSets&) = default;
};

absl::StatusOr<HopSets> ComputeHopSets(const Topology& topo, const FlowSpec& flow,
                                       NodeId node);

// (NH_i ⊆ NB_{X_j} or NH_i = PH_j) and (NH_j ⊆ NB_{X_i} or NH_j = PH_i).
bool CodingCondition(const HopSets& hs_i, const HopSets& hs_j);

}  // namespace scope::coding

#endif  // SCOPE_CODING_CONDITION_H_
