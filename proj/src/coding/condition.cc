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

#include "scope/coding/condition.h"

#include <algorithm>

#include "absl/strings/str_cat.h"

namespace scope::coding {

std::set<NodeId> HopSets::PreviousHopNeighbors() const {
  std::set<NodeId> out;
  for (const auto& [_, nb] : nb_ph) out.insert(nb.begin(), nb.end());
  return out;
}

absl::StatusOr<HopSets> ComputeHopSets(const Topology& topo, const FlowSpec& flow,
                                       NodeId node) {
  auto it = std::find(flow.path.begin(), flow.path.end(), node);
  if (it == flow.path.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("node ", node, " is not on flow ", flow.flow_id));
  }
  HopSets hs;
  if (it != flow.path.begin()) {
    NodeId prev = *(it - 1);
    hs.ph.insert(prev);
    hs.nb_ph[prev] = topo.Neighbors(prev);
  }
  if (it + 1 != flow.path.end()) hs.nh.insert(*(it + 1));
  return hs;
}

namespace {

bool Subset(const std::set<NodeId>& a, const std::set<NodeId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool CodingCondition(const HopSets& hs_i, const HopSets& hs_j) {
  bool i_side = Subset(hs_i.nh, hs_j.PreviousHopNeighbors()) || hs_i.nh == hs_j.ph;
  bool j_side = Subset(hs_j.nh, hs_i.PreviousHopNeighbors()) || hs_j.nh == hs_i.ph;
  return i_side && j_side;
}

}  // namespace scope::coding
