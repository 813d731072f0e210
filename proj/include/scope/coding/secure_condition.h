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

#ifndef SCOPE_CODING_SECURE_CONDITION_H_
#define SCOPE_CODING_SECURE_CONDITION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json_fwd.hpp"
#include "scope/coding/condition.h"
#include "scope/common/bytes.h"
#include "scope/he/elgamal.h"

namespace scope::coding {

// Set equality and subset tests over twice-encrypted lists. Both lists must
// carry the same two layers built from the same per-session nonces, so equal
// plaintexts give equal ciphertexts and a matching pair subtracts to the
// layerless identity. Duplicates are dropped by ciphertext bytes first.
bool EqualList(const std::vector<he::Ciphertext>& lx,
               const std::vector<he::Ciphertext>& ly);
bool SubsetList(const std::vector<he::Ciphertext>& la,
                const std::vector<he::Ciphertext>& lb);

// Keyed 16-byte tag standing in for a node id inside the encrypted lists.
Bytes NodeTag(const he::FlowKey& fk, NodeId id);

// One endpoint of the exchange: the previous hop of its flow at the
// intersecting node, holding that flow's hop sets and its own key pair.
struct Party {
  NodeId id = 0;
  const he::KeyPair* kp = nullptr;
  HopSets hops;
};

struct TranscriptMessage {
  NodeId from = 0;
  NodeId to = 0;
  std::string label;
  std::vector<Bytes> ciphertexts;
};

struct Transcript {
  std::vector<TranscriptMessage> messages;
  nlohmann::json ToJson() const;
  // Every byte that passed through the intersecting node.
  Bytes IntersectingView() const;
};

// The lists one party contributes: NH, PH and the previous hops' neighbors.
struct EncLists {
  std::vector<he::Ciphertext> nh;
  std::vector<he::Ciphertext> ph;
  std::vector<he::Ciphertext> nb;
};

// Message sequence between N_i, N_m and N_j. Each step must be called once,
// in order; the intersecting node only ever handles ciphertext lists.
class SecureConditionSession {
 public:
  static absl::StatusOr<SecureConditionSession> Create(
      const he::Curve& curve, NodeId intersecting, Party party_i, Party party_j,
      const he::FlowKey& fk_ij, uint64_t session_id);

  // Endpoints encrypt their own lists under their own key and send to N_m.
  absl::Status SubmitLists();
  // N_m forwards each party's lists to the other party.
  absl::Status Relay();
  // Each endpoint adds its layer to the other's lists and returns them to N_m.
  absl::Status AddLayers();
  // N_m evaluates the condition on the twice-encrypted lists.
  absl::StatusOr<bool> Evaluate();

  const Transcript& transcript() const { return transcript_; }

 private:
  enum class Stage { kInit, kSubmitted, kRelayed, kLayered, kDone };

  SecureConditionSession(const he::Curve& curve, NodeId intersecting, Party i,
                         Party j, const he::FlowKey& fk, uint64_t session_id)
      : curve_(&curve), intersecting_(intersecting), party_i_(std::move(i)),
        party_j_(std::move(j)), fk_(fk), session_id_(session_id) {}

  absl::Status Expect(Stage stage, std::string_view step) const;
  absl::StatusOr<he::LayerMask> MaskFor(const Party& p) const;
  absl::StatusOr<EncLists> EncryptOwn(const Party& p, const he::LayerMask& mask) const;
  void Record(NodeId from, NodeId to, std::string_view label, const EncLists& lists);

  const he::Curve* curve_;
  NodeId intersecting_;
  Party party_i_;
  Party party_j_;
  he::FlowKey fk_;
  uint64_t session_id_;
  Stage stage_ = Stage::kInit;
  he::LayerMask mask_i_;
  he::LayerMask mask_j_;
  EncLists from_i_;     // single layer, held by N_m then by N_j
  EncLists from_j_;
  EncLists double_i_;   // i's lists with j's layer added
  EncLists double_j_;
  Transcript transcript_;
};

// Runs the whole exchange. `transcript` may be null.
absl::StatusOr<bool> SecureCodingCondition(const he::Curve& curve, NodeId intersecting,
                                           const Party& party_i, const Party& party_j,
                                           const he::FlowKey& fk_ij, uint64_t session_id,
                                           Transcript* transcript = nullptr);

}  // namespace scope::coding

#endif  // SCOPE_CODING_SECURE_CONDITION_H_
