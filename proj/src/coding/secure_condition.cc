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

#include "scope/coding/secure_condition.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "scope/common/hash.h"
#include "scope/common/status_macros.h"

namespace scope::coding {
namespace {

using he::Ciphertext;

std::vector<Ciphertext> Dedup(const std::vector<Ciphertext>& list) {
  std::set<Bytes> seen;
  std::vector<Ciphertext> out;
  for (const auto& c : list) {
    if (seen.insert(he::SerializeCiphertext(c)).second) out.push_back(c);
  }
  return out;
}

bool Matches(const Ciphertext& x, const Ciphertext& y) {
  auto d = he::CtSub(x, y);
  return d.ok() && d->IsZero() && d->layers().empty();
}

std::vector<Ciphertext> ApplyAll(const std::vector<Ciphertext>& list,
                                 const he::LayerMask& mask) {
  std::vector<Ciphertext> out;
  out.reserve(list.size());
  for (const auto& c : list) out.push_back(he::ApplyMask(c, mask));
  return out;
}

EncLists ApplyAll(const EncLists& lists, const he::LayerMask& mask) {
  return {ApplyAll(lists.nh, mask), ApplyAll(lists.ph, mask), ApplyAll(lists.nb, mask)};
}

}  // namespace

bool EqualList(const std::vector<Ciphertext>& lx, const std::vector<Ciphertext>& ly) {
  std::vector<Ciphertext> x = Dedup(lx);
  std::vector<Ciphertext> y = Dedup(ly);
  if (x.size() != y.size()) return false;
  size_t count = 0;
  for (const auto& a : x) {
    for (const auto& b : y) count += Matches(a, b);
  }
  return count == x.size() && count == y.size();
}

bool SubsetList(const std::vector<Ciphertext>& la, const std::vector<Ciphertext>& lb) {
  std::vector<Ciphertext> a = Dedup(la);
  std::vector<Ciphertext> b = Dedup(lb);
  for (const auto& x : a) {
    if (std::none_of(b.begin(), b.end(), [&](const Ciphertext& y) { return Matches(x, y); })) {
      return false;
    }
  }
  return true;
}

Bytes NodeTag(const he::FlowKey& fk, NodeId id) {
  ByteWriter w;
  w.PutBytes(ByteSpan(reinterpret_cast<const uint8_t*>("node-tag"), 8));
  w.PutU32(id);
  Bytes mac = HmacSha256(fk.secret, w.bytes());
  mac.resize(16);
  return mac;
}

nlohmann::json Transcript::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : messages) {
    nlohmann::json cts = nlohmann::json::array();
    for (const auto& c : m.ciphertexts) cts.push_back(ToHex(c));
    out.push_back({{"from", m.from}, {"to", m.to}, {"label", m.label}, {"ciphertexts", cts}});
  }
  return out;
}

Bytes Transcript::IntersectingView() const {
  Bytes out;
  for (const auto& m : messages) {
    for (const auto& c : m.ciphertexts) out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

absl::StatusOr<SecureConditionSession> SecureConditionSession::Create(
    const he::Curve& curve, NodeId intersecting, Party party_i, Party party_j,
    const he::FlowKey& fk_ij, uint64_t session_id) {
  for (const Party* p : {&party_i, &party_j}) {
    if (p->kp == nullptr) {
      return absl::FailedPreconditionError(
          absl::StrCat("missing key pair for node ", p->id));
    }
    if (!curve.IsOnCurve(p->kp->pk) || p->kp->pk.is_identity()) {
      return absl::FailedPreconditionError(
          absl::StrCat("public key of node ", p->id, " is not on ", curve.name()));
    }
  }
  if (fk_ij == he::FlowKey{}) {
    return absl::FailedPreconditionError("missing flow key between the endpoints");
  }
  if (curve.ChunkCapacity() < 16) {
    return absl::FailedPreconditionError(
        absl::StrCat(curve.name(), " cannot carry node tags"));
  }
  return SecureConditionSession(curve, intersecting, std::move(party_i),
                                std::move(party_j), fk_ij, session_id);
}

absl::Status SecureConditionSession::Expect(Stage stage, std::string_view step) const {
  if (stage_ != stage) {
    return absl::FailedPreconditionError(
        absl::StrCat("protocol stage mismatch: ", std::string(step), " called out of order"));
  }
  return absl::OkStatus();
}

absl::StatusOr<he::LayerMask> SecureConditionSession::MaskFor(const Party& p) const {
  ByteWriter w;
  w.PutBytes(curve_->SerializePoint(p.kp->pk));
  w.PutU64(session_id_);
  he::Scalar r = he::DeriveScalar(*curve_, fk_, "condition-layer", w.bytes());
  return he::MakeLayerMask(*curve_, p.kp->pk, r);
}

absl::StatusOr<EncLists> SecureConditionSession::EncryptOwn(
    const Party& p, const he::LayerMask& mask) const {
  auto encrypt = [&](const std::set<NodeId>& ids) -> absl::StatusOr<std::vector<Ciphertext>> {
    std::vector<Ciphertext> out;
    for (NodeId id : ids) {
      ASSIGN_OR_RETURN(he::Point m, curve_->EncodeChunk(NodeTag(fk_, id)));
      out.push_back(he::EncryptWithMask(*curve_, m, mask));
    }
    return out;
  };
  EncLists lists;
  ASSIGN_OR_RETURN(lists.nh, encrypt(p.hops.nh));
  ASSIGN_OR_RETURN(lists.ph, encrypt(p.hops.ph));
  ASSIGN_OR_RETURN(lists.nb, encrypt(p.hops.PreviousHopNeighbors()));
  return lists;
}

void SecureConditionSession::Record(NodeId from, NodeId to, std::string_view label,
                                    const EncLists& lists) {
  TranscriptMessage m{from, to, std::string(label), {}};
  for (const auto* list : {&lists.nh, &lists.ph, &lists.nb}) {
    for (const auto& c : *list) m.ciphertexts.push_back(he::SerializeCiphertext(c));
  }
  transcript_.messages.push_back(std::move(m));
}

absl::Status SecureConditionSession::SubmitLists() {
  RETURN_IF_ERROR(Expect(Stage::kInit, "SubmitLists"));
  ASSIGN_OR_RETURN(mask_i_, MaskFor(party_i_));
  ASSIGN_OR_RETURN(mask_j_, MaskFor(party_j_));
  ASSIGN_OR_RETURN(from_i_, EncryptOwn(party_i_, mask_i_));
  ASSIGN_OR_RETURN(from_j_, EncryptOwn(party_j_, mask_j_));
  Record(party_i_.id, intersecting_, "submit", from_i_);
  Record(party_j_.id, intersecting_, "submit", from_j_);
  stage_ = Stage::kSubmitted;
  return absl::OkStatus();
}

absl::Status SecureConditionSession::Relay() {
  RETURN_IF_ERROR(Expect(Stage::kSubmitted, "Relay"));
  Record(intersecting_, party_j_.id, "relay", from_i_);
  Record(intersecting_, party_i_.id, "relay", from_j_);
  stage_ = Stage::kRelayed;
  return absl::OkStatus();
}

absl::Status SecureConditionSession::AddLayers() {
  RETURN_IF_ERROR(Expect(Stage::kRelayed, "AddLayers"));
  double_i_ = ApplyAll(from_i_, mask_j_);
  double_j_ = ApplyAll(from_j_, mask_i_);
  Record(party_j_.id, intersecting_, "second-layer", double_i_);
  Record(party_i_.id, intersecting_, "second-layer", double_j_);
  stage_ = Stage::kLayered;
  return absl::OkStatus();
}

absl::StatusOr<bool> SecureConditionSession::Evaluate() {
  RETURN_IF_ERROR(Expect(Stage::kLayered, "Evaluate"));
  stage_ = Stage::kDone;
  bool a = SubsetList(double_i_.nh, double_j_.nb);
  bool b = EqualList(double_i_.nh, double_j_.ph);
  bool c = SubsetList(double_j_.nh, double_i_.nb);
  bool d = EqualList(double_j_.nh, double_i_.ph);
  return (a || b) && (c || d);
}

absl::StatusOr<bool> SecureCodingCondition(const he::Curve& curve, NodeId intersecting,
                                           const Party& party_i, const Party& party_j,
                                           const he::FlowKey& fk_ij, uint64_t session_id,
                                           Transcript* transcript) {
  ASSIGN_OR_RETURN(SecureConditionSession s,
                   SecureConditionSession::Create(curve, intersecting, party_i, party_j,
                                                  fk_ij, session_id));
  RETURN_IF_ERROR(s.SubmitLists());
  RETURN_IF_ERROR(s.Relay());
  RETURN_IF_ERROR(s.AddLayers());
  ASSIGN_OR_RETURN(bool verdict, s.Evaluate());
  if (transcript != nullptr) *transcript = s.transcript();
  return verdict;
}

}  // namespace scope::coding
