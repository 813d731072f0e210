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

#include "scope/packet/header_crypto.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "scope/common/status_macros.h"

namespace scope::packet {
namespace {

size_t FieldWidth(FieldTag tag) {
  return tag == FieldTag::kBitmap || tag == FieldTag::kAckMap ? 8 : 4;
}

absl::StatusOr<uint64_t> DecryptField(const he::Curve& curve, FieldTag tag,
                                      const he::Ciphertext& c,
                                      const he::KeyPair& kp) {
  ASSIGN_OR_RETURN(he::Point m, he::Decrypt(curve, kp, c));
  ASSIGN_OR_RETURN(Bytes chunk, curve.DecodeChunk(m));
  const size_t width = FieldWidth(tag);
  if (chunk.size() != 1 + width || chunk[0] != static_cast<uint8_t>(tag)) {
    return absl::DataLossError(
        absl::StrCat("header field with tag ", static_cast<int>(tag),
                     " has unexpected framing"));
  }
  uint64_t v = 0;
  for (size_t i = 1; i < chunk.size(); ++i) v = v << 8 | chunk[i];
  return v;
}

}  // namespace

absl::StatusOr<he::Ciphertext> EncryptField(const he::Curve& curve, FieldTag tag,
                                            uint64_t value, const he::FlowKey& fk,
                                            const he::Point& pk) {
  ByteWriter w;
  w.PutU8(static_cast<uint8_t>(tag));
  if (FieldWidth(tag) == 8) {
    w.PutU64(value);
  } else {
    w.PutU32(static_cast<uint32_t>(value));
  }
  ASSIGN_OR_RETURN(he::Point m, curve.EncodeChunk(w.bytes()));
  return he::EncryptDet(curve, pk, m, fk);
}

absl::StatusOr<ScopeHeader> EncryptHeader(const he::Curve& curve,
                                          const CopeHeader& h,
                                          const he::FlowKey& fk,
                                          const he::Point& pk_dest) {
  auto enc = [&](FieldTag tag, uint64_t v) {
    return EncryptField(curve, tag, v, fk, pk_dest);
  };
  ScopeHeader out;
  for (const CodingEntry& e : h.coding) {
    EncCodingEntry c;
    ASSIGN_OR_RETURN(c.pkt_id, enc(FieldTag::kPktId, e.pkt_id));
    ASSIGN_OR_RETURN(c.next_hop, enc(FieldTag::kNextHop, e.next_hop));
    out.coding.push_back(std::move(c));
  }
  for (const ReceptionEntry& e : h.reception) {
    EncReceptionEntry c;
    ASSIGN_OR_RETURN(c.src_ip, enc(FieldTag::kSrcIp, e.src_ip));
    ASSIGN_OR_RETURN(c.last_pkt, enc(FieldTag::kLastPkt, e.last_pkt));
    ASSIGN_OR_RETURN(c.bitmap, enc(FieldTag::kBitmap, e.bitmap));
    out.reception.push_back(std::move(c));
  }
  for (const AckEntry& e : h.acks) {
    EncAckEntry c;
    ASSIGN_OR_RETURN(c.neighbor, enc(FieldTag::kNeighbor, e.neighbor));
    ASSIGN_OR_RETURN(c.last_ack, enc(FieldTag::kLastAck, e.last_ack));
    ASSIGN_OR_RETURN(c.ack_map, enc(FieldTag::kAckMap, e.ack_map));
    out.acks.push_back(std::move(c));
  }
  return out;
}

absl::StatusOr<CopeHeader> DecryptHeader(const he::Curve& curve,
                                         const ScopeHeader& h,
                                         const he::KeyPair& kp) {
  auto dec = [&](FieldTag tag, const he::Ciphertext& c) {
    return DecryptField(curve, tag, c, kp);
  };
  CopeHeader out;
  for (const EncCodingEntry& e : h.coding) {
    CodingEntry c;
    ASSIGN_OR_RETURN(uint64_t id, dec(FieldTag::kPktId, e.pkt_id));
    ASSIGN_OR_RETURN(uint64_t hop, dec(FieldTag::kNextHop, e.next_hop));
    c.pkt_id = static_cast<PacketId>(id);
    c.next_hop = static_cast<NodeId>(hop);
    out.coding.push_back(c);
  }
  for (const EncReceptionEntry& e : h.reception) {
    ReceptionEntry c;
    ASSIGN_OR_RETURN(uint64_t src, dec(FieldTag::kSrcIp, e.src_ip));
    ASSIGN_OR_RETURN(uint64_t last, dec(FieldTag::kLastPkt, e.last_pkt));
    ASSIGN_OR_RETURN(c.bitmap, dec(FieldTag::kBitmap, e.bitmap));
    c.src_ip = static_cast<NodeId>(src);
    c.last_pkt = static_cast<PacketId>(last);
    out.reception.push_back(c);
  }
  for (const EncAckEntry& e : h.acks) {
    AckEntry c;
    ASSIGN_OR_RETURN(uint64_t nb, dec(FieldTag::kNeighbor, e.neighbor));
    ASSIGN_OR_RETURN(uint64_t last, dec(FieldTag::kLastAck, e.last_ack));
    ASSIGN_OR_RETURN(c.ack_map, dec(FieldTag::kAckMap, e.ack_map));
    c.neighbor = static_cast<NodeId>(nb);
    c.last_ack = static_cast<PacketId>(last);
    out.acks.push_back(c);
  }
  return out;
}

}  // namespace scope::packet
