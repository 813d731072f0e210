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

#include "scope/packet/packet.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "scope/common/status_macros.h"

namespace scope::packet {
namespace {

void PutId(uint8_t* out, NodeId id) {
  out[0] = static_cast<uint8_t>(id >> 24);
  out[1] = static_cast<uint8_t>(id >> 16);
  out[2] = static_cast<uint8_t>(id >> 8);
  out[3] = static_cast<uint8_t>(id);
}

absl::Status CheckCount(size_t n, std::string_view section) {
  if (n > 255) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(section), ": ", n, " entries exceed the one-byte count"));
  }
  return absl::OkStatus();
}

absl::Status CheckFrame(const MacHeader& mac, FrameType want) {
  if (MacFrameType(mac) != want) {
    return absl::InvalidArgumentError("mac header: frame type does not match packet kind");
  }
  return absl::OkStatus();
}

template <size_t N>
absl::StatusOr<std::array<uint8_t, N>> GetStub(ByteReader& r, std::string_view section) {
  r.set_context(section);
  ASSIGN_OR_RETURN(ByteSpan b, r.GetBytes(N));
  std::array<uint8_t, N> out;
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

absl::Status PutCopeHeader(ByteWriter& w, const CopeHeader& h) {
  RETURN_IF_ERROR(CheckCount(h.coding.size(), "coding report"));
  RETURN_IF_ERROR(CheckCount(h.reception.size(), "reception report"));
  RETURN_IF_ERROR(CheckCount(h.acks.size(), "ack report"));
  w.PutU8(static_cast<uint8_t>(h.coding.size()));
  for (const auto& e : h.coding) {
    w.PutU32(e.pkt_id);
    w.PutU32(e.next_hop);
  }
  w.PutU8(static_cast<uint8_t>(h.reception.size()));
  for (const auto& e : h.reception) {
    w.PutU32(e.src_ip);
    w.PutU32(e.last_pkt);
    w.PutU64(e.bitmap);
  }
  w.PutU8(static_cast<uint8_t>(h.acks.size()));
  for (const auto& e : h.acks) {
    w.PutU32(e.neighbor);
    w.PutU32(e.last_ack);
    w.PutU64(e.ack_map);
  }
  return absl::OkStatus();
}

absl::StatusOr<CopeHeader> GetCopeHeader(ByteReader& r) {
  CopeHeader h;
  r.set_context("cope header: coding report");
  ASSIGN_OR_RETURN(uint8_t n, r.GetU8());
  for (int i = 0; i < n; ++i) {
    CodingEntry e;
    ASSIGN_OR_RETURN(e.pkt_id, r.GetU32());
    ASSIGN_OR_RETURN(e.next_hop, r.GetU32());
    h.coding.push_back(e);
  }
  r.set_context("cope header: reception report");
  ASSIGN_OR_RETURN(n, r.GetU8());
  for (int i = 0; i < n; ++i) {
    ReceptionEntry e;
    ASSIGN_OR_RETURN(e.src_ip, r.GetU32());
    ASSIGN_OR_RETURN(e.last_pkt, r.GetU32());
    ASSIGN_OR_RETURN(e.bitmap, r.GetU64());
    h.reception.push_back(e);
  }
  r.set_context("cope header: ack report");
  ASSIGN_OR_RETURN(n, r.GetU8());
  for (int i = 0; i < n; ++i) {
    AckEntry e;
    ASSIGN_OR_RETURN(e.neighbor, r.GetU32());
    ASSIGN_OR_RETURN(e.last_ack, r.GetU32());
    ASSIGN_OR_RETURN(e.ack_map, r.GetU64());
    h.acks.push_back(e);
  }
  return h;
}

void PutCt(ByteWriter& w, const he::Ciphertext& c) {
  w.PutBytes(he::SerializeCiphertext(c));
}

absl::Status PutScopeHeader(ByteWriter& w, const ScopeHeader& h) {
  RETURN_IF_ERROR(CheckCount(h.coding.size(), "coding report"));
  RETURN_IF_ERROR(CheckCount(h.reception.size(), "reception report"));
  RETURN_IF_ERROR(CheckCount(h.acks.size(), "ack report"));
  w.PutU8(static_cast<uint8_t>(h.coding.size()));
  for (const auto& e : h.coding) {
    PutCt(w, e.pkt_id);
    PutCt(w, e.next_hop);
  }
  w.PutU8(static_cast<uint8_t>(h.reception.size()));
  for (const auto& e : h.reception) {
    PutCt(w, e.src_ip);
    PutCt(w, e.last_pkt);
    PutCt(w, e.bitmap);
  }
  w.PutU8(static_cast<uint8_t>(h.acks.size()));
  for (const auto& e : h.acks) {
    PutCt(w, e.neighbor);
    PutCt(w, e.last_ack);
    PutCt(w, e.ack_map);
  }
  return absl::OkStatus();
}

absl::StatusOr<ScopeHeader> GetScopeHeader(ByteReader& r, const he::Curve& curve) {
  auto ct = [&]() { return he::ParseCiphertext(curve, r); };
  ScopeHeader h;
  r.set_context("scope header: coding report");
  ASSIGN_OR_RETURN(uint8_t n, r.GetU8());
  for (int i = 0; i < n; ++i) {
    EncCodingEntry e;
    ASSIGN_OR_RETURN(e.pkt_id, ct());
    ASSIGN_OR_RETURN(e.next_hop, ct());
    h.coding.push_back(std::move(e));
  }
  r.set_context("scope header: reception report");
  ASSIGN_OR_RETURN(n, r.GetU8());
  for (int i = 0; i < n; ++i) {
    EncReceptionEntry e;
    ASSIGN_OR_RETURN(e.src_ip, ct());
    ASSIGN_OR_RETURN(e.last_pkt, ct());
    ASSIGN_OR_RETURN(e.bitmap, ct());
    h.reception.push_back(std::move(e));
  }
  r.set_context("scope header: ack report");
  ASSIGN_OR_RETURN(n, r.GetU8());
  for (int i = 0; i < n; ++i) {
    EncAckEntry e;
    ASSIGN_OR_RETURN(e.neighbor, ct());
    ASSIGN_OR_RETURN(e.last_ack, ct());
    ASSIGN_OR_RETURN(e.ack_map, ct());
    h.acks.push_back(std::move(e));
  }
  return h;
}

absl::Status PutChunks(ByteWriter& w, const std::vector<he::Ciphertext>& chunks) {
  RETURN_IF_ERROR(CheckCount(chunks.size(), "payload"));
  w.PutU8(static_cast<uint8_t>(chunks.size()));
  for (const auto& c : chunks) PutCt(w, c);
  return absl::OkStatus();
}

absl::StatusOr<std::vector<he::Ciphertext>> GetChunks(ByteReader& r,
                                                      const he::Curve& curve) {
  r.set_context("payload");
  ASSIGN_OR_RETURN(uint8_t n, r.GetU8());
  std::vector<he::Ciphertext> out;
  for (int i = 0; i < n; ++i) {
    ASSIGN_OR_RETURN(he::Ciphertext c, he::ParseCiphertext(curve, r));
    out.push_back(std::move(c));
  }
  return out;
}

void PutSigs(ByteWriter& w, const auth::PrimeCurve& sc,
             const std::vector<auth::Signature>& sigs) {
  for (const auto& s : sigs) w.PutBytes(auth::SerializeSignature(sc, s));
}

absl::StatusOr<std::vector<auth::Signature>> GetSigs(ByteReader& r,
                                                     const auth::PrimeCurve& sc,
                                                     size_t n) {
  std::vector<auth::Signature> out;
  for (size_t i = 0; i < n; ++i) {
    ASSIGN_OR_RETURN(auth::Signature s, auth::ParseSignature(sc, r));
    out.push_back(std::move(s));
  }
  return out;
}

absl::Status ExpectEnd(const ByteReader& r) {
  if (!r.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("packet: ", r.remaining(), " trailing bytes after payload"));
  }
  return absl::OkStatus();
}

}  // namespace

MacHeader MakeMacHeader(NodeId src, NodeId dst, FrameType type) {
  MacHeader mac{};
  PutId(&mac[2], dst);
  PutId(&mac[8], src);
  mac[12] = static_cast<uint8_t>(static_cast<uint16_t>(type) >> 8);
  mac[13] = static_cast<uint8_t>(static_cast<uint16_t>(type));
  return mac;
}

FrameType MacFrameType(const MacHeader& mac) {
  return static_cast<FrameType>(static_cast<uint16_t>(mac[12] << 8 | mac[13]));
}

absl::StatusOr<RoutingHeader> MakeRoutingHeader(std::span<const uint16_t> flows) {
  if (flows.size() > kMaxRoutedComponents) {
    return absl::InvalidArgumentError("routing header: more than four components");
  }
  RoutingHeader r;
  r.fill(0xff);
  for (size_t i = 0; i < flows.size(); ++i) {
    if (flows[i] == 0xffff) return absl::InvalidArgumentError("routing header: reserved flow id");
    r[2 * i] = static_cast<uint8_t>(flows[i] >> 8);
    r[2 * i + 1] = static_cast<uint8_t>(flows[i]);
  }
  return r;
}

std::vector<uint16_t> RoutingFlows(const RoutingHeader& routing) {
  std::vector<uint16_t> out;
  for (size_t i = 0; i < kMaxRoutedComponents; ++i) {
    uint16_t f = static_cast<uint16_t>(routing[2 * i] << 8 | routing[2 * i + 1]);
    if (f == 0xffff) break;
    out.push_back(f);
  }
  return out;
}

IpHeader MakeIpHeader(NodeId src, NodeId dst) {
  IpHeader ip{};
  ip[0] = 0x45;
  ip[3] = kIpHeaderSize;
  ip[8] = 64;  // ttl
  PutId(&ip[12], src);
  PutId(&ip[16], dst);
  return ip;
}

absl::StatusOr<Bytes> Serialize(const CopePacket& p) {
  RETURN_IF_ERROR(CheckFrame(p.mac, FrameType::kCope));
  if (p.payload.size() > 0xffff) {
    return absl::InvalidArgumentError("payload: longer than 65535 bytes");
  }
  ByteWriter w;
  w.PutBytes(p.mac);
  RETURN_IF_ERROR(PutCopeHeader(w, p.header));
  w.PutBytes(p.routing);
  w.PutBytes(p.ip);
  w.PutU16(static_cast<uint16_t>(p.payload.size()));
  w.PutBytes(p.payload);
  return std::move(w).Take();
}

absl::StatusOr<Bytes> Serialize(const ScopePacket& p) {
  RETURN_IF_ERROR(CheckFrame(p.mac, FrameType::kScope));
  ByteWriter w;
  w.PutBytes(p.mac);
  RETURN_IF_ERROR(PutScopeHeader(w, p.header));
  w.PutBytes(p.routing);
  w.PutBytes(p.ip);
  RETURN_IF_ERROR(PutChunks(w, p.payload));
  return std::move(w).Take();
}

absl::StatusOr<Bytes> Serialize(const RobustPacket& p,
                                const auth::PrimeCurve& sig_curve) {
  RETURN_IF_ERROR(CheckFrame(p.mac, FrameType::kRobust));
  if (p.header_sig.sign_encode.size() != 2 * p.header.coding.size() ||
      p.header_sig.sign_report.size() != 3 * p.header.reception.size() ||
      p.header_sig.sign_ack.size() != 3 * p.header.acks.size()) {
    return absl::InvalidArgumentError(
        "header signature: list lengths do not match the header fields");
  }
  ByteWriter w;
  w.PutBytes(p.mac);
  RETURN_IF_ERROR(PutScopeHeader(w, p.header));
  w.PutBytes(p.routing);
  w.PutBytes(p.ip);
  PutSigs(w, sig_curve, p.header_sig.sign_encode);
  PutSigs(w, sig_curve, p.header_sig.sign_report);
  PutSigs(w, sig_curve, p.header_sig.sign_ack);
  RETURN_IF_ERROR(CheckCount(p.payload_sig.size(), "payload signature"));
  w.PutU8(static_cast<uint8_t>(p.payload_sig.size()));
  for (const auto& block : p.payload_sig) {
    RETURN_IF_ERROR(CheckCount(block.sigs.size(), "payload signature block"));
    w.PutU8(static_cast<uint8_t>(block.sigs.size()));
    PutSigs(w, sig_curve, block.sigs);
  }
  RETURN_IF_ERROR(PutChunks(w, p.payload));
  return std::move(w).Take();
}

absl::StatusOr<CopePacket> DeserializeCope(ByteSpan bytes) {
  ByteReader r(bytes, "mac header");
  CopePacket p;
  ASSIGN_OR_RETURN(p.mac, GetStub<kMacHeaderSize>(r, "mac header"));
  RETURN_IF_ERROR(CheckFrame(p.mac, FrameType::kCope));
  ASSIGN_OR_RETURN(p.header, GetCopeHeader(r));
  ASSIGN_OR_RETURN(p.routing, GetStub<kRoutingHeaderSize>(r, "routing header"));
  ASSIGN_OR_RETURN(p.ip, GetStub<kIpHeaderSize>(r, "ip header"));
  r.set_context("payload");
  ASSIGN_OR_RETURN(uint16_t len, r.GetU16());
  ASSIGN_OR_RETURN(ByteSpan body, r.GetBytes(len));
  p.payload.assign(body.begin(), body.end());
  RETURN_IF_ERROR(ExpectEnd(r));
  return p;
}

absl::StatusOr<ScopePacket> DeserializeScope(ByteSpan bytes, const he::Curve& curve) {
  ByteReader r(bytes, "mac header");
  ScopePacket p;
  ASSIGN_OR_RETURN(p.mac, GetStub<kMacHeaderSize>(r, "mac header"));
  RETURN_IF_ERROR(CheckFrame(p.mac, FrameType::kScope));
  ASSIGN_OR_RETURN(p.header, GetScopeHeader(r, curve));
  ASSIGN_OR_RETURN(p.routing, GetStub<kRoutingHeaderSize>(r, "routing header"));
  ASSIGN_OR_RETURN(p.ip, GetStub<kIpHeaderSize>(r, "ip header"));
  ASSIGN_OR_RETURN(p.payload, GetChunks(r, curve));
  RETURN_IF_ERROR(ExpectEnd(r));
  return p;
}

absl::StatusOr<RobustPacket> DeserializeRobust(ByteSpan bytes, const he::Curve& curve,
                                               const auth::PrimeCurve& sig_curve) {
  ByteReader r(bytes, "mac header");
  RobustPacket p;
  ASSIGN_OR_RETURN(p.mac, GetStub<kMacHeaderSize>(r, "mac header"));
  RETURN_IF_ERROR(CheckFrame(p.mac, FrameType::kRobust));
  ASSIGN_OR_RETURN(p.header, GetScopeHeader(r, curve));
  ASSIGN_OR_RETURN(p.routing, GetStub<kRoutingHeaderSize>(r, "routing header"));
  ASSIGN_OR_RETURN(p.ip, GetStub<kIpHeaderSize>(r, "ip header"));
  r.set_context("header signature");
  ASSIGN_OR_RETURN(p.header_sig.sign_encode,
                   GetSigs(r, sig_curve, 2 * p.header.coding.size()));
  ASSIGN_OR_RETURN(p.header_sig.sign_report,
                   GetSigs(r, sig_curve, 3 * p.header.reception.size()));
  ASSIGN_OR_RETURN(p.header_sig.sign_ack,
                   GetSigs(r, sig_curve, 3 * p.header.acks.size()));
  r.set_context("payload signature");
  ASSIGN_OR_RETURN(uint8_t blocks, r.GetU8());
  for (int b = 0; b < blocks; ++b) {
    ASSIGN_OR_RETURN(uint8_t n, r.GetU8());
    auth::SignPayload block;
    ASSIGN_OR_RETURN(block.sigs, GetSigs(r, sig_curve, n));
    p.payload_sig.push_back(std::move(block));
  }
  ASSIGN_OR_RETURN(p.payload, GetChunks(r, curve));
  RETURN_IF_ERROR(ExpectEnd(r));
  return p;
}

absl::StatusOr<AnyPacket> Deserialize(ByteSpan bytes, const WireContext& ctx) {
  if (bytes.size() < kMacHeaderSize) {
    return absl::OutOfRangeError("mac header: truncated");
  }
  MacHeader mac;
  std::copy(bytes.begin(), bytes.begin() + kMacHeaderSize, mac.begin());
  switch (MacFrameType(mac)) {
    case FrameType::kCope:
      return DeserializeCope(bytes);
    case FrameType::kScope:
      if (ctx.curve == nullptr) return absl::FailedPreconditionError("no curve");
      return DeserializeScope(bytes, *ctx.curve);
    case FrameType::kRobust:
      if (ctx.curve == nullptr || ctx.sig_curve == nullptr) {
        return absl::FailedPreconditionError("no curve");
      }
      return DeserializeRobust(bytes, *ctx.curve, *ctx.sig_curve);
  }
  return absl::InvalidArgumentError("mac header: unknown frame type");
}

}  // namespace scope::packet
