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

#ifndef SCOPE_PACKET_PACKET_H_
#define SCOPE_PACKET_PACKET_H_

#include <array>
#include <span>
#include <cstdint>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "scope/auth/ecdsa.h"
#include "scope/auth/signatures.h"
#include "scope/common/bytes.h"
#include "scope/common/ids.h"
#include "scope/he/elgamal.h"
#include "scope/packet/header.h"

namespace scope::packet {

inline constexpr size_t kMacHeaderSize = 14;
inline constexpr size_t kRoutingHeaderSize = 8;
inline constexpr size_t kIpHeaderSize = 20;

// Carried in the last two bytes of the MAC stub.
enum class FrameType : uint16_t {
  kCope = 0x5C01,
  kScope = 0x5C02,
  kRobust = 0x5C03,
};

using MacHeader = std::array<uint8_t, kMacHeaderSize>;
using RoutingHeader = std::array<uint8_t, kRoutingHeaderSize>;
using IpHeader = std::array<uint8_t, kIpHeaderSize>;

// [dst: 6][src: 6][frame type: 2], node ids right-aligned in the addresses.
MacHeader MakeMacHeader(NodeId src, NodeId dst, FrameType type);
FrameType MacFrameType(const MacHeader& mac);
// Flow id of each payload component in coding-report order, u16 each, up
// to four; unused slots hold 0xffff.
inline constexpr size_t kMaxRoutedComponents = 4;
absl::StatusOr<RoutingHeader> MakeRoutingHeader(std::span<const uint16_t> flows);
std::vector<uint16_t> RoutingFlows(const RoutingHeader& routing);
// Opaque IPv4-sized stub holding source and destination node ids at the
// usual address offsets.
IpHeader MakeIpHeader(NodeId src, NodeId dst);

struct CopePacket {
  MacHeader mac{};
  CopeHeader header;
  RoutingHeader routing{};
  IpHeader ip{};
  Bytes payload;  // native bytes, or the XOR of the coded components
  friend bool operator==(const CopePacket&, const CopePacket&) = default;
};

struct ScopePacket {
  MacHeader mac{};
  ScopeHeader header;
  RoutingHeader routing{};
  IpHeader ip{};
  std::vector<he::Ciphertext> payload;
  friend bool operator==(const ScopePacket&, const ScopePacket&) = default;
};

// Adds the header signature and one payload signature block per coding-report
// component, between the IP stub and the payload.
struct RobustPacket {
  MacHeader mac{};
  ScopeHeader header;
  RoutingHeader routing{};
  IpHeader ip{};
  auth::SignScope header_sig;
  std::vector<auth::SignPayload> payload_sig;
  std::vector<he::Ciphertext> payload;
  friend bool operator==(const RobustPacket&, const RobustPacket&) = default;
};

using AnyPacket = std::variant<CopePacket, ScopePacket, RobustPacket>;

// Curves needed to parse points and signatures.
struct WireContext {
  const he::Curve* curve = nullptr;
  const auth::PrimeCurve* sig_curve = nullptr;
};

// Layout, big-endian throughout:
//   MAC stub (14) | header | routing stub (8) | IP stub (20) | [signatures] | payload
// header   = u8 n, n x coding entry | u8 n, n x reception | u8 n, n x ack
// cope     : fields in the clear (ids 4 bytes, bitmaps 8); payload u16 len, bytes
// scope    : each field a ciphertext; payload u8 n, n x ciphertext
// robust   : header signatures (2 per coding, 3 per reception, 3 per ack
//            entry) then u8 blocks, each u8 n, n x signature
absl::StatusOr<Bytes> Serialize(const CopePacket& p);
absl::StatusOr<Bytes> Serialize(const ScopePacket& p);
absl::StatusOr<Bytes> Serialize(const RobustPacket& p, const auth::PrimeCurve& sig_curve);

absl::StatusOr<CopePacket> DeserializeCope(ByteSpan bytes);
absl::StatusOr<ScopePacket> DeserializeScope(ByteSpan bytes, const he::Curve& curve);
absl::StatusOr<RobustPacket> DeserializeRobust(ByteSpan bytes, const he::Curve& curve,
                                               const auth::PrimeCurve& sig_curve);
// Dispatches on the MAC frame type.
absl::StatusOr<AnyPacket> Deserialize(ByteSpan bytes, const WireContext& ctx);

// Serialized size of a packet whose sections are all empty.
inline constexpr size_t kMinScopePacketSize =
    kMacHeaderSize + 3 + kRoutingHeaderSize + kIpHeaderSize + 1;
inline constexpr size_t kMinRobustPacketSize = kMinScopePacketSize + 1;
inline constexpr size_t kMinCopePacketSize =
    kMacHeaderSize + 3 + kRoutingHeaderSize + kIpHeaderSize + 2;

}  // namespace scope::packet

#endif  // SCOPE_PACKET_PACKET_H_
