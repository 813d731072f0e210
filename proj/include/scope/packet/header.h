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

#ifndef SCOPE_PACKET_HEADER_H_
#define SCOPE_PACKET_HEADER_H_

#include <cstdint>
#include <vector>

#include "scope/common/ids.h"
#include "scope/he/elgamal.h"

namespace scope::packet {

struct CodingEntry {
  PacketId pkt_id = 0;
  NodeId next_hop = 0;
  friend bool operator==(const CodingEntry&, const CodingEntry&) = default;
};

struct ReceptionEntry {
  NodeId src_ip = 0;
  PacketId last_pkt = 0;
  uint64_t bitmap = 0;
  friend bool operator==(const ReceptionEntry&, const ReceptionEntry&) = default;
};

struct AckEntry {
  NodeId neighbor = 0;
  PacketId last_ack = 0;
  uint64_t ack_map = 0;
  friend bool operator==(const AckEntry&, const AckEntry&) = default;
};

// Plaintext header: coding report, reception reports, ACK reports.
struct CopeHeader {
  std::vector<CodingEntry> coding;
  std::vector<ReceptionEntry> reception;
  std::vector<AckEntry> acks;
  friend bool operator==(const CopeHeader&, const CopeHeader&) = default;
};

struct EncCodingEntry {
  he::Ciphertext pkt_id;
  he::Ciphertext next_hop;
  friend bool operator==(const EncCodingEntry&, const EncCodingEntry&) = default;
};

struct EncReceptionEntry {
  he::Ciphertext src_ip;
  he::Ciphertext last_pkt;
  he::Ciphertext bitmap;
  friend bool operator==(const EncReceptionEntry&, const EncReceptionEntry&) = default;
};

struct EncAckEntry {
  he::Ciphertext neighbor;
  he::Ciphertext last_ack;
  he::Ciphertext ack_map;
  friend bool operator==(const EncAckEntry&, const EncAckEntry&) = default;
};

// Same three sections with every field value encrypted; the section counts
// stay in the clear.
struct ScopeHeader {
  std::vector<EncCodingEntry> coding;
  std::vector<EncReceptionEntry> reception;
  std::vector<EncAckEntry> acks;
  friend bool operator==(const ScopeHeader&, const ScopeHeader&) = default;
};

// One-byte tag prefixed to each field value before it is mapped to a point,
// so equal numbers in different fields encrypt differently.
enum class FieldTag : uint8_t {
  kPktId = 1,
  kNextHop = 2,
  kSrcIp = 3,
  kLastPkt = 4,
  kBitmap = 5,
  kNeighbor = 6,
  kLastAck = 7,
  kAckMap = 8,
};

// Encrypted fields of each section, flattened in header order.
inline std::vector<const he::Ciphertext*> EncodeFields(const ScopeHeader& h) {
  std::vector<const he::Ciphertext*> out;
  for (const auto& e : h.coding) {
    out.push_back(&e.pkt_id);
    out.push_back(&e.next_hop);
  }
  return out;
}

inline std::vector<const he::Ciphertext*> ReportFields(const ScopeHeader& h) {
  std::vector<const he::Ciphertext*> out;
  for (const auto& e : h.reception) {
    out.push_back(&e.src_ip);
    out.push_back(&e.last_pkt);
    out.push_back(&e.bitmap);
  }
  return out;
}

inline std::vector<const he::Ciphertext*> AckFields(const ScopeHeader& h) {
  std::vector<const he::Ciphertext*> out;
  for (const auto& e : h.acks) {
    out.push_back(&e.neighbor);
    out.push_back(&e.last_ack);
    out.push_back(&e.ack_map);
  }
  return out;
}

}  // namespace scope::packet

#endif  // SCOPE_PACKET_HEADER_H_
