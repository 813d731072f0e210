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

#include "scope/sim/simulator.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "scope/auth/ecdsa.h"
#include "scope/auth/signatures.h"
#include "scope/coding/condition.h"
#include "scope/coding/payload.h"
#include "scope/coding/secure_condition.h"
#include "scope/common/hash.h"
#include "scope/common/rng.h"
#include "scope/common/status_macros.h"
#include "scope/group/curve.h"
#include "scope/he/elgamal.h"
#include "scope/packet/header_crypto.h"
#include "scope/packet/packet.h"

namespace scope::sim {
namespace {

using Clock = std::chrono::steady_clock;
using he::Ciphertext;
using packet::FieldTag;

constexpr NodeId kBroadcast = 0xffffffff;
constexpr size_t kMaxReportEntries = 2;

class Stopwatch {
 public:
  explicit Stopwatch(double* acc) : acc_(acc), start_(Clock::now()) {}
  ~Stopwatch() {
    *acc_ += std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  double* acc_;
  Clock::time_point start_;
};

Bytes Frame(ByteSpan payload) {
  ByteWriter w;
  w.PutU16(static_cast<uint16_t>(payload.size()));
  w.PutBytes(payload);
  return std::move(w).Take();
}

absl::StatusOr<Bytes> Unframe(ByteSpan framed) {
  ByteReader r(framed, "cope payload");
  ASSIGN_OR_RETURN(uint16_t len, r.GetU16());
  ASSIGN_OR_RETURN(ByteSpan body, r.GetBytes(len));
  return Bytes(body.begin(), body.end());
}

void XorInto(Bytes& acc, ByteSpan b) {
  if (acc.size() < b.size()) acc.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) acc[i] ^= b[i];
}

Bytes U32Bytes(uint32_t v) {
  ByteWriter w;
  w.PutU32(v);
  return std::move(w).Take();
}

// One native packet as it travels, possibly inside coded packets.
struct Component {
  int flow = 0;
  Bytes key;  // wire image of the pkt_id field
  PacketId pkt_id = 0;            // cope
  Ciphertext enc_pkt_id;          // scope, robust
  Bytes cope_payload;             // framed
  std::vector<Ciphertext> chunks;
  std::optional<auth::SignPayload> sig;
};

struct Queued {
  Component c;
  NodeId from = 0;
  int arrival = 0;
};

struct NodeState {
  NodeId id = 0;
  he::KeyPair kp;
  std::optional<auth::SigKeyPair> sk;
  std::vector<Queued> queue;
  std::map<Bytes, Component> pool;
  std::map<NodeId, uint32_t> heard;  // packets overheard per neighbor
  std::map<NodeId, uint32_t> acked;  // packets received per neighbor
  std::vector<NodeId> pending_reception;
  std::vector<NodeId> pending_acks;
};

// Wire packet reduced to what the protocol logic needs.
struct View {
  std::vector<Bytes> keys;
  std::vector<Bytes> next_hops;  // wire image of each next_hop field
  std::vector<PacketId> pkt_ids;  // cope
  std::vector<Ciphertext> enc_pkt_ids;
  std::vector<uint16_t> flows;
  NodeId mac_src = 0;
  Bytes cope_payload;
  std::vector<Ciphertext> chunks;
  std::vector<auth::SignPayload> payload_sig;
  packet::ScopeHeader header;
  auth::SignScope header_sig;
};

struct Observation {
  std::set<Bytes> keys;
  Bytes cope_payload;
  std::vector<Ciphertext> chunks;
};

class Engine {
 public:
  Engine(const Scenario& scenario, const std::map<int, Bytes>& payloads,
         const RunConfig& cfg)
      : scenario_(scenario), payloads_(payloads), cfg_(cfg), rng_(cfg.seed) {}

  absl::StatusOr<RunResult> Execute();

 private:
  bool Crypto() const { return cfg_.mode != Mode::kCope; }
  const FlowSpec& Flow(int id) const { return *flows_.at(id); }
  std::optional<NodeId> NextHop(int flow, NodeId at) const;

  absl::Status Setup();
  absl::Status Inject();
  absl::StatusOr<Ciphertext> Field(FieldTag tag, uint64_t value);
  const he::FlowKey& PairKey(NodeId a, NodeId b) { return pair_keys_.at(std::minmax(a, b)); }

  absl::StatusOr<bool> Condition(NodeId node, const Queued& a, const Queued& b);
  absl::StatusOr<std::optional<TransmissionRecord>> Transmit(NodeState& node);
  absl::Status Tamper(NodeState& node, Component& c);
  absl::StatusOr<Bytes> Emit(NodeState& node, const std::vector<Component>& comps);
  std::optional<View> Parse(const Bytes& bytes);
  absl::Status Receive(NodeState& node, const TransmissionRecord& rec);
  absl::Status Deliver(NodeState& node, const Component& c);
  void Observe(const View& v);

  const Scenario& scenario_;
  const std::map<int, Bytes>& payloads_;
  RunConfig cfg_;
  Rng rng_;
  const he::Curve* curve_ = nullptr;
  const auth::PrimeCurve* sig_curve_ = nullptr;
  std::map<int, const FlowSpec*> flows_;
  std::map<NodeId, NodeState> nodes_;
  std::map<std::pair<NodeId, NodeId>, he::FlowKey> pair_keys_;
  he::KeyPair header_kp_;
  he::FlowKey header_fk_;
  std::map<std::pair<FieldTag, uint64_t>, Ciphertext> field_cache_;
  uint64_t session_ = 0;
  int round_ = 0;
  RunResult result_;

  bool tamper_done_ = false;
  std::map<Bytes, size_t> tampered_;  // component key -> tamper attempt
  std::vector<Observation> observations_;
};

std::optional<NodeId> Engine::NextHop(int flow, NodeId at) const {
  const auto& path = Flow(flow).path;
  auto it = std::find(path.begin(), path.end(), at);
  if (it == path.end() || it + 1 == path.end()) return std::nullopt;
  return *(it + 1);
}

absl::Status Engine::Setup() {
  for (const auto& f : scenario_.flows) {
    if (f.flow_id < 0 || f.flow_id >= 0xffff) {
      result_.undeliverable[f.flow_id] = "flow id out of range";
      continue;
    }
    if (auto st = coding::ValidateFlow(scenario_.topology, f); !st.ok()) {
      result_.undeliverable[f.flow_id] = absl::StrCat("no route: ", st.message());
      continue;
    }
    auto p = payloads_.find(f.flow_id);
    if (p == payloads_.end() || p->second.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("flow ", f.flow_id, " has no payload"));
    }
    flows_[f.flow_id] = &f;
  }
  if (cfg_.adversary && !scenario_.topology.HasNode(cfg_.adversary->node)) {
    return absl::InvalidArgumentError(
        absl::StrCat("adversary node ", cfg_.adversary->node, " does not exist"));
  }
  if (Crypto()) {
    ASSIGN_OR_RETURN(curve_, he::Curve::ForKeyBits(cfg_.ecc_bits));
    if (cfg_.mode == Mode::kRobust) {
      ASSIGN_OR_RETURN(sig_curve_, auth::PrimeCurve::ForBits(cfg_.ecdsa_bits));
    }
  }
  Rng keys = rng_.Fork("keys");
  for (NodeId id : scenario_.topology.Nodes()) {
    NodeState n;
    n.id = id;
    if (Crypto()) n.kp = he::Keygen(*curve_, keys);
    if (sig_curve_ != nullptr) n.sk = auth::SigKeygen(*sig_curve_, keys);
    nodes_.emplace(id, std::move(n));
  }
  if (Crypto()) {
    header_kp_ = he::Keygen(*curve_, keys);
    header_fk_ = he::FlowKey::Random(keys);
    auto ids = scenario_.topology.Nodes();
    for (size_t a = 0; a < ids.size(); ++a) {
      for (size_t b = a; b < ids.size(); ++b) {
        pair_keys_[{ids[a], ids[b]}] = he::FlowKey::Random(keys);
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Ciphertext> Engine::Field(FieldTag tag, uint64_t value) {
  auto key = std::make_pair(tag, value);
  auto it = field_cache_.find(key);
  if (it != field_cache_.end()) return it->second;
  Stopwatch sw(&result_.timings.header_encrypt_ms);
  ASSIGN_OR_RETURN(Ciphertext c,
                   packet::EncryptField(*curve_, tag, value, header_fk_, header_kp_.pk));
  field_cache_.emplace(key, c);
  return c;
}

absl::Status Engine::Inject() {
  for (const auto& [id, flow] : flows_) {
    NodeState& src = nodes_.at(flow->source());
    const Bytes& payload = payloads_.at(id);
    Component c;
    c.flow = id;
    c.pkt_id = static_cast<PacketId>(id) << 16 | 1;
    if (!Crypto()) {
      c.key = U32Bytes(c.pkt_id);
      c.cope_payload = Frame(payload);
    } else {
      ASSIGN_OR_RETURN(c.enc_pkt_id, Field(FieldTag::kPktId, c.pkt_id));
      c.key = he::SerializeCiphertext(c.enc_pkt_id);
      const he::Point& pk = nodes_.at(flow->destination()).kp.pk;
      {
        Stopwatch sw(&result_.timings.payload_encrypt_ms);
        ASSIGN_OR_RETURN(c.chunks, coding::EncryptPayload(*curve_, pk, payload, rng_));
      }
      if (src.sk) {
        Stopwatch sw(&result_.timings.sign_ms);
        ASSIGN_OR_RETURN(c.sig, auth::SignChunks(*src.sk, c.chunks, rng_));
      }
    }
    src.queue.push_back({std::move(c), src.id, 0});
  }
  return absl::OkStatus();
}

absl::StatusOr<bool> Engine::Condition(NodeId node, const Queued& a, const Queued& b) {
  const auto& topo = scenario_.topology;
  ASSIGN_OR_RETURN(coding::HopSets ha, coding::ComputeHopSets(topo, Flow(a.c.flow), node));
  ASSIGN_OR_RETURN(coding::HopSets hb, coding::ComputeHopSets(topo, Flow(b.c.flow), node));
  Stopwatch sw(&result_.timings.condition_ms);
  ++result_.timings.condition_evaluations;
  if (!Crypto()) return coding::CodingCondition(ha, hb);
  coding::Party pa{a.from, &nodes_.at(a.from).kp, std::move(ha)};
  coding::Party pb{b.from, &nodes_.at(b.from).kp, std::move(hb)};
  coding::Transcript tr;
  ASSIGN_OR_RETURN(bool v, coding::SecureCodingCondition(*curve_, node, pa, pb,
                                                         PairKey(a.from, b.from),
                                                         session_++, &tr));
  for (auto& m : tr.messages) {
    for (auto& c : m.ciphertexts) {
      TransmissionRecord rec;
      rec.round = round_;
      rec.sender = m.from;
      rec.receivers = {m.to};
      rec.bytes = std::move(c);
      rec.control = true;
      result_.log.records.push_back(std::move(rec));
    }
  }
  return v;
}

absl::Status Engine::Tamper(NodeState& node, Component& c) {
  TamperAttempt t;
  t.round = round_;
  t.flow = c.flow;
  if (!Crypto()) {
    // Overwrite the start of the body, keeping the length framing.
    size_t end = std::min(c.cope_payload.size(), size_t{2 + 16});
    for (size_t i = 2; i < end; ++i) c.cope_payload[i] = static_cast<uint8_t>(rng_.NextU64());
  } else {
    t.chunk = std::min<size_t>(1, c.chunks.size() - 1);
    NodeId dest = Flow(c.flow).destination();
    Bytes forged = rng_.NextBytes(curve_->ChunkCapacity());
    ASSIGN_OR_RETURN(he::Point m, curve_->EncodeChunk(forged));
    ASSIGN_OR_RETURN(c.chunks[t.chunk],
                     he::EncryptRandom(*curve_, nodes_.at(dest).kp.pk, m, rng_));
  }
  tampered_[c.key] = result_.adversary->tampers.size();
  result_.adversary->tampers.push_back(t);
  return absl::OkStatus();
}

absl::StatusOr<Bytes> Engine::Emit(NodeState& node, const std::vector<Component>& comps) {
  packet::CopeHeader plain;
  std::vector<uint16_t> flows;
  for (const auto& c : comps) {
    flows.push_back(static_cast<uint16_t>(c.flow));
    plain.coding.push_back({c.pkt_id, *NextHop(c.flow, node.id)});
  }
  auto take = [](std::vector<NodeId>& pending) {
    std::vector<NodeId> out;
    for (auto it = pending.rbegin(); it != pending.rend() && out.size() < kMaxReportEntries; ++it) {
      if (std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    }
    pending.clear();
    std::sort(out.begin(), out.end());
    return out;
  };
  auto bitmap = [](uint32_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; };
  for (NodeId n : take(node.pending_reception)) {
    plain.reception.push_back({n, node.heard[n], bitmap(node.heard[n])});
  }
  for (NodeId n : take(node.pending_acks)) {
    plain.acks.push_back({n, node.acked[n], bitmap(node.acked[n])});
  }
  const FlowSpec& first = Flow(comps.front().flow);
  NodeId mac_dst = comps.size() == 1 ? *NextHop(comps.front().flow, node.id) : kBroadcast;
  ASSIGN_OR_RETURN(packet::RoutingHeader routing, packet::MakeRoutingHeader(flows));
  packet::IpHeader ip = packet::MakeIpHeader(first.source(), first.destination());

  if (!Crypto()) {
    packet::CopePacket p;
    p.mac = packet::MakeMacHeader(node.id, mac_dst, packet::FrameType::kCope);
    p.header = plain;
    p.routing = routing;
    p.ip = ip;
    for (const auto& c : comps) XorInto(p.payload, c.cope_payload);
    return packet::Serialize(p);
  }

  packet::ScopeHeader h;
  for (size_t i = 0; i < comps.size(); ++i) {
    ASSIGN_OR_RETURN(Ciphertext nh, Field(FieldTag::kNextHop, plain.coding[i].next_hop));
    h.coding.push_back({comps[i].enc_pkt_id, nh});
  }
  for (const auto& e : plain.reception) {
    packet::EncReceptionEntry x;
    ASSIGN_OR_RETURN(x.src_ip, Field(FieldTag::kSrcIp, e.src_ip));
    ASSIGN_OR_RETURN(x.last_pkt, Field(FieldTag::kLastPkt, e.last_pkt));
    ASSIGN_OR_RETURN(x.bitmap, Field(FieldTag::kBitmap, e.bitmap));
    h.reception.push_back(std::move(x));
  }
  for (const auto& e : plain.acks) {
    packet::EncAckEntry x;
    ASSIGN_OR_RETURN(x.neighbor, Field(FieldTag::kNeighbor, e.neighbor));
    ASSIGN_OR_RETURN(x.last_ack, Field(FieldTag::kLastAck, e.last_ack));
    ASSIGN_OR_RETURN(x.ack_map, Field(FieldTag::kAckMap, e.ack_map));
    h.acks.push_back(std::move(x));
  }
  std::vector<Ciphertext> payload;
  if (comps.size() == 1) {
    payload = comps.front().chunks;
  } else {
    Stopwatch sw(&result_.timings.aggregate_ms);
    ++result_.timings.aggregations;
    std::vector<std::vector<Ciphertext>> lists;
    for (const auto& c : comps) lists.push_back(c.chunks);
    ASSIGN_OR_RETURN(payload, coding::CodePayload(lists));
  }
  if (cfg_.mode == Mode::kScope) {
    packet::ScopePacket p;
    p.mac = packet::MakeMacHeader(node.id, mac_dst, packet::FrameType::kScope);
    p.header = std::move(h);
    p.routing = routing;
    p.ip = ip;
    p.payload = std::move(payload);
    return packet::Serialize(p);
  }
  packet::RobustPacket p;
  p.mac = packet::MakeMacHeader(node.id, mac_dst, packet::FrameType::kRobust);
  {
    Stopwatch sw(&result_.timings.sign_ms);
    p.header_sig = auth::SignHeader(*node.sk, h, rng_);
  }
  p.header = std::move(h);
  p.routing = routing;
  p.ip = ip;
  for (const auto& c : comps) {
    if (!c.sig) return absl::InternalError("robust component without a payload signature");
    p.payload_sig.push_back(*c.sig);
  }
  p.payload = std::move(payload);
  return packet::Serialize(p, *sig_curve_);
}

absl::StatusOr<std::optional<TransmissionRecord>> Engine::Transmit(NodeState& node) {
  if (node.queue.empty()) return std::nullopt;
  std::stable_sort(node.queue.begin(), node.queue.end(), [](const Queued& a, const Queued& b) {
    return std::tie(a.arrival, a.c.flow) < std::tie(b.arrival, b.c.flow);
  });
  std::vector<size_t> picked = {0};
  bool malicious = cfg_.adversary && cfg_.adversary->node == node.id &&
                   cfg_.adversary->mode == AdversaryMode::kMalicious;
  bool tamper = malicious && !tamper_done_ && node.queue[0].from != node.id;
  if (tamper) {
    tamper_done_ = true;
    RETURN_IF_ERROR(Tamper(node, node.queue[0].c));
  } else if (cfg_.coding && node.queue[0].from != node.id) {
    std::vector<size_t> order;
    for (size_t k = 1; k < node.queue.size(); ++k) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return node.queue[a].c.flow < node.queue[b].c.flow;
    });
    for (size_t k : order) {
      const Queued& q = node.queue[k];
      if (q.from == node.id || q.c.flow == node.queue[0].c.flow) continue;
      ASSIGN_OR_RETURN(bool ok, Condition(node.id, node.queue[0], q));
      if (ok) {
        picked.push_back(k);
        break;
      }
    }
  }
  std::vector<Component> comps;
  for (size_t k : picked) comps.push_back(node.queue[k].c);
  std::sort(picked.rbegin(), picked.rend());
  for (size_t k : picked) node.queue.erase(node.queue.begin() + static_cast<long>(k));
  for (const auto& c : comps) node.pool[c.key] = c;

  TransmissionRecord rec;
  rec.round = round_;
  rec.sender = node.id;
  rec.coded = comps.size() > 1;
  ASSIGN_OR_RETURN(rec.bytes, Emit(node, comps));
  const auto& nb = scenario_.topology.Neighbors(node.id);
  rec.receivers.assign(nb.begin(), nb.end());
  return rec;
}

std::optional<View> Engine::Parse(const Bytes& bytes) {
  packet::WireContext ctx{curve_, sig_curve_};
  auto any = packet::Deserialize(bytes, ctx);
  if (!any.ok()) return std::nullopt;
  View v;
  auto mac_src = [](const packet::MacHeader& mac) {
    return static_cast<NodeId>(mac[8] << 24 | mac[9] << 16 | mac[10] << 8 | mac[11]);
  };
  auto fill_scope = [&](const packet::ScopeHeader& h) {
    for (const auto& e : h.coding) {
      v.keys.push_back(he::SerializeCiphertext(e.pkt_id));
      v.next_hops.push_back(he::SerializeCiphertext(e.next_hop));
      v.enc_pkt_ids.push_back(e.pkt_id);
    }
  };
  if (auto* p = std::get_if<packet::CopePacket>(&*any)) {
    if (cfg_.mode != Mode::kCope) return std::nullopt;
    for (const auto& e : p->header.coding) {
      v.keys.push_back(U32Bytes(e.pkt_id));
      v.next_hops.push_back(U32Bytes(e.next_hop));
      v.pkt_ids.push_back(e.pkt_id);
    }
    v.mac_src = mac_src(p->mac);
    v.flows = packet::RoutingFlows(p->routing);
    v.cope_payload = std::move(p->payload);
  } else if (auto* p = std::get_if<packet::ScopePacket>(&*any)) {
    if (cfg_.mode != Mode::kScope) return std::nullopt;
    fill_scope(p->header);
    v.mac_src = mac_src(p->mac);
    v.flows = packet::RoutingFlows(p->routing);
    v.chunks = std::move(p->payload);
    v.header = std::move(p->header);
  } else if (auto* p = std::get_if<packet::RobustPacket>(&*any)) {
    if (cfg_.mode != Mode::kRobust) return std::nullopt;
    fill_scope(p->header);
    v.mac_src = mac_src(p->mac);
    v.flows = packet::RoutingFlows(p->routing);
    v.chunks = std::move(p->payload);
    v.payload_sig = std::move(p->payload_sig);
    v.header = std::move(p->header);
    v.header_sig = std::move(p->header_sig);
    if (v.payload_sig.size() != v.keys.size()) return std::nullopt;
  }
  if (v.flows.size() != v.keys.size() || v.keys.empty()) return std::nullopt;
  for (uint16_t f : v.flows) {
    if (!flows_.count(f)) return std::nullopt;
  }
  return v;
}

void Engine::Observe(const View& v) {
  Observation obs{std::set<Bytes>(v.keys.begin(), v.keys.end()), v.cope_payload, v.chunks};
  for (const auto& old : observations_) {
    const Observation* big = &obs;
    const Observation* small = &old;
    if (big->keys.size() < small->keys.size()) std::swap(big, small);
    if (big->keys.size() != small->keys.size() + 1 ||
        !std::includes(big->keys.begin(), big->keys.end(), small->keys.begin(),
                       small->keys.end())) {
      continue;
    }
    InferenceAttempt a;
    a.round = round_;
    if (!Crypto()) {
      a.method = "xor-difference";
      Bytes diff = big->cope_payload;
      XorInto(diff, small->cope_payload);
      auto body = Unframe(diff);
      a.recovered = body.ok() ? *body : diff;
    } else {
      a.method = "homomorphic-difference";
      auto rest = coding::RemoveContributions(big->chunks, {small->chunks});
      if (!rest.ok()) continue;
      std::vector<Bytes> guess;
      for (const auto& c : *rest) {
        Bytes ser = he::SerializeCiphertext(c);
        a.recovered.insert(a.recovered.end(), ser.begin(), ser.end());
        // Without the key the best available guess reads S as the message.
        auto g = curve_->DecodeChunk(c.S());
        if (g.ok()) guess.push_back(*g);
      }
      auto joined = coding::JoinPayload(guess);
      if (joined.ok() && guess.size() == rest->size()) a.recovered = *joined;
    }
    for (const auto& [_, p] : payloads_) a.plaintext_recovered |= a.recovered == p;
    result_.adversary->inferences.push_back(std::move(a));
  }
  observations_.push_back(std::move(obs));
}

absl::Status Engine::Deliver(NodeState& node, const Component& c) {
  auto tamper = tampered_.find(c.key);
  if (cfg_.mode == Mode::kRobust) {
    bool ok;
    {
      Stopwatch sw(&result_.timings.verify_ms);
      NodeId src = Flow(c.flow).source();
      ok = c.sig && auth::EvaluatePayload(*c.sig, c.chunks, *sig_curve_, nodes_.at(src).sk->pk);
    }
    if (!ok) {
      ++result_.log.dropped_by_auth_count;
      if (tamper != tampered_.end()) result_.adversary->tampers[tamper->second].detected = true;
      result_.undeliverable.emplace(c.flow, "payload signature check failed");
      return absl::OkStatus();
    }
  }
  absl::StatusOr<Bytes> payload;
  if (!Crypto()) {
    payload = Unframe(c.cope_payload);
  } else {
    Stopwatch sw(&result_.timings.decode_ms);
    payload = coding::DecodePayload(*curve_, c.chunks, {}, node.kp);
  }
  if (!payload.ok()) {
    result_.undeliverable[c.flow] = absl::StrCat("decode failed: ", payload.status().message());
    return absl::OkStatus();
  }
  if (tamper != tampered_.end()) {
    result_.adversary->tampers[tamper->second].delivered = *payload != payloads_.at(c.flow);
  }
  result_.received.emplace(c.flow, std::move(*payload));
  return absl::OkStatus();
}

absl::Status Engine::Receive(NodeState& node, const TransmissionRecord& rec) {
  std::optional<View> v = Parse(rec.bytes);
  if (!v) return absl::OkStatus();
  bool adversary = cfg_.adversary && cfg_.adversary->node == node.id;
  if (cfg_.mode == Mode::kRobust) {
    bool ok;
    {
      Stopwatch sw(&result_.timings.verify_ms);
      ok = nodes_.count(v->mac_src) &&
           auth::EvaluateContact(v->header_sig, v->header, *sig_curve_,
                                 nodes_.at(v->mac_src).sk->pk);
    }
    if (!ok) {
      ++result_.log.dropped_by_auth_count;
      return absl::OkStatus();
    }
  }
  if (adversary) Observe(*v);

  Bytes me;
  if (!Crypto()) {
    me = U32Bytes(node.id);
  } else {
    ASSIGN_OR_RETURN(Ciphertext c, Field(FieldTag::kNextHop, node.id));
    me = he::SerializeCiphertext(c);
  }
  bool addressed = false;
  for (const auto& nh : v->next_hops) addressed |= nh == me;
  if (addressed) {
    ++node.acked[v->mac_src];
    node.pending_acks.push_back(v->mac_src);
  } else {
    ++node.heard[v->mac_src];
    node.pending_reception.push_back(v->mac_src);
  }

  std::vector<size_t> unknown;
  for (size_t i = 0; i < v->keys.size(); ++i) {
    if (!node.pool.count(v->keys[i])) unknown.push_back(i);
  }
  if (unknown.size() != 1) return absl::OkStatus();
  size_t u = unknown[0];

  Component c;
  c.flow = v->flows[u];
  c.key = v->keys[u];
  if (!Crypto()) {
    c.pkt_id = v->pkt_ids[u];
    Bytes acc = v->cope_payload;
    for (size_t i = 0; i < v->keys.size(); ++i) {
      if (i != u) XorInto(acc, node.pool.at(v->keys[i]).cope_payload);
    }
    auto body = Unframe(acc);
    if (!body.ok()) return absl::OkStatus();
    c.cope_payload = Frame(*body);
  } else {
    c.enc_pkt_id = v->enc_pkt_ids[u];
    std::vector<std::vector<Ciphertext>> known;
    for (size_t i = 0; i < v->keys.size(); ++i) {
      if (i != u) known.push_back(node.pool.at(v->keys[i]).chunks);
    }
    absl::StatusOr<std::vector<Ciphertext>> rest;
    {
      Stopwatch sw(&result_.timings.decode_ms);
      rest = coding::RemoveContributions(v->chunks, known);
    }
    if (!rest.ok() || rest->empty()) return absl::OkStatus();
    c.chunks = std::move(*rest);
    if (cfg_.mode == Mode::kRobust) c.sig = v->payload_sig[u];
  }
  node.pool[c.key] = c;
  if (v->next_hops[u] != me) return absl::OkStatus();
  const FlowSpec& flow = Flow(c.flow);
  if (flow.destination() == node.id) return Deliver(node, c);
  if (NextHop(c.flow, node.id)) node.queue.push_back({std::move(c), v->mac_src, round_});
  return absl::OkStatus();
}

absl::StatusOr<RunResult> Engine::Execute() {
  auto start = Clock::now();
  if (cfg_.adversary) {
    result_.adversary = AdversaryReport{cfg_.adversary->node, cfg_.adversary->mode, {}, {}, {}};
  }
  RETURN_IF_ERROR(Setup());
  RETURN_IF_ERROR(Inject());
  for (round_ = 1; round_ <= cfg_.max_rounds; ++round_) {
    std::vector<TransmissionRecord> sent;
    for (auto& [id, node] : nodes_) {
      ASSIGN_OR_RETURN(std::optional<TransmissionRecord> rec, Transmit(node));
      if (!rec) continue;
      if (cfg_.adversary && cfg_.adversary->node == id) {
        if (auto v = Parse(rec->bytes)) Observe(*v);
      }
      sent.push_back(std::move(*rec));
    }
    if (sent.empty()) break;
    result_.rounds = round_;
    for (const auto& rec : sent) {
      for (NodeId r : rec.receivers) RETURN_IF_ERROR(Receive(nodes_.at(r), rec));
    }
    for (auto& rec : sent) {
      if (rec.coded) {
        ++result_.log.broadcast_count;
        ++result_.log.coded_packet_count;
      } else {
        ++result_.log.unicast_count;
      }
      result_.log.records.push_back(std::move(rec));
    }
  }
  for (const auto& [id, _] : flows_) {
    if (!result_.received.count(id) && !result_.undeliverable.count(id)) {
      result_.undeliverable[id] = "not delivered";
    }
  }
  if (result_.adversary) result_.adversary->observed = result_.log.ObservationLog(cfg_.adversary->node);
  result_.timings.total_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return std::move(result_);
}

}  // namespace

std::string_view ModeName(Mode m) {
  switch (m) {
    case Mode::kCope:
      return "cope";
    case Mode::kScope:
      return "scope";
    case Mode::kRobust:
      return "robust";
  }
  return "?";
}

absl::StatusOr<Mode> ParseMode(std::string_view s) {
  if (s == "cope") return Mode::kCope;
  if (s == "scope") return Mode::kScope;
  if (s == "robust") return Mode::kRobust;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode '", std::string(s), "'"));
}

std::string_view AdversaryModeName(AdversaryMode m) {
  return m == AdversaryMode::kMalicious ? "malicious" : "honest-but-curious";
}

absl::StatusOr<AdversaryMode> ParseAdversaryMode(std::string_view s) {
  if (s == "honest-but-curious" || s == "hbc" || s == "curious") {
    return AdversaryMode::kHonestButCurious;
  }
  if (s == "malicious") return AdversaryMode::kMalicious;
  return absl::InvalidArgumentError(absl::StrCat("unknown adversary mode '", std::string(s), "'"));
}

bool TransmissionLog::Consistent() const {
  int unicast = 0, coded = 0;
  for (const auto& r : records) {
    if (r.control) continue;
    (r.coded ? coded : unicast)++;
  }
  return unicast == unicast_count && coded == broadcast_count && coded == coded_packet_count;
}

nlohmann::json TransmissionLog::ToJson() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    recs.push_back({{"round", r.round},
                    {"sender", r.sender},
                    {"receivers", r.receivers},
                    {"coded", r.coded},
                    {"control", r.control},
                    {"bytes", ToHex(r.bytes)}});
  }
  return {{"unicast_count", unicast_count},
          {"broadcast_count", broadcast_count},
          {"coded_packet_count", coded_packet_count},
          {"dropped_by_auth_count", dropped_by_auth_count},
          {"transmissions", transmissions()},
          {"records", recs}};
}

Bytes TransmissionLog::ObservationLog(NodeId node) const {
  Bytes out;
  for (const auto& r : records) {
    bool seen = r.sender == node ||
                std::find(r.receivers.begin(), r.receivers.end(), node) != r.receivers.end();
    if (seen) out.insert(out.end(), r.bytes.begin(), r.bytes.end());
  }
  return out;
}

nlohmann::json AdversaryReport::ToJson() const {
  nlohmann::json inf = nlohmann::json::array();
  for (const auto& a : inferences) {
    inf.push_back({{"round", a.round},
                   {"method", a.method},
                   {"recovered_bytes", a.recovered.size()},
                   {"plaintext_recovered", a.plaintext_recovered}});
  }
  nlohmann::json tam = nlohmann::json::array();
  for (const auto& t : tampers) {
    tam.push_back({{"round", t.round},
                   {"flow", t.flow},
                   {"chunk", t.chunk},
                   {"detected", t.detected},
                   {"delivered", t.delivered}});
  }
  return {{"node", node},
          {"mode", AdversaryModeName(mode)},
          {"observed_bytes", observed.size()},
          {"observed_sha256", ToHex(Sha256(observed))},
          {"inferences", inf},
          {"tampers", tam}};
}

nlohmann::json RunResult::ToJson() const {
  nlohmann::json rec = nlohmann::json::object();
  for (const auto& [f, p] : received) rec[std::to_string(f)] = ToHex(p);
  nlohmann::json und = nlohmann::json::object();
  for (const auto& [f, why] : undeliverable) und[std::to_string(f)] = why;
  nlohmann::json j = {{"rounds", rounds},
                      {"transmissions", log.transmissions()},
                      {"unicast_count", log.unicast_count},
                      {"broadcast_count", log.broadcast_count},
                      {"coded_packet_count", log.coded_packet_count},
                      {"dropped_by_auth", log.dropped_by_auth_count},
                      {"received", rec},
                      {"undeliverable", und}};
  j["timings_ms"] = {{"payload_encrypt", timings.payload_encrypt_ms},
                     {"header_encrypt", timings.header_encrypt_ms},
                     {"aggregate", timings.aggregate_ms},
                     {"condition", timings.condition_ms},
                     {"sign", timings.sign_ms},
                     {"verify", timings.verify_ms},
                     {"decode", timings.decode_ms},
                     {"total", timings.total_ms}};
  j["log"] = log.ToJson();
  if (adversary) j["adversary"] = adversary->ToJson();
  return j;
}

absl::StatusOr<RunResult> Run(const Scenario& scenario, const std::map<int, Bytes>& payloads,
                              const RunConfig& config) {
  Engine engine(scenario, payloads, config);
  return engine.Execute();
}

std::map<int, Bytes> RandomPayloads(const Scenario& scenario, size_t size, uint64_t seed) {
  Rng rng(seed);
  Rng fork = rng.Fork("payloads");
  std::map<int, Bytes> out;
  for (const auto& f : scenario.flows) out[f.flow_id] = fork.NextBytes(size);
  return out;
}

}  // namespace scope::sim
