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

#include <algorithm>
#include <numeric>
#include <set>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "oracles.h"
#include "scope/coding/condition.h"
#include "scope/coding/payload.h"
#include "scope/coding/secure_condition.h"
#include "scope/coding/topology.h"

namespace scope::coding {
namespace {

using group::Curve;
using he::Ciphertext;

Topology Line(int n) {
  Topology t;
  for (int v = 1; v < n; ++v) EXPECT_TRUE(t.AddEdge(v, v + 1).ok());
  return t;
}

TEST(TopologyTest, Validation) {
  Topology t = Line(3);
  EXPECT_TRUE(ValidateFlow(t, {1, {1, 2, 3}}).ok());
  EXPECT_FALSE(ValidateFlow(t, {1, {1, 3}}).ok());
  EXPECT_FALSE(ValidateFlow(t, {1, {1}}).ok());
  EXPECT_FALSE(ValidateFlow(t, {1, {1, 2, 1}}).ok());
  EXPECT_FALSE(ValidateFlow(t, {1, {1, 2, 9}}).ok());
  EXPECT_FALSE(t.AddEdge(2, 2).ok());
  EXPECT_TRUE(t.Adjacent(2, 1) && t.Adjacent(1, 2));
}

TEST(HopSetsTest, OpposingFlowsOnLine) {
  Topology t = Line(3);
  auto hs = ComputeHopSets(t, {1, {1, 2, 3}}, 2);
  ASSERT_TRUE(hs.ok());
  EXPECT_EQ(hs->nh, (std::set<NodeId>{3}));
  EXPECT_EQ(hs->ph, (std::set<NodeId>{1}));
  EXPECT_EQ(hs->nb_ph.at(1), (std::set<NodeId>{2}));
  auto src = ComputeHopSets(t, {1, {1, 2, 3}}, 1);
  EXPECT_TRUE(src->ph.empty());
  EXPECT_TRUE(src->nb_ph.empty());
  EXPECT_FALSE(ComputeHopSets(t, {1, {1, 2}}, 3).ok());
}

TEST(HopSetsTest, ChainInteriorSingletons) {
  Topology t = Line(9);
  FlowSpec f{1, {1, 2, 3, 4, 5, 6, 7, 8, 9}};
  for (NodeId v = 2; v <= 8; ++v) {
    auto hs = ComputeHopSets(t, f, v);
    EXPECT_EQ(hs->nh, (std::set<NodeId>{v + 1}));
    EXPECT_EQ(hs->ph, (std::set<NodeId>{v - 1}));
  }
}

TEST(CodingConditionTest, OpposingFlowsAndSameDirection) {
  Topology t = Line(3);
  auto f1 = ComputeHopSets(t, {1, {1, 2, 3}}, 2);
  auto f2 = ComputeHopSets(t, {2, {3, 2, 1}}, 2);
  EXPECT_TRUE(CodingCondition(*f1, *f2));
  auto same = ComputeHopSets(t, {3, {1, 2, 3}}, 2);
  EXPECT_FALSE(CodingCondition(*f1, *same));
}

TEST(CodingConditionTest, NeighborBranch) {
  // Triangle plus tail: F_i 1->2->3, F_j 4->2->1 with 3 adjacent to 4.
  Topology t;
  for (auto [a, b] : {std::pair{1, 2}, {2, 3}, {2, 4}, {3, 4}}) ASSERT_TRUE(t.AddEdge(a, b).ok());
  auto hi = ComputeHopSets(t, {1, {1, 2, 3}}, 2);
  auto hj = ComputeHopSets(t, {2, {4, 2, 1}}, 2);
  EXPECT_TRUE(CodingCondition(*hi, *hj));
  EXPECT_TRUE(testing::CodingConditionOracle(t, {1, 2, 3}, {4, 2, 1}, 2));
}

TEST(CodingConditionTest, RandomAgreesWithOracleAndIsSymmetric) {
  Rng rng(1);
  int trues = 0;
  for (int t = 0; t < 2000; ++t) {
    auto rc = testing::MakeRandomCrossing(rng);
    auto hi = ComputeHopSets(rc.topo, rc.flow_i, rc.m);
    auto hj = ComputeHopSets(rc.topo, rc.flow_j, rc.m);
    bool v = CodingCondition(*hi, *hj);
    ASSERT_EQ(v, testing::CodingConditionOracle(rc.topo, rc.flow_i.path, rc.flow_j.path, rc.m));
    ASSERT_EQ(v, CodingCondition(*hj, *hi));
    trues += v;
  }
  EXPECT_GT(trues, 100);
  EXPECT_LT(trues, 1900);
}

// Twice-encrypted tag lists, built the way the exchange builds them.
struct ListMaker {
  const Curve& curve = Curve::B163();
  Rng rng{7};
  he::FlowKey fk = he::FlowKey::Random(rng);
  he::KeyPair a = he::Keygen(curve, rng);
  he::KeyPair b = he::Keygen(curve, rng);
  he::LayerMask ma = *he::MakeLayerMask(curve, a.pk, curve.RandomNonzeroScalar(rng));
  he::LayerMask mb = *he::MakeLayerMask(curve, b.pk, curve.RandomNonzeroScalar(rng));

  std::vector<Ciphertext> Make(const std::vector<NodeId>& ids, bool a_first) {
    std::vector<Ciphertext> out;
    for (NodeId id : ids) {
      he::Point m = *curve.EncodeChunk(NodeTag(fk, id));
      Ciphertext c = he::EncryptWithMask(curve, m, a_first ? ma : mb);
      out.push_back(he::ApplyMask(c, a_first ? mb : ma));
    }
    return out;
  }
};

TEST(ListTest, Basics) {
  ListMaker mk;
  EXPECT_TRUE(EqualList(mk.Make({4}, true), mk.Make({4}, false)));
  EXPECT_FALSE(EqualList(mk.Make({4}, true), mk.Make({4, 5}, false)));
  EXPECT_FALSE(EqualList(mk.Make({4}, true), mk.Make({5}, false)));
  EXPECT_TRUE(EqualList({}, {}));
  EXPECT_TRUE(SubsetList({}, mk.Make({1, 2}, false)));
  EXPECT_TRUE(SubsetList(mk.Make({1, 2}, true), mk.Make({2, 1}, false)));
  EXPECT_FALSE(SubsetList(mk.Make({1, 3}, true), mk.Make({2, 1}, false)));
}

TEST(ListTest, AgreesWithPlaintextOracles) {
  ListMaker mk;
  Rng rng(8);
  auto random_ids = [&]() {
    std::vector<NodeId> v(rng.Uniform(5));
    for (auto& x : v) x = 1 + static_cast<NodeId>(rng.Uniform(5));
    return v;
  };
  for (int t = 0; t < 1000; ++t) {
    auto x = random_ids();
    auto y = random_ids();
    std::set<NodeId> sx(x.begin(), x.end()), sy(y.begin(), y.end());
    auto cx = mk.Make(x, true);
    auto cy = mk.Make(y, false);
    ASSERT_EQ(EqualList(cx, cy), sx == sy);
    ASSERT_EQ(SubsetList(cx, cy), std::includes(sy.begin(), sy.end(), sx.begin(), sx.end()));
  }
}

struct Exchange {
  const Curve& curve = Curve::B163();
  Rng rng{11};
  he::FlowKey fk = he::FlowKey::Random(rng);
  he::KeyPair ki = he::Keygen(curve, rng);
  he::KeyPair kj = he::Keygen(curve, rng);

  absl::StatusOr<bool> Run(const Topology& topo, const FlowSpec& fi, const FlowSpec& fj,
                           NodeId m, uint64_t session, Transcript* tr = nullptr) {
    auto hi = ComputeHopSets(topo, fi, m);
    auto hj = ComputeHopSets(topo, fj, m);
    Party pi{*hi->ph.begin(), &ki, *hi};
    Party pj{*hj->ph.begin(), &kj, *hj};
    return SecureCodingCondition(curve, m, pi, pj, fk, session, tr);
  }
};

TEST(SecureConditionTest, OpposingFlowsOnLine) {
  Exchange ex;
  Topology t = Line(3);
  auto v = ex.Run(t, {1, {1, 2, 3}}, {2, {3, 2, 1}}, 2, 0);
  ASSERT_TRUE(v.ok()) << v.status();
  EXPECT_TRUE(*v);
}

TEST(SecureConditionTest, AgreesWithPlaintextCondition) {
  Exchange ex;
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    auto rc = testing::MakeRandomCrossing(rng);
    auto hi = ComputeHopSets(rc.topo, rc.flow_i, rc.m);
    auto hj = ComputeHopSets(rc.topo, rc.flow_j, rc.m);
    auto v = ex.Run(rc.topo, rc.flow_i, rc.flow_j, rc.m, t);
    ASSERT_TRUE(v.ok()) << v.status();
    ASSERT_EQ(*v, CodingCondition(*hi, *hj)) << t;
  }
}

TEST(SecureConditionTest, TranscriptHidesNodeIds) {
  Exchange ex;
  Topology t = Line(3);
  Transcript tr;
  ASSERT_TRUE(ex.Run(t, {1, {1, 2, 3}}, {2, {3, 2, 1}}, 2, 5, &tr).ok());
  EXPECT_EQ(tr.messages.size(), 6u);
  Bytes view = tr.IntersectingView();
  for (NodeId id : {1u, 2u, 3u}) {
    Bytes be = {0, 0, 0, static_cast<uint8_t>(id)};
    EXPECT_FALSE(ContainsSubsequence(view, be)) << id;
    EXPECT_FALSE(ContainsSubsequence(view, NodeTag(ex.fk, id)));
  }
  nlohmann::json j = tr.ToJson();
  EXPECT_EQ(j.size(), 6u);
  EXPECT_EQ(j[0]["label"], "submit");
}

TEST(SecureConditionTest, StageOrderEnforced) {
  Exchange ex;
  Topology t = Line(3);
  auto hi = ComputeHopSets(t, {1, {1, 2, 3}}, 2);
  auto hj = ComputeHopSets(t, {2, {3, 2, 1}}, 2);
  auto s = SecureConditionSession::Create(ex.curve, 2, {1, &ex.ki, *hi}, {3, &ex.kj, *hj},
                                          ex.fk, 0);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->Relay().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(s->Evaluate().ok());
  ASSERT_TRUE(s->SubmitLists().ok());
  EXPECT_FALSE(s->SubmitLists().ok());
  EXPECT_FALSE(s->AddLayers().ok());
  ASSERT_TRUE(s->Relay().ok());
  ASSERT_TRUE(s->AddLayers().ok());
  EXPECT_TRUE(*s->Evaluate());
  EXPECT_FALSE(s->Evaluate().ok());
}

TEST(SecureConditionTest, MissingKeyMaterial) {
  Exchange ex;
  HopSets hs;
  EXPECT_FALSE(SecureConditionSession::Create(ex.curve, 2, {1, nullptr, hs}, {3, &ex.kj, hs},
                                              ex.fk, 0).ok());
  EXPECT_FALSE(SecureConditionSession::Create(ex.curve, 2, {1, &ex.ki, hs}, {3, &ex.kj, hs},
                                              he::FlowKey{}, 0).ok());
  EXPECT_FALSE(SecureConditionSession::Create(Curve::Toy(), 2, {1, &ex.ki, hs},
                                              {3, &ex.kj, hs}, ex.fk, 0).ok());
}

TEST(PayloadTest, SplitJoin) {
  for (const Curve* c : Curve::Production()) {
    Rng rng(20);
    size_t cap = c->ChunkCapacity();
    for (size_t n : {size_t{0}, size_t{1}, cap - 2, cap - 1, cap, 2 * cap, size_t{300}}) {
      Bytes p = rng.NextBytes(n);
      auto chunks = SplitPayload(*c, p);
      ASSERT_TRUE(chunks.ok());
      EXPECT_EQ(chunks->size(), (n + 2 + cap - 1) / cap);
      for (const auto& ch : *chunks) EXPECT_LE(ch.size(), cap);
      EXPECT_EQ(*JoinPayload(*chunks), p);
    }
  }
  EXPECT_FALSE(JoinPayload({Bytes{0}}).ok());
  EXPECT_FALSE(JoinPayload({Bytes{0, 5, 1}}).ok());
}

TEST(PayloadTest, SinglePacketUnchangedAndPlainDecode) {
  const Curve& c = Curve::B283();
  Rng rng(21);
  he::KeyPair k = he::Keygen(c, rng);
  Bytes p = rng.NextBytes(77);
  auto ct = EncryptPayload(c, k.pk, p, rng);
  EXPECT_EQ(*CodePayload({*ct}), *ct);
  EXPECT_EQ(*DecodePayload(c, *ct, {}, k), p);
}

TEST(PayloadTest, TwoFlowCodedStructure) {
  const Curve& c = Curve::B163();
  Rng rng(22);
  he::KeyPair ki = he::Keygen(c, rng), kj = he::Keygen(c, rng);
  he::Point pij = *c.EncodeChunk(Bytes{1, 2, 3});
  he::Point pji = *c.EncodeChunk(Bytes{4, 5});
  he::Scalar ri = c.RandomNonzeroScalar(rng), rj = c.RandomNonzeroScalar(rng);
  Ciphertext a = *he::Encrypt(c, kj.pk, pij, ri);
  Ciphertext b = *he::Encrypt(c, ki.pk, pji, rj);
  auto coded = CodePayload({{a}, {b}});
  ASSERT_TRUE(coded.ok());
  const Ciphertext& x = (*coded)[0];
  EXPECT_EQ(x.R(), c.Add(c.MultiplyBase(ri), c.MultiplyBase(rj)));
  EXPECT_EQ(x.S(), c.Add(c.Add(pij, pji), c.Add(c.Multiply(ri, kj.pk), c.Multiply(rj, ki.pk))));
  // N_j subtracts its own packet and decrypts.
  auto own = RemoveContributions(*coded, {{b}});
  EXPECT_EQ(*he::Decrypt(c, kj, (*own)[0]), pij);
  EXPECT_EQ(*DecodeChunks(c, *coded, {{b}}, kj), (std::vector<Bytes>{{1, 2, 3}}));
  EXPECT_EQ(*DecodeChunks(c, *coded, {{a}}, ki), (std::vector<Bytes>{{4, 5}}));
}

TEST(PayloadTest, RemovalInAllOrdersRecoversEachCiphertext) {
  const Curve& c = Curve::B163();
  Rng rng(23);
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::vector<Ciphertext>> parts;
    for (int k = 0; k < n; ++k) {
      he::KeyPair kp = he::Keygen(c, rng);
      parts.push_back(*EncryptPayload(c, kp.pk, rng.NextBytes(40), rng));
    }
    auto coded = *CodePayload(parts);
    for (int target = 0; target < n; ++target) {
      std::vector<int> others;
      for (int k = 0; k < n; ++k) {
        if (k != target) others.push_back(k);
      }
      do {
        std::vector<std::vector<Ciphertext>> known;
        for (int k : others) known.push_back(parts[k]);
        auto rest = RemoveContributions(coded, known);
        ASSERT_TRUE(rest.ok());
        EXPECT_EQ(*rest, parts[target]);
      } while (std::next_permutation(others.begin(), others.end()));
    }
  }
}

TEST(PayloadTest, ThreeFlowsUnequalLengths) {
  for (const Curve* c : Curve::Production()) {
    Rng rng(24);
    std::vector<he::KeyPair> keys;
    std::vector<Bytes> payloads;
    std::vector<std::vector<Ciphertext>> parts;
    for (int k = 0; k < 3; ++k) {
      keys.push_back(he::Keygen(*c, rng));
      payloads.push_back(rng.NextBytes(1 + rng.Uniform(150)));
      parts.push_back(*EncryptPayload(*c, keys[k].pk, payloads[k], rng));
    }
    auto coded = *CodePayload(parts);
    std::multiset<Bytes> sent(payloads.begin(), payloads.end()), got;
    for (int k = 0; k < 3; ++k) {
      std::vector<std::vector<Ciphertext>> known;
      for (int o = 0; o < 3; ++o) {
        if (o != k) known.push_back(parts[o]);
      }
      auto p = DecodePayload(*c, coded, known, keys[k]);
      ASSERT_TRUE(p.ok()) << p.status();
      EXPECT_EQ(*p, payloads[k]);
      got.insert(*p);
    }
    EXPECT_EQ(got, sent);
  }
}

TEST(PayloadTest, MissingContributionFails) {
  const Curve& c = Curve::B163();
  Rng rng(25);
  he::KeyPair k1 = he::Keygen(c, rng), k2 = he::Keygen(c, rng), k3 = he::Keygen(c, rng);
  auto p1 = *EncryptPayload(c, k1.pk, Bytes(10, 1), rng);
  auto p2 = *EncryptPayload(c, k2.pk, Bytes(10, 2), rng);
  auto p3 = *EncryptPayload(c, k3.pk, Bytes(10, 3), rng);
  auto coded = *CodePayload({p1, p2, p3});
  EXPECT_FALSE(DecodePayload(c, coded, {p2}, k1).ok());
  EXPECT_FALSE(DecodePayload(c, coded, {p1, p2, p3}, k1).ok());
  EXPECT_FALSE(CodePayload({}).ok());
}

}  // namespace
}  // namespace scope::coding
