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

#include "scope/auth/signatures.h"

#include "gtest/gtest.h"
#include "packet_fixtures.h"

namespace scope::auth {
namespace {

using group::Curve;

// Verify-all reference: checks every field independently.
bool VerifyAllHeader(const SignScope& sig, const packet::ScopeHeader& h,
                     const PrimeCurve& curve, const PrimePoint& pk) {
  auto check = [&](const std::vector<Signature>& sigs,
                   const std::vector<const he::Ciphertext*>& fields) {
    bool ok = sigs.size() == fields.size();
    for (size_t i = 0; i < std::min(sigs.size(), fields.size()); ++i) {
      ok &= EcdsaVerify(curve, pk, he::SerializeCiphertext(*fields[i]), sigs[i]);
    }
    return ok;
  };
  bool a = check(sig.sign_encode, packet::EncodeFields(h));
  bool b = check(sig.sign_report, packet::ReportFields(h));
  bool c = check(sig.sign_ack, packet::AckFields(h));
  return a && b && c;
}

TEST(SignaturesTest, SignatureCountsPerSection) {
  const Curve& c = Curve::B163();
  Rng rng(1);
  he::KeyPair kp = he::Keygen(c, rng);
  packet::CopeHeader h;
  h.coding.push_back({1, 2});
  h.reception.push_back({3, 4, 5});
  h.acks.push_back({6, 7, 8});
  auto enc = packet::EncryptHeader(c, h, he::FlowKey::Random(rng), kp.pk);
  SigKeyPair sk = SigKeygen(PrimeCurve::P384(), rng);
  SignScope sig = SignHeader(sk, *enc, rng);
  EXPECT_EQ(sig.sign_encode.size(), 2u);
  EXPECT_EQ(sig.sign_report.size(), 3u);
  EXPECT_EQ(sig.sign_ack.size(), 3u);
  EXPECT_TRUE(EvaluateContact(sig, *enc, PrimeCurve::P384(), sk.pk));
}

TEST(SignaturesTest, UntamperedVerifiesAndWrongKeyFails) {
  const Curve& c = Curve::B163();
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    auto f = testing::MakeRobustFixture(c, PrimeCurve::P384(), rng, 2, 3);
    const auto& p = f.packet;
    EXPECT_TRUE(EvaluateContact(p.header_sig, p.header, PrimeCurve::P384(), f.sender.pk));
    EXPECT_TRUE(EvaluatePayload(p.payload_sig[0], p.payload, PrimeCurve::P384(),
                                f.source.pk));
    EXPECT_FALSE(EvaluatePayload(p.payload_sig[0], p.payload, PrimeCurve::P384(),
                                 f.sender.pk));
    if (!p.header.coding.empty()) {
      EXPECT_FALSE(EvaluateContact(p.header_sig, p.header, PrimeCurve::P384(),
                                   f.source.pk));
    }
  }
}

TEST(SignaturesTest, EveryFieldMutationDetected) {
  const Curve& c = Curve::B163();
  Rng rng(3);
  he::KeyPair other = he::Keygen(c, rng);
  for (int t = 0; t < 10; ++t) {
    auto f = testing::MakeRobustFixture(c, PrimeCurve::P384(), rng, 2, 1);
    auto fields = [](packet::ScopeHeader& h) {
      std::vector<he::Ciphertext*> out;
      for (auto& e : h.coding) out.insert(out.end(), {&e.pkt_id, &e.next_hop});
      for (auto& e : h.reception) out.insert(out.end(), {&e.src_ip, &e.last_pkt, &e.bitmap});
      for (auto& e : h.acks) out.insert(out.end(), {&e.neighbor, &e.last_ack, &e.ack_map});
      return out;
    };
    size_t n = fields(f.packet.header).size();
    for (size_t i = 0; i < n; ++i) {
      packet::ScopeHeader h = f.packet.header;
      *fields(h)[i] = *packet::EncryptField(c, packet::FieldTag::kPktId, 99, f.fk, other.pk);
      bool fast = EvaluateContact(f.packet.header_sig, h, PrimeCurve::P384(), f.sender.pk);
      EXPECT_FALSE(fast);
      EXPECT_EQ(fast, VerifyAllHeader(f.packet.header_sig, h, PrimeCurve::P384(),
                                      f.sender.pk));
    }
  }
}

TEST(SignaturesTest, ChunkMutationsAndReorderDetected) {
  const Curve& c = Curve::B163();
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    auto f = testing::MakeRobustFixture(c, PrimeCurve::P384(), rng, 0, 4);
    auto chunks = f.packet.payload;
    const SignPayload& sig = f.packet.payload_sig[0];
    for (size_t i = 0; i < chunks.size(); ++i) {
      auto m = chunks;
      m[i] = testing::RandomChunks(c, f.dest.pk, 1, rng)[0];
      EXPECT_FALSE(EvaluatePayload(sig, m, PrimeCurve::P384(), f.source.pk));
    }
    if (chunks.size() >= 2) {
      auto m = chunks;
      std::swap(m[0], m[1]);
      EXPECT_FALSE(EvaluatePayload(sig, m, PrimeCurve::P384(), f.source.pk));
    }
    auto shorter = chunks;
    shorter.pop_back();
    EXPECT_FALSE(EvaluatePayload(sig, shorter, PrimeCurve::P384(), f.source.pk));
  }
}

TEST(SignaturesTest, SignChunksRejectsEmpty) {
  Rng rng(5);
  SigKeyPair sk = SigKeygen(PrimeCurve::P384(), rng);
  EXPECT_FALSE(SignChunks(sk, {}, rng).ok());
}

TEST(SignaturesTest, SignatureEditsDetected) {
  const Curve& c = Curve::B163();
  Rng rng(6);
  auto f = testing::MakeRobustFixture(c, PrimeCurve::P521(), rng, 1, 2);
  SignScope sig = f.packet.header_sig;
  if (!sig.sign_encode.empty()) {
    sig.sign_encode[0].s += 1;
    EXPECT_FALSE(EvaluateContact(sig, f.packet.header, PrimeCurve::P521(), f.sender.pk));
  }
  SignScope dropped = f.packet.header_sig;
  dropped.sign_ack.clear();
  if (!f.packet.header.acks.empty()) {
    EXPECT_FALSE(EvaluateContact(dropped, f.packet.header, PrimeCurve::P521(), f.sender.pk));
  }
}

}  // namespace
}  // namespace scope::auth
