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

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "packet_fixtures.h"
#include "scope/packet/header_crypto.h"

namespace scope::packet {
namespace {

using group::Curve;
using testing::RandomChunks;
using testing::RandomCopeHeader;

std::vector<uint16_t> RandomFlows(Rng& rng) {
  std::vector<uint16_t> f(rng.Uniform(kMaxRoutedComponents + 1));
  for (auto& x : f) x = static_cast<uint16_t>(rng.Uniform(0xffff));
  return f;
}

TEST(RoutingHeaderTest, FlowSlots) {
  auto r = MakeRoutingHeader(std::vector<uint16_t>{1, 0x0203});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(ToHex(*r), "00010203ffffffff");
  EXPECT_EQ(RoutingFlows(*r), (std::vector<uint16_t>{1, 0x0203}));
  EXPECT_TRUE(RoutingFlows(*MakeRoutingHeader({})).empty());
  EXPECT_FALSE(MakeRoutingHeader(std::vector<uint16_t>{1, 2, 3, 4, 5}).ok());
  EXPECT_FALSE(MakeRoutingHeader(std::vector<uint16_t>{0xffff}).ok());
}

TEST(MacHeaderTest, LayoutAndFrameType) {
  MacHeader mac = MakeMacHeader(0x01020304, 0x0a0b0c0d, FrameType::kRobust);
  EXPECT_EQ(ToHex(mac), "00000a0b0c0d0000010203045c03");
  EXPECT_EQ(MacFrameType(mac), FrameType::kRobust);
}

TEST(HeaderCryptoTest, RoundTripAndDeterminism) {
  const Curve& c = Curve::B163();
  Rng rng(1);
  he::KeyPair kp = he::Keygen(c, rng);
  he::FlowKey fk = he::FlowKey::Random(rng);
  for (int t = 0; t < 50; ++t) {
    CopeHeader h = RandomCopeHeader(rng, 3);
    auto e1 = EncryptHeader(c, h, fk, kp.pk);
    auto e2 = EncryptHeader(c, h, fk, kp.pk);
    ASSERT_TRUE(e1.ok()) << e1.status();
    EXPECT_EQ(*e1, *e2);
    auto back = DecryptHeader(c, *e1, kp);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, h);
  }
}

TEST(HeaderCryptoTest, EmptySections) {
  const Curve& c = Curve::B163();
  Rng rng(2);
  he::KeyPair kp = he::Keygen(c, rng);
  auto e = EncryptHeader(c, CopeHeader{}, he::FlowKey::Random(rng), kp.pk);
  ASSERT_TRUE(e.ok());
  EXPECT_TRUE(e->coding.empty() && e->reception.empty() && e->acks.empty());
  EXPECT_EQ(*DecryptHeader(c, *e, kp), CopeHeader{});
}

TEST(HeaderCryptoTest, TagsSeparateEqualValues) {
  const Curve& c = Curve::B163();
  Rng rng(3);
  he::KeyPair kp = he::Keygen(c, rng);
  he::FlowKey fk = he::FlowKey::Random(rng);
  auto a = EncryptField(c, FieldTag::kPktId, 7, fk, kp.pk);
  auto b = EncryptField(c, FieldTag::kNextHop, 7, fk, kp.pk);
  EXPECT_NE(*a, *b);
}

TEST(HeaderCryptoTest, SwappedFieldDetected) {
  const Curve& c = Curve::B163();
  Rng rng(4);
  he::KeyPair kp = he::Keygen(c, rng);
  CopeHeader h;
  h.coding.push_back({5, 6});
  auto e = EncryptHeader(c, h, he::FlowKey::Random(rng), kp.pk);
  std::swap(e->coding[0].pkt_id, e->coding[0].next_hop);
  EXPECT_FALSE(DecryptHeader(c, *e, kp).ok());
}

TEST(PacketTest, MinimalLengths) {
  ScopePacket s;
  s.mac = MakeMacHeader(1, 2, FrameType::kScope);
  EXPECT_EQ(Serialize(s)->size(), kMinScopePacketSize);
  EXPECT_EQ(kMinScopePacketSize, 46u);
  RobustPacket r;
  r.mac = MakeMacHeader(1, 2, FrameType::kRobust);
  EXPECT_EQ(Serialize(r, auth::PrimeCurve::P384())->size(), kMinRobustPacketSize);
  EXPECT_EQ(kMinRobustPacketSize, 47u);
  CopePacket p;
  p.mac = MakeMacHeader(1, 2, FrameType::kCope);
  EXPECT_EQ(Serialize(p)->size(), kMinCopePacketSize);
  EXPECT_EQ(kMinCopePacketSize, 47u);
}

TEST(PacketTest, FrameTypeMismatchRejected) {
  ScopePacket s;
  s.mac = MakeMacHeader(1, 2, FrameType::kCope);
  EXPECT_FALSE(Serialize(s).ok());
  CopePacket p;
  p.mac = MakeMacHeader(1, 2, FrameType::kCope);
  Bytes b = *Serialize(p);
  EXPECT_FALSE(DeserializeScope(b, Curve::B163()).ok());
  EXPECT_TRUE(DeserializeCope(b).ok());
}

TEST(PacketTest, CountOverflowRejected) {
  CopePacket p;
  p.mac = MakeMacHeader(1, 2, FrameType::kCope);
  p.header.coding.resize(256);
  EXPECT_FALSE(Serialize(p).ok());
  p.header.coding.resize(255);
  EXPECT_TRUE(Serialize(p).ok());
}

TEST(PacketTest, RobustSignatureCountsChecked) {
  Rng rng(5);
  auto f = testing::MakeRobustFixture(Curve::B163(), auth::PrimeCurve::P384(),
                                      rng, 2, 2);
  f.packet.header_sig.sign_ack.push_back(f.packet.header_sig.sign_encode.empty()
                                             ? auth::Signature{1, 1}
                                             : f.packet.header_sig.sign_encode[0]);
  EXPECT_FALSE(Serialize(f.packet, auth::PrimeCurve::P384()).ok());
}

TEST(PacketTest, CopeRoundTrip) {
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    CopePacket p;
    p.mac = MakeMacHeader(rng.Uniform(9), rng.Uniform(9), FrameType::kCope);
    p.header = RandomCopeHeader(rng, 4);
    p.routing = *MakeRoutingHeader(RandomFlows(rng));
    p.ip = MakeIpHeader(rng.Uniform(9), rng.Uniform(9));
    p.payload = rng.NextBytes(rng.Uniform(200));
    auto b = Serialize(p);
    ASSERT_TRUE(b.ok());
    auto back = DeserializeCope(*b);
    ASSERT_TRUE(back.ok()) << back.status();
    ASSERT_EQ(*back, p);
  }
}

TEST(PacketTest, ScopeRoundTripAndInjectivity) {
  const Curve& c = Curve::B163();
  Rng rng(7);
  he::KeyPair kp = he::Keygen(c, rng);
  he::FlowKey fk = he::FlowKey::Random(rng);
  std::set<Bytes> seen;
  for (int t = 0; t < 1000; ++t) {
    ScopePacket p;
    p.mac = MakeMacHeader(rng.Uniform(9), rng.Uniform(9), FrameType::kScope);
    p.header = *EncryptHeader(c, RandomCopeHeader(rng, 1), fk, kp.pk);
    p.routing = *MakeRoutingHeader(RandomFlows(rng));
    p.ip = MakeIpHeader(rng.Uniform(9), rng.Uniform(9));
    p.payload = RandomChunks(c, kp.pk, static_cast<int>(rng.Uniform(3)), rng);
    auto b = Serialize(p);
    ASSERT_TRUE(b.ok());
    auto back = DeserializeScope(*b, c);
    ASSERT_TRUE(back.ok()) << back.status();
    ASSERT_EQ(*back, p);
    EXPECT_TRUE(seen.insert(*b).second);
  }
}

TEST(PacketTest, RobustRoundTripBothSignatureCurves) {
  const Curve& c = Curve::B283();
  for (const auth::PrimeCurve* sc : {&auth::PrimeCurve::P384(), &auth::PrimeCurve::P521()}) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
      auto f = testing::MakeRobustFixture(c, *sc, rng, 1, 3);
      auto b = Serialize(f.packet, *sc);
      ASSERT_TRUE(b.ok());
      auto back = DeserializeRobust(*b, c, *sc);
      ASSERT_TRUE(back.ok()) << back.status();
      EXPECT_EQ(*back, f.packet);
      auto any = Deserialize(*b, WireContext{&c, sc});
      ASSERT_TRUE(any.ok());
      EXPECT_TRUE(std::holds_alternative<RobustPacket>(*any));
    }
  }
}

TEST(PacketTest, EveryTruncationRejected) {
  Rng rng(9);
  auto f = testing::MakeRobustFixture(Curve::B163(), auth::PrimeCurve::P384(),
                                      rng, 1, 2);
  Bytes b = *Serialize(f.packet, auth::PrimeCurve::P384());
  for (size_t n = 0; n < b.size(); ++n) {
    auto r = DeserializeRobust(ByteSpan(b).first(n), Curve::B163(),
                               auth::PrimeCurve::P384());
    EXPECT_FALSE(r.ok()) << n;
  }
  Bytes longer = b;
  longer.push_back(0);
  EXPECT_FALSE(DeserializeRobust(longer, Curve::B163(), auth::PrimeCurve::P384()).ok());
}

TEST(PacketTest, TruncationErrorNamesSection) {
  CopePacket p;
  p.mac = MakeMacHeader(1, 2, FrameType::kCope);
  p.payload = {1, 2, 3};
  Bytes b = *Serialize(p);
  auto r = DeserializeCope(ByteSpan(b).first(b.size() - 1));
  ASSERT_FALSE(r.ok());
  EXPECT_NE(std::string(r.status().message()).find("payload"), std::string::npos);
  r = DeserializeCope(ByteSpan(b).first(kMacHeaderSize + 1));
  EXPECT_NE(std::string(r.status().message()).find("cope header"), std::string::npos);
}

TEST(PacketTest, CountMutationsNeverCrash) {
  const Curve& c = Curve::B163();
  Rng rng(10);
  auto f = testing::MakeRobustFixture(c, auth::PrimeCurve::P384(), rng, 2, 2);
  Bytes b = *Serialize(f.packet, auth::PrimeCurve::P384());
  // The coding count sits right after the MAC stub.
  for (int v = 0; v < 256; ++v) {
    Bytes m = b;
    m[kMacHeaderSize] = static_cast<uint8_t>(v);
    auto r = DeserializeRobust(m, c, auth::PrimeCurve::P384());
    if (v == b[kMacHeaderSize]) {
      EXPECT_TRUE(r.ok());
    } else {
      EXPECT_FALSE(r.ok()) << v;
    }
  }
  // Every single byte set to every value: parse must return, never crash.
  for (size_t i = 0; i < b.size(); i += 7) {
    for (int v : {0x00, 0x01, 0x7f, 0xff}) {
      Bytes m = b;
      m[i] = static_cast<uint8_t>(v);
      (void)Deserialize(m, WireContext{&c, &auth::PrimeCurve::P384()});
    }
  }
}

TEST(PacketTest, RandomBytesFuzz) {
  const Curve& c = Curve::B163();
  WireContext ctx{&c, &auth::PrimeCurve::P384()};
  Rng rng(11);
  int accepted = 0;
  for (int t = 0; t < 10000; ++t) {
    Bytes b = rng.NextBytes(rng.Uniform(400));
    // Half the inputs get a valid frame type so parsing goes deeper.
    if (b.size() >= kMacHeaderSize && t % 2 == 0) {
      uint16_t type = 0x5C01 + static_cast<uint16_t>(t / 2 % 3);
      b[12] = static_cast<uint8_t>(type >> 8);
      b[13] = static_cast<uint8_t>(type);
    }
    accepted += Deserialize(b, ctx).ok();
  }
  EXPECT_LT(accepted, 10000);
}

TEST(GoldenTest, SeedZeroRobustPacket) {
  Bytes b = testing::SeedZeroRobustPacket();
  EXPECT_EQ(b, testing::SeedZeroRobustPacket());
  std::string hex = ToHex(b);
  const char* update = std::getenv("SCOPE_UPDATE_GOLDEN");
  if (update != nullptr && std::string(update) == "1") {
    std::ofstream(SCOPE_GOLDEN_PATH) << hex << "\n";
  }
  std::ifstream in(SCOPE_GOLDEN_PATH);
  ASSERT_TRUE(in.good()) << "missing " << SCOPE_GOLDEN_PATH;
  std::string golden;
  in >> golden;
  EXPECT_EQ(hex, golden);
  auto back = DeserializeRobust(b, Curve::B163(), auth::PrimeCurve::P384());
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*Serialize(*back, auth::PrimeCurve::P384()), b);
}

}  // namespace
}  // namespace scope::packet
