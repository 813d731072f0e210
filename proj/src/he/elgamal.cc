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

#include "scope/he/elgamal.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "scope/common/bigint.h"
#include "scope/common/hash.h"
#include "scope/common/status_macros.h"

namespace scope::he {
namespace {

absl::Status SameCurve(const Ciphertext& a, const Ciphertext& b) {
  if (a.curve() == nullptr || a.curve() != b.curve()) {
    return absl::InvalidArgumentError("ciphertexts use different curves");
  }
  return absl::OkStatus();
}

}  // namespace

LayerId KeyId(const Curve& curve, const Point& pk) {
  Bytes h = Sha256(curve.SerializePoint(pk));
  return static_cast<LayerId>(h[0]) << 24 | static_cast<LayerId>(h[1]) << 16 |
         static_cast<LayerId>(h[2]) << 8 | static_cast<LayerId>(h[3]);
}

FlowKey FlowKey::Random(Rng& rng) {
  FlowKey fk;
  rng.Fill(fk.secret);
  return fk;
}

KeyPair Keygen(const Curve& curve, Rng& rng) {
  KeyPair kp;
  kp.sk = curve.RandomNonzeroScalar(rng);
  kp.pk = curve.MultiplyBase(kp.sk);
  kp.id = KeyId(curve, kp.pk);
  return kp;
}

absl::StatusOr<Ciphertext> Encrypt(const Curve& curve, const Point& pk,
                                   const Point& m, const Scalar& r) {
  if (r.IsZero()) {
    return absl::InvalidArgumentError("encryption nonce must be nonzero");
  }
  if (!curve.IsOnCurve(m) || !curve.IsOnCurve(pk)) {
    return absl::InvalidArgumentError("message or key not on curve");
  }
  return Ciphertext(&curve, curve.MultiplyBase(r),
                    curve.Add(m, curve.Multiply(r, pk)), {KeyId(curve, pk)});
}

absl::StatusOr<Ciphertext> EncryptRandom(const Curve& curve, const Point& pk,
                                         const Point& m, Rng& rng) {
  return Encrypt(curve, pk, m, curve.RandomNonzeroScalar(rng));
}

Scalar DeriveScalar(const Curve& curve, const FlowKey& fk,
                    std::string_view label, ByteSpan data) {
  const size_t width = (BitLength(curve.order()) + 7) / 8 + 16;
  for (uint32_t attempt = 0;; ++attempt) {
    Bytes stream;
    for (uint32_t block = 0; stream.size() < width; ++block) {
      ByteWriter w;
      w.PutU32(attempt);
      w.PutU32(block);
      w.PutBytes(ByteSpan(reinterpret_cast<const uint8_t*>(label.data()),
                          label.size()));
      w.PutU8(0);
      w.PutBytes(data);
      Bytes out = HmacSha256(fk.secret, w.bytes());
      stream.insert(stream.end(), out.begin(), out.end());
    }
    stream.resize(width);
    Scalar r = curve.MakeScalar(BigIntFromBytes(stream));
    if (!r.IsZero()) return r;
  }
}

Ciphertext EncryptDet(const Curve& curve, const Point& pk, const Point& m,
                      const FlowKey& fk) {
  ByteWriter w;
  w.PutBytes(curve.SerializePoint(m));
  w.PutBytes(curve.SerializePoint(pk));
  Scalar r = DeriveScalar(curve, fk, "encrypt-det", w.bytes());
  return Ciphertext(&curve, curve.MultiplyBase(r),
                    curve.Add(m, curve.Multiply(r, pk)), {KeyId(curve, pk)});
}

absl::StatusOr<Point> Decrypt(const Curve& curve, const Scalar& sk,
                              const Ciphertext& c) {
  if (c.curve() != &curve) {
    return absl::InvalidArgumentError("ciphertext belongs to another curve");
  }
  if (c.layers().size() != 1) {
    return absl::FailedPreconditionError(
        absl::StrCat("decrypt needs a single-layer ciphertext, got ",
                     c.layers().size(), " layers"));
  }
  return curve.Subtract(c.S(), curve.Multiply(sk, c.R()));
}

absl::StatusOr<Point> Decrypt(const Curve& curve, const KeyPair& kp,
                              const Ciphertext& c) {
  if (c.layers().size() == 1 && c.layers()[0] != kp.id) {
    return absl::FailedPreconditionError(
        "ciphertext layer does not belong to this key");
  }
  return Decrypt(curve, kp.sk, c);
}

absl::StatusOr<Ciphertext> CtAdd(const Ciphertext& a, const Ciphertext& b) {
  RETURN_IF_ERROR(SameCurve(a, b));
  const Curve& curve = *a.curve();
  std::vector<LayerId> layers = a.layers();
  layers.insert(layers.end(), b.layers().begin(), b.layers().end());
  return Ciphertext(&curve, curve.Add(a.R(), b.R()), curve.Add(a.S(), b.S()),
                    std::move(layers));
}

absl::StatusOr<Ciphertext> CtSub(const Ciphertext& a, const Ciphertext& b) {
  RETURN_IF_ERROR(SameCurve(a, b));
  const Curve& curve = *a.curve();
  std::vector<LayerId> layers = a.layers();
  for (LayerId id : b.layers()) {
    auto it = std::find(layers.begin(), layers.end(), id);
    if (it == layers.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "layer mismatch: key ", absl::Hex(id, absl::kZeroPad8),
          " not present in the minuend"));
    }
    layers.erase(it);
  }
  return Ciphertext(&curve, curve.Subtract(a.R(), b.R()),
                    curve.Subtract(a.S(), b.S()), std::move(layers));
}

absl::StatusOr<Ciphertext> AddLayer(const Ciphertext& c, const Point& pk,
                                    const Scalar& r) {
  if (c.curve() == nullptr) return absl::InvalidArgumentError("empty ciphertext");
  ASSIGN_OR_RETURN(LayerMask mask, MakeLayerMask(*c.curve(), pk, r));
  return ApplyMask(c, mask);
}

absl::StatusOr<LayerMask> MakeLayerMask(const Curve& curve, const Point& pk,
                                        const Scalar& r) {
  if (r.IsZero()) return absl::InvalidArgumentError("layer nonce must be nonzero");
  if (!curve.IsOnCurve(pk)) return absl::InvalidArgumentError("key not on curve");
  return LayerMask{curve.MultiplyBase(r), curve.Multiply(r, pk),
                   KeyId(curve, pk)};
}

Ciphertext EncryptWithMask(const Curve& curve, const Point& m,
                           const LayerMask& mask) {
  return Ciphertext(&curve, mask.rb, curve.Add(m, mask.rpk), {mask.id});
}

Ciphertext ApplyMask(const Ciphertext& c, const LayerMask& mask) {
  const Curve& curve = *c.curve();
  std::vector<LayerId> layers = c.layers();
  layers.push_back(mask.id);
  return Ciphertext(&curve, curve.Add(c.R(), mask.rb),
                    curve.Add(c.S(), mask.rpk), std::move(layers));
}

Bytes SerializeCiphertext(const Ciphertext& c) {
  ByteWriter w;
  w.PutBytes(c.curve()->SerializePoint(c.R()));
  w.PutBytes(c.curve()->SerializePoint(c.S()));
  w.PutU8(static_cast<uint8_t>(c.layers().size()));
  for (LayerId id : c.layers()) w.PutU32(id);
  return std::move(w).Take();
}

absl::StatusOr<Ciphertext> ParseCiphertext(const Curve& curve,
                                           ByteReader& reader) {
  ASSIGN_OR_RETURN(Point r, curve.ParsePoint(reader));
  ASSIGN_OR_RETURN(Point s, curve.ParsePoint(reader));
  ASSIGN_OR_RETURN(uint8_t count, reader.GetU8());
  std::vector<LayerId> layers(count);
  for (LayerId& id : layers) {
    ASSIGN_OR_RETURN(id, reader.GetU32());
  }
  return Ciphertext(&curve, std::move(r), std::move(s), std::move(layers));
}

absl::StatusOr<Ciphertext> ParseCiphertext(const Curve& curve, ByteSpan bytes) {
  ByteReader reader(bytes, "ciphertext");
  ASSIGN_OR_RETURN(Ciphertext c, ParseCiphertext(curve, reader));
  if (!reader.empty()) return absl::InvalidArgumentError("ciphertext: trailing bytes");
  return c;
}

}  // namespace scope::he
