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

#ifndef SCOPE_HE_ELGAMAL_H_
#define SCOPE_HE_ELGAMAL_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "scope/common/bytes.h"
#include "scope/common/rng.h"
#include "scope/group/curve.h"

namespace scope::he {

using group::Curve;
using group::Point;
using group::Scalar;

// Short public-key identifier carried in ciphertext layer lists: the first
// four bytes of SHA-256 over the serialized key.
using LayerId = uint32_t;
LayerId KeyId(const Curve& curve, const Point& pk);

struct KeyPair {
  Scalar sk;
  Point pk;
  LayerId id = 0;
};

// Secret shared by the two endpoints of a flow.
struct FlowKey {
  std::array<uint8_t, 32> secret{};

  static FlowKey Random(Rng& rng);
  friend bool operator==(const FlowKey& a, const FlowKey& b) {
    return a.secret == b.secret;
  }
};

// (R, S) = (sum r_u B, M + sum r_u pk_u) over the layers u in `layers`.
// The zero ciphertext (both points Identity, no layers) is the additive
// identity used for padding.
class Ciphertext {
 public:
  Ciphertext() = default;
  Ciphertext(const Curve* curve, Point r, Point s, std::vector<LayerId> layers)
      : curve_(curve), r_(std::move(r)), s_(std::move(s)), layers_(std::move(layers)) {}
  static Ciphertext Zero(const Curve& curve) {
    return Ciphertext(&curve, Point::Identity(), Point::Identity(), {});
  }

  const Curve* curve() const { return curve_; }
  const Point& R() const { return r_; }
  const Point& S() const { return s_; }
  const std::vector<LayerId>& layers() const { return layers_; }
  bool IsZero() const { return r_.is_identity() && s_.is_identity(); }

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.curve_ == b.curve_ && a.r_ == b.r_ && a.s_ == b.s_ &&
           a.layers_ == b.layers_;
  }

 private:
  const Curve* curve_ = nullptr;
  Point r_;
  Point s_;
  std::vector<LayerId> layers_;
};

KeyPair Keygen(const Curve& curve, Rng& rng);

absl::StatusOr<Ciphertext> Encrypt(const Curve& curve, const Point& pk,
                                   const Point& m, const Scalar& r);
// Randomized encryption with a fresh nonce.
absl::StatusOr<Ciphertext> EncryptRandom(const Curve& curve, const Point& pk,
                                         const Point& m, Rng& rng);
// r = HMAC-SHA-256(fk, ser(M) || ser(pk)), expanded and reduced mod n.
Ciphertext EncryptDet(const Curve& curve, const Point& pk, const Point& m,
                      const FlowKey& fk);

// S - sk R. The ciphertext must carry exactly one layer.
absl::StatusOr<Point> Decrypt(const Curve& curve, const Scalar& sk,
                              const Ciphertext& c);
// As above, and the single layer must belong to `kp`.
absl::StatusOr<Point> Decrypt(const Curve& curve, const KeyPair& kp,
                              const Ciphertext& c);

absl::StatusOr<Ciphertext> CtAdd(const Ciphertext& a, const Ciphertext& b);
// a - b; b's layers must be a sub-multiset of a's and are removed from a.
absl::StatusOr<Ciphertext> CtSub(const Ciphertext& a, const Ciphertext& b);
absl::StatusOr<Ciphertext> AddLayer(const Ciphertext& c, const Point& pk,
                                    const Scalar& r);

// Precomputed (r B, r pk) for applying the same layer to many ciphertexts.
struct LayerMask {
  Point rb;
  Point rpk;
  LayerId id = 0;
};
absl::StatusOr<LayerMask> MakeLayerMask(const Curve& curve, const Point& pk,
                                        const Scalar& r);
// Encrypt under one layer, or add one layer, using a precomputed mask.
Ciphertext EncryptWithMask(const Curve& curve, const Point& m,
                           const LayerMask& mask);
Ciphertext ApplyMask(const Ciphertext& c, const LayerMask& mask);

// Nonzero scalar from HMAC-SHA-256 keyed by `fk` over `label || data`,
// expanded past the order's width and reduced mod n.
Scalar DeriveScalar(const Curve& curve, const FlowKey& fk,
                    std::string_view label, ByteSpan data);

// [R][S][u8 layer count][layer ids, 4 bytes each].
Bytes SerializeCiphertext(const Ciphertext& c);
absl::StatusOr<Ciphertext> ParseCiphertext(const Curve& curve,
                                           ByteReader& reader);
absl::StatusOr<Ciphertext> ParseCiphertext(const Curve& curve, ByteSpan bytes);

}  // namespace scope::he

#endif  // SCOPE_HE_ELGAMAL_H_
