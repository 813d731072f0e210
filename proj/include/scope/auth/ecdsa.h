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

#ifndef SCOPE_AUTH_ECDSA_H_
#define SCOPE_AUTH_ECDSA_H_

#include <gmpxx.h>

#include <string>

#include "absl/status/statusor.h"
#include "scope/common/bytes.h"
#include "scope/common/hash.h"
#include "scope/common/rng.h"

namespace scope::auth {

struct PrimePoint {
  mpz_class x;
  mpz_class y;
  bool infinity = true;

  friend bool operator==(const PrimePoint& a, const PrimePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

// Short Weierstrass curve y^2 = x^3 - 3x + b over GF(p), used for ECDSA.
class PrimeCurve {
 public:
  static const PrimeCurve& P384();
  static const PrimeCurve& P521();
  static absl::StatusOr<const PrimeCurve*> ForBits(int bits);

  const std::string& name() const { return name_; }
  int bits() const { return bits_; }
  const mpz_class& p() const { return p_; }
  const mpz_class& order() const { return n_; }
  const PrimePoint& generator() const { return g_; }
  HashAlgorithm hash() const { return hash_; }
  // Fixed width of scalars and coordinates on the wire.
  size_t scalar_bytes() const { return scalar_bytes_; }
  size_t coord_bytes() const { return coord_bytes_; }

  bool IsOnCurve(const PrimePoint& pt) const;
  PrimePoint Add(const PrimePoint& a, const PrimePoint& b) const;
  PrimePoint Multiply(const mpz_class& k, const PrimePoint& pt) const;
  PrimePoint MultiplyBase(const mpz_class& k) const { return Multiply(k, g_); }
  // u1 G + u2 Q with one shared doubling chain.
  PrimePoint MultiplyTwo(const mpz_class& u1, const mpz_class& u2,
                         const PrimePoint& q) const;

  // 0x04 || x || y, or a single 0x00 for infinity.
  Bytes SerializePoint(const PrimePoint& pt) const;
  absl::StatusOr<PrimePoint> ParsePoint(ByteReader& reader) const;

 private:
  struct Jacobian {
    mpz_class x;
    mpz_class y;
    mpz_class z;  // z == 0 encodes infinity
  };

  PrimeCurve(std::string name, int bits, const char* p_hex, const char* b_hex,
             const char* gx_hex, const char* gy_hex, const char* n_hex,
             HashAlgorithm hash);

  Jacobian ToJacobian(const PrimePoint& pt) const;
  PrimePoint ToAffine(const Jacobian& j) const;
  Jacobian Double(const Jacobian& a) const;
  Jacobian AddJ(const Jacobian& a, const Jacobian& b) const;

  std::string name_;
  int bits_;
  mpz_class p_;
  mpz_class b_;
  mpz_class n_;
  PrimePoint g_;
  HashAlgorithm hash_;
  size_t scalar_bytes_;
  size_t coord_bytes_;
};

struct SigKeyPair {
  const PrimeCurve* curve = nullptr;
  mpz_class sk;
  PrimePoint pk;
};

struct Signature {
  mpz_class r;
  mpz_class s;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.r == b.r && a.s == b.s;
  }
};

SigKeyPair SigKeygen(const PrimeCurve& curve, Rng& rng);

// Standard ECDSA over the curve's hash; the nonce is drawn from `rng`.
Signature EcdsaSign(const SigKeyPair& kp, ByteSpan msg, Rng& rng);
bool EcdsaVerify(const PrimeCurve& curve, const PrimePoint& pk, ByteSpan msg,
                 const Signature& sig);

// r then s, each scalar_bytes() wide.
Bytes SerializeSignature(const PrimeCurve& curve, const Signature& sig);
// Rejects r or s outside [1, n).
absl::StatusOr<Signature> ParseSignature(const PrimeCurve& curve,
                                         ByteReader& reader);

}  // namespace scope::auth

#endif  // SCOPE_AUTH_ECDSA_H_
