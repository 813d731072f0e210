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

#include "scope/auth/ecdsa.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "scope/common/bigint.h"
#include "scope/common/status_macros.h"

namespace scope::auth {
namespace {

mpz_class Mod(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class InvMod(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Leftmost bitlen(n) bits of the digest, as an integer.
mpz_class HashToInt(const PrimeCurve& curve, ByteSpan msg) {
  Bytes digest = Digest(curve.hash(), msg);
  mpz_class e = BigIntFromBytes(digest);
  const size_t hash_bits = digest.size() * 8;
  const size_t n_bits = BitLength(curve.order());
  if (hash_bits > n_bits) e >>= static_cast<mp_bitcnt_t>(hash_bits - n_bits);
  return e;
}

}  // namespace

PrimeCurve::PrimeCurve(std::string name, int bits, const char* p_hex,
                       const char* b_hex, const char* gx_hex,
                       const char* gy_hex, const char* n_hex,
                       HashAlgorithm hash)
    : name_(std::move(name)),
      bits_(bits),
      p_(BigIntFromHex(p_hex)),
      b_(BigIntFromHex(b_hex)),
      n_(BigIntFromHex(n_hex)),
      hash_(hash) {
  g_.x = BigIntFromHex(gx_hex);
  g_.y = BigIntFromHex(gy_hex);
  g_.infinity = false;
  scalar_bytes_ = (BitLength(n_) + 7) / 8;
  coord_bytes_ = (BitLength(p_) + 7) / 8;
}

const PrimeCurve& PrimeCurve::P384() {
  static const PrimeCurve* curve = new PrimeCurve(
      "P-384", 384,
      "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffeffffff"
      "ff0000000000000000ffffffff",
      "b3312fa7e23ee7e4988e056be3f82d19181d9c6efe8141120314088f5013875ac65639"
      "8d8a2ed19d2a85c8edd3ec2aef",
      "aa87ca22be8b05378eb1c71ef320ad746e1d3b628ba79b9859f741e082542a385502f2"
      "5dbf55296c3a545e3872760ab7",
      "3617de4a96262c6f5d9e98bf9292dc29f8f41dbd289a147ce9da3113b5f0b8c00a60b1"
      "ce1d7e819d7a431d7c90ea0e5f",
      "ffffffffffffffffffffffffffffffffffffffffffffffffc7634d81f4372ddf581a0d"
      "b248b0a77aecec196accc52973",
      HashAlgorithm::kSha384);
  return *curve;
}

const PrimeCurve& PrimeCurve::P521() {
  static const PrimeCurve* curve = new PrimeCurve(
      "P-521", 521,
      "1fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
      "fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff",
      "51953eb9618e1c9a1f929a21a0b68540eea2da725b99b315f3b8b489918ef109e15619"
      "3951ec7e937b1652c0bd3bb1bf073573df883d2c34f1ef451fd46b503f00",
      "c6858e06b70404e9cd9e3ecb662395b4429c648139053fb521f828af606b4d3dbaa14b"
      "5e77efe75928fe1dc127a2ffa8de3348b3c1856a429bf97e7e31c2e5bd66",
      "11839296a789a3bc0045c8a5fb42c7d1bd998f54449579b446817afbd17273e662c97e"
      "e72995ef42640c550b9013fad0761353c7086a272c24088be94769fd16650",
      "1fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffa518"
      "68783bf2f966b7fcc0148f709a5d03bb5c9b8899c47aebb6fb71e91386409",
      HashAlgorithm::kSha512);
  return *curve;
}

absl::StatusOr<const PrimeCurve*> PrimeCurve::ForBits(int bits) {
  if (bits == 384) return &P384();
  if (bits == 521) return &P521();
  return absl::InvalidArgumentError(
      absl::StrCat("no signature curve for ", bits, " bits; use 384 or 521"));
}

bool PrimeCurve::IsOnCurve(const PrimePoint& pt) const {
  if (pt.infinity) return true;
  if (pt.x < 0 || pt.x >= p_ || pt.y < 0 || pt.y >= p_) return false;
  mpz_class lhs = Mod(pt.y * pt.y, p_);
  mpz_class rhs = Mod(pt.x * pt.x * pt.x - 3 * pt.x + b_, p_);
  return lhs == rhs;
}

PrimeCurve::Jacobian PrimeCurve::ToJacobian(const PrimePoint& pt) const {
  if (pt.infinity) return {1, 1, 0};
  return {pt.x, pt.y, 1};
}

PrimePoint PrimeCurve::ToAffine(const Jacobian& j) const {
  if (j.z == 0) return PrimePoint{};
  mpz_class zi = InvMod(j.z, p_);
  mpz_class zi2 = Mod(zi * zi, p_);
  PrimePoint out;
  out.x = Mod(j.x * zi2, p_);
  out.y = Mod(j.y * zi2 * zi, p_);
  out.infinity = false;
  return out;
}

PrimeCurve::Jacobian PrimeCurve::Double(const Jacobian& a) const {
  if (a.z == 0 || a.y == 0) return {1, 1, 0};
  mpz_class delta = Mod(a.z * a.z, p_);
  mpz_class gamma = Mod(a.y * a.y, p_);
  mpz_class beta = Mod(a.x * gamma, p_);
  mpz_class alpha = Mod(3 * (a.x - delta) * (a.x + delta), p_);
  Jacobian out;
  out.x = Mod(alpha * alpha - 8 * beta, p_);
  out.z = Mod((a.y + a.z) * (a.y + a.z) - gamma - delta, p_);
  out.y = Mod(alpha * (4 * beta - out.x) - 8 * gamma * gamma, p_);
  return out;
}

PrimeCurve::Jacobian PrimeCurve::AddJ(const Jacobian& a, const Jacobian& b) const {
  if (a.z == 0) return b;
  if (b.z == 0) return a;
  mpz_class z1z1 = Mod(a.z * a.z, p_);
  mpz_class z2z2 = Mod(b.z * b.z, p_);
  mpz_class u1 = Mod(a.x * z2z2, p_);
  mpz_class u2 = Mod(b.x * z1z1, p_);
  mpz_class s1 = Mod(a.y * b.z * z2z2, p_);
  mpz_class s2 = Mod(b.y * a.z * z1z1, p_);
  mpz_class h = Mod(u2 - u1, p_);
  mpz_class r = Mod(s2 - s1, p_);
  if (h == 0) {
    if (r == 0) return Double(a);
    return {1, 1, 0};
  }
  mpz_class h2 = Mod(h * h, p_);
  mpz_class h3 = Mod(h2 * h, p_);
  mpz_class u1h2 = Mod(u1 * h2, p_);
  Jacobian out;
  out.x = Mod(r * r - h3 - 2 * u1h2, p_);
  out.y = Mod(r * (u1h2 - out.x) - s1 * h3, p_);
  out.z = Mod(a.z * b.z * h, p_);
  return out;
}

PrimePoint PrimeCurve::Add(const PrimePoint& a, const PrimePoint& b) const {
  return ToAffine(AddJ(ToJacobian(a), ToJacobian(b)));
}

PrimePoint PrimeCurve::Multiply(const mpz_class& k, const PrimePoint& pt) const {
  return MultiplyTwo(0, k, pt);
}

PrimePoint PrimeCurve::MultiplyTwo(const mpz_class& u1, const mpz_class& u2,
                                   const PrimePoint& q) const {
  Jacobian g = ToJacobian(g_);
  Jacobian qj = ToJacobian(q);
  Jacobian gq = AddJ(g, qj);
  const size_t bits = std::max(BitLength(u1), BitLength(u2));
  Jacobian acc{1, 1, 0};
  for (size_t i = bits; i-- > 0;) {
    acc = Double(acc);
    bool b1 = u1 > 0 && mpz_tstbit(u1.get_mpz_t(), i);
    bool b2 = u2 > 0 && mpz_tstbit(u2.get_mpz_t(), i);
    if (b1 && b2) {
      acc = AddJ(acc, gq);
    } else if (b1) {
      acc = AddJ(acc, g);
    } else if (b2) {
      acc = AddJ(acc, qj);
    }
  }
  return ToAffine(acc);
}

Bytes PrimeCurve::SerializePoint(const PrimePoint& pt) const {
  if (pt.infinity) return Bytes{0x00};
  ByteWriter w;
  w.PutU8(0x04);
  w.PutBytes(BigIntToBytes(pt.x, coord_bytes_));
  w.PutBytes(BigIntToBytes(pt.y, coord_bytes_));
  return std::move(w).Take();
}

absl::StatusOr<PrimePoint> PrimeCurve::ParsePoint(ByteReader& reader) const {
  ASSIGN_OR_RETURN(uint8_t tag, reader.GetU8());
  if (tag == 0x00) return PrimePoint{};
  if (tag != 0x04) {
    return absl::InvalidArgumentError(
        absl::StrCat(reader.context(), ": bad point tag ", tag));
  }
  ASSIGN_OR_RETURN(ByteSpan xb, reader.GetBytes(coord_bytes_));
  ASSIGN_OR_RETURN(ByteSpan yb, reader.GetBytes(coord_bytes_));
  PrimePoint pt{BigIntFromBytes(xb), BigIntFromBytes(yb), false};
  if (!IsOnCurve(pt)) {
    return absl::InvalidArgumentError(
        absl::StrCat(reader.context(), ": point not on ", name_));
  }
  return pt;
}

SigKeyPair SigKeygen(const PrimeCurve& curve, Rng& rng) {
  SigKeyPair kp;
  kp.curve = &curve;
  kp.sk = rng.UniformBelow(curve.order() - 1) + 1;
  kp.pk = curve.MultiplyBase(kp.sk);
  return kp;
}

Signature EcdsaSign(const SigKeyPair& kp, ByteSpan msg, Rng& rng) {
  const PrimeCurve& curve = *kp.curve;
  const mpz_class& n = curve.order();
  mpz_class e = HashToInt(curve, msg);
  for (;;) {
    mpz_class k = rng.UniformBelow(n - 1) + 1;
    PrimePoint kg = curve.MultiplyBase(k);
    mpz_class r = Mod(kg.x, n);
    if (r == 0) continue;
    mpz_class s = Mod(InvMod(k, n) * (e + r * kp.sk), n);
    if (s == 0) continue;
    return Signature{r, s};
  }
}

bool EcdsaVerify(const PrimeCurve& curve, const PrimePoint& pk, ByteSpan msg,
                 const Signature& sig) {
  const mpz_class& n = curve.order();
  if (sig.r <= 0 || sig.r >= n || sig.s <= 0 || sig.s >= n) return false;
  if (pk.infinity || !curve.IsOnCurve(pk)) return false;
  mpz_class e = HashToInt(curve, msg);
  mpz_class w = InvMod(sig.s, n);
  mpz_class u1 = Mod(e * w, n);
  mpz_class u2 = Mod(sig.r * w, n);
  PrimePoint x = curve.MultiplyTwo(u1, u2, pk);
  if (x.infinity) return false;
  return Mod(x.x, n) == sig.r;
}

Bytes SerializeSignature(const PrimeCurve& curve, const Signature& sig) {
  ByteWriter w;
  w.PutBytes(BigIntToBytes(sig.r, curve.scalar_bytes()));
  w.PutBytes(BigIntToBytes(sig.s, curve.scalar_bytes()));
  return std::move(w).Take();
}

absl::StatusOr<Signature> ParseSignature(const PrimeCurve& curve,
                                         ByteReader& reader) {
  ASSIGN_OR_RETURN(ByteSpan rb, reader.GetBytes(curve.scalar_bytes()));
  ASSIGN_OR_RETURN(ByteSpan sb, reader.GetBytes(curve.scalar_bytes()));
  Signature sig{BigIntFromBytes(rb), BigIntFromBytes(sb)};
  if (sig.r == 0 || sig.r >= curve.order() || sig.s == 0 ||
      sig.s >= curve.order()) {
    return absl::InvalidArgumentError(
        absl::StrCat(reader.context(), ": signature scalar out of range"));
  }
  return sig;
}

}  // namespace scope::auth
