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

#include "scope/group/curve.h"

#include <array>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "scope/common/bigint.h"
#include "scope/common/status_macros.h"

namespace scope::group {
namespace {

absl::StatusOr<FieldElement> FieldFromHex(const BinaryField& field,
                                          const std::string& hex) {
  mpz_class v = BigIntFromHex(hex);
  if (BitLength(v) > static_cast<size_t>(field.degree())) {
    return absl::InvalidArgumentError("constant exceeds field degree");
  }
  return field.FromBytes(BigIntToBytes(v, field.byte_length()));
}

const Curve& Load(const CurveParams& params) {
  auto curve = Curve::Create(params);
  if (!curve.ok()) {
    // Built-in constants are fixed; failing here means the table is corrupt.
    throw std::logic_error(absl::StrCat("invalid built-in curve ", params.name,
                                        ": ", curve.status().ToString()));
  }
  return *new Curve(*std::move(curve));
}

}  // namespace

Curve::Curve(std::string name, BinaryField field, FieldElement a,
             FieldElement b, Point base, mpz_class order, unsigned cofactor)
    : name_(std::move(name)),
      field_(std::move(field)),
      a_(std::move(a)),
      b_(std::move(b)),
      base_(std::move(base)),
      order_(std::move(order)),
      cofactor_(cofactor) {}

absl::StatusOr<Curve> Curve::Create(const CurveParams& params) {
  ASSIGN_OR_RETURN(BinaryField field,
                   BinaryField::Create(params.m, params.poly_terms));
  ASSIGN_OR_RETURN(FieldElement a, FieldFromHex(field, params.a_hex));
  ASSIGN_OR_RETURN(FieldElement b, FieldFromHex(field, params.b_hex));
  ASSIGN_OR_RETURN(FieldElement gx, FieldFromHex(field, params.gx_hex));
  ASSIGN_OR_RETURN(FieldElement gy, FieldFromHex(field, params.gy_hex));
  if (b.IsZero()) return absl::InvalidArgumentError("curve is singular (b = 0)");
  mpz_class order = BigIntFromHex(params.order_hex);
  if (order < 2 || mpz_probab_prime_p(order.get_mpz_t(), 40) == 0) {
    return absl::InvalidArgumentError("base point order is not prime");
  }
  if (params.cofactor == 0) return absl::InvalidArgumentError("zero cofactor");
  Curve curve(params.name, std::move(field), std::move(a), std::move(b),
              Point::Affine(std::move(gx), std::move(gy)), std::move(order),
              params.cofactor);
  if (!curve.IsOnCurve(curve.base_)) {
    return absl::InvalidArgumentError("base point is not on the curve");
  }
  if (!curve.MultiplyInteger(curve.order_, curve.base_).is_identity()) {
    return absl::InvalidArgumentError("order * base is not the identity");
  }
  return curve;
}

const Curve& Curve::B163() {
  static const Curve& curve = Load({
      .name = "B-163",
      .m = 163,
      .poly_terms = {7, 6, 3, 0},
      .a_hex = "1",
      .b_hex = "20a601907b8c953ca1481eb10512f78744a3205fd",
      .gx_hex = "3f0eba16286a2d57ea0991168d4994637e8343e36",
      .gy_hex = "d51fbc6c71a0094fa2cdd545b11c5c0c797324f1",
      .order_hex = "40000000000000000000292fe77e70c12a4234c33",
      .cofactor = 2,
  });
  return curve;
}

const Curve& Curve::B283() {
  static const Curve& curve = Load({
      .name = "B-283",
      .m = 283,
      .poly_terms = {12, 7, 5, 0},
      .a_hex = "1",
      .b_hex = "27b680ac8b8596da5a4af8a19a0303fca97fd7645309fa2a581485af6263e3"
               "13b79a2f5",
      .gx_hex = "5f939258db7dd90e1934f8c70b0dfec2eed25b8557eac9c80e2e198f8cdbe"
                "cd86b12053",
      .gy_hex = "3676854fe24141cb98fe6d4b20d02b4516ff702350eddb0826779c813f0df"
                "45be8112f4",
      .order_hex = "3ffffffffffffffffffffffffffffffffffef90399660fc938a90165b0"
                   "42a7cefadb307",
      .cofactor = 2,
  });
  return curve;
}

const Curve& Curve::B409() {
  static const Curve& curve = Load({
      .name = "B-409",
      .m = 409,
      .poly_terms = {87, 0},
      .a_hex = "1",
      .b_hex = "21a5c2c8ee9feb5c4b9a753b7b476b7fd6422ef1f3dd674761fa99d6ac27c8"
               "a9a197b272822f6cd57a55aa4f50ae317b13545f",
      .gx_hex = "15d4860d088ddb3496b0c6064756260441cde4af1771d4db01ffe5b34e597"
                "03dc255a868a1180515603aeab60794e54bb7996a7",
      .gy_hex = "61b1cfab6be5f32bbfa78324ed106a7636b9c5a7bd198d0158aa4f5488d08"
                "f38514f1fdf4b4f40d2181b3681c364ba0273c706",
      .order_hex = "10000000000000000000000000000000000000000000000000001e2aad"
                   "6a612f33307be5fa47c3c9e052f838164cd37d9a21173",
      .cofactor = 2,
  });
  return curve;
}

const Curve& Curve::B571() {
  static const Curve& curve = Load({
      .name = "B-571",
      .m = 571,
      .poly_terms = {10, 5, 2, 0},
      .a_hex = "1",
      .b_hex = "2f40e7e2221f295de297117b7f3d62f5c6a97ffcb8ceff1cd6ba8ce4a9a18a"
               "d84ffabbd8efa59332be7ad6756a66e294afd185a78ff12aa520e4de739baca"
               "0c7ffeff7f2955727a",
      .gx_hex = "303001d34b856296c16c0d40d3cd7750a93d1d2955fa80aa5f40fc8db7b2a"
                "bdbde53950f4c0d293cdd711a35b67fb1499ae60038614f1394abfa3b4c850"
                "d927e1e7769c8eec2d19",
      .gy_hex = "37bf27342da639b6dccfffeb73d69d78c6c27a6009cbbca1980f8533921e8"
                "a684423e43bab08a576291af8f461bb2a8b3531d2f0485c19b16e2f1516e23"
                "dd3c1a4827af1b8ac15b",
      .order_hex = "3fffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
                   "fffffffffffffe661ce18ff55987308059b186823851ec7dd9ca1161de9"
                   "3d5174d66e8382e9bb2fe84e47",
      .cofactor = 2,
  });
  return curve;
}

// y^2 + xy = x^3 + x^2 + 1 over GF(2^7) / (x^7 + x + 1): 142 points,
// base point of prime order 71.
const Curve& Curve::Toy() {
  static const Curve& curve = Load({
      .name = "toy-7",
      .m = 7,
      .poly_terms = {1, 0},
      .a_hex = "1",
      .b_hex = "1",
      .gx_hex = "65",
      .gy_hex = "59",
      .order_hex = "47",
      .cofactor = 2,
  });
  return curve;
}

std::span<const Curve* const> Curve::Production() {
  static const std::array<const Curve*, 4> curves = {&B163(), &B283(), &B409(),
                                                     &B571()};
  return curves;
}

absl::StatusOr<const Curve*> Curve::ForKeyBits(int bits) {
  switch (bits) {
    case 163:
      return &B163();
    case 283:
      return &B283();
    case 409:
      return &B409();
    case 571:
      return &B571();
    default:
      return absl::InvalidArgumentError(
          absl::StrCat("no curve for ", bits, "-bit keys; use 163, 283, 409 or 571"));
  }
}

bool Curve::IsOnCurve(const Point& p) const {
  if (p.is_identity()) return true;
  if (!field_.Contains(p.x()) || !field_.Contains(p.y())) return false;
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();
  FieldElement x2 = field_.Sqr(x);
  FieldElement lhs = field_.Add(field_.Sqr(y), field_.Mul(x, y));
  FieldElement rhs =
      field_.Add(field_.Add(field_.Mul(x2, x), field_.Mul(a_, x2)), b_);
  return lhs == rhs;
}

Point Curve::Negate(const Point& p) const {
  if (p.is_identity()) return p;
  return Point::Affine(p.x(), field_.Add(p.x(), p.y()));
}

Point Curve::Double(const Point& p) const {
  if (p.is_identity() || p.x().IsZero()) return Point::Identity();
  const FieldElement& x = p.x();
  FieldElement lambda = field_.Add(x, field_.Div(p.y(), x));
  FieldElement x3 =
      field_.Add(field_.Add(field_.Sqr(lambda), lambda), a_);
  FieldElement y3 = field_.Add(
      field_.Sqr(x), field_.Mul(field_.Add(lambda, field_.One()), x3));
  return Point::Affine(std::move(x3), std::move(y3));
}

Point Curve::Add(const Point& p, const Point& q) const {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  if (p.x() == q.x()) {
    if (p.y() == q.y()) return Double(p);
    return Point::Identity();  // q == -p
  }
  FieldElement dx = field_.Add(p.x(), q.x());
  FieldElement lambda = field_.Div(field_.Add(p.y(), q.y()), dx);
  FieldElement x3 = field_.Add(
      field_.Add(field_.Add(field_.Sqr(lambda), lambda), dx), a_);
  FieldElement y3 = field_.Add(
      field_.Add(field_.Mul(lambda, field_.Add(p.x(), x3)), x3), p.y());
  return Point::Affine(std::move(x3), std::move(y3));
}

Point Curve::MultiplyInteger(const mpz_class& k, const Point& p) const {
  if (k <= 0 || p.is_identity()) return Point::Identity();
  if (p.x().IsZero()) {
    // (0, sqrt(b)) has order two.
    return mpz_odd_p(k.get_mpz_t()) ? p : Point::Identity();
  }
  return LadderMultiply(k, p);
}

Point Curve::LadderMultiply(const mpz_class& k, const Point& p) const {
  const BinaryField& f = field_;
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();

  // (x1 : z1) tracks j*P and (x2 : z2) tracks (j+1)*P.
  FieldElement x1 = x;
  FieldElement z1 = f.One();
  FieldElement z2 = f.Sqr(x);
  FieldElement x2 = f.Add(f.Sqr(z2), b_);

  auto add_into = [&](FieldElement& xa, FieldElement& za, const FieldElement& xb,
                      const FieldElement& zb) {
    FieldElement u = f.Mul(xa, zb);
    FieldElement v = f.Mul(xb, za);
    za = f.Sqr(f.Add(u, v));
    xa = f.Add(f.Mul(x, za), f.Mul(u, v));
  };
  auto double_in_place = [&](FieldElement& xa, FieldElement& za) {
    FieldElement xs = f.Sqr(xa);
    FieldElement zs = f.Sqr(za);
    za = f.Mul(xs, zs);
    xa = f.Add(f.Sqr(xs), f.Mul(b_, f.Sqr(zs)));
  };

  const long bits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
  for (long i = bits - 2; i >= 0; --i) {
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      add_into(x1, z1, x2, z2);
      double_in_place(x2, z2);
    } else {
      add_into(x2, z2, x1, z1);
      double_in_place(x1, z1);
    }
  }

  if (z1.IsZero()) return Point::Identity();
  if (z2.IsZero()) return Negate(p);

  FieldElement z1z2 = f.Mul(z1, z2);
  FieldElement x3 = f.Div(x1, z1);
  FieldElement lhs = f.Mul(f.Add(x1, f.Mul(x, z1)), f.Add(x2, f.Mul(x, z2)));
  FieldElement num = f.Add(lhs, f.Mul(f.Add(f.Sqr(x), y), z1z2));
  FieldElement den = f.Mul(x, z1z2);
  FieldElement y3 = f.Add(f.Mul(f.Add(x, x3), f.Div(num, den)), y);
  return Point::Affine(std::move(x3), std::move(y3));
}

absl::StatusOr<Point> Curve::CheckedAdd(const Point& p, const Point& q) const {
  if (!IsOnCurve(p) || !IsOnCurve(q)) {
    return absl::InvalidArgumentError(
        absl::StrCat("point not on curve ", name_));
  }
  return Add(p, q);
}

absl::StatusOr<Point> Curve::CheckedMultiply(const Scalar& k,
                                             const Point& p) const {
  if (!IsOnCurve(p)) {
    return absl::InvalidArgumentError(
        absl::StrCat("point not on curve ", name_));
  }
  return Multiply(k, p);
}

Scalar Curve::MakeScalar(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), order_.get_mpz_t());
  return Scalar(std::move(r));
}

Scalar Curve::RandomNonzeroScalar(Rng& rng) const {
  mpz_class one_less = order_ - 1;
  return Scalar(rng.UniformBelow(one_less) + 1);
}

Bytes Curve::SerializePoint(const Point& p) const {
  if (p.is_identity()) return Bytes{0x00};
  ByteWriter w;
  w.PutU8(0x04);
  w.PutBytes(field_.ToBytes(p.x()));
  w.PutBytes(field_.ToBytes(p.y()));
  return std::move(w).Take();
}

absl::StatusOr<Point> Curve::ParsePoint(ByteReader& reader) const {
  ASSIGN_OR_RETURN(uint8_t tag, reader.GetU8());
  if (tag == 0x00) return Point::Identity();
  if (tag != 0x04) {
    return absl::InvalidArgumentError(
        absl::StrCat(reader.context(), ": bad point tag ", tag));
  }
  ASSIGN_OR_RETURN(ByteSpan xb, reader.GetBytes(field_.byte_length()));
  ASSIGN_OR_RETURN(ByteSpan yb, reader.GetBytes(field_.byte_length()));
  auto x = field_.FromBytes(xb);
  auto y = field_.FromBytes(yb);
  if (!x.ok() || !y.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(reader.context(), ": point coordinate out of range"));
  }
  Point p = Point::Affine(*std::move(x), *std::move(y));
  if (!IsOnCurve(p)) {
    return absl::InvalidArgumentError(
        absl::StrCat(reader.context(), ": point not on curve ", name_));
  }
  return p;
}

absl::StatusOr<Point> Curve::ParsePoint(ByteSpan bytes) const {
  ByteReader reader(bytes, "point");
  ASSIGN_OR_RETURN(Point p, ParsePoint(reader));
  if (!reader.empty()) {
    return absl::InvalidArgumentError("point: trailing bytes");
  }
  return p;
}

size_t Curve::ChunkCapacity() const {
  size_t whole = static_cast<size_t>(field_.degree() / 8);
  return whole >= 2 ? whole - 2 : 0;
}

absl::StatusOr<Point> Curve::EncodeChunk(ByteSpan chunk) const {
  const size_t layout = static_cast<size_t>(field_.degree() / 8);
  if (layout < 2 || field_.degree() % 2 == 0) {
    return absl::FailedPreconditionError(
        absl::StrCat(name_, " cannot carry message chunks"));
  }
  if (chunk.size() > ChunkCapacity()) {
    return absl::InvalidArgumentError(
        absl::StrCat("chunk of ", chunk.size(), " bytes exceeds capacity ",
                     ChunkCapacity(), " of ", name_));
  }
  Bytes x_bytes(field_.byte_length(), 0);
  const size_t offset = x_bytes.size() - layout;
  x_bytes[offset] = static_cast<uint8_t>(chunk.size());
  std::copy(chunk.begin(), chunk.end(), x_bytes.begin() + offset + 1);
  for (int counter = 0; counter < 256; ++counter) {
    x_bytes.back() = static_cast<uint8_t>(counter);
    ASSIGN_OR_RETURN(FieldElement x, field_.FromBytes(x_bytes));
    if (x.IsZero()) return Point::Affine(x, field_.Sqrt(b_));
    // With y = x z the curve equation becomes z^2 + z = x + a + b / x^2.
    FieldElement beta =
        field_.Add(field_.Add(x, a_), field_.Div(b_, field_.Sqr(x)));
    if (field_.Trace(beta) != 0) continue;
    FieldElement z = field_.HalfTrace(beta);
    return Point::Affine(x, field_.Mul(x, z));
  }
  return absl::ResourceExhaustedError(
      "chunk encoding failed: no counter value gives a curve point");
}

absl::StatusOr<Bytes> Curve::DecodeChunk(const Point& p) const {
  const size_t layout = static_cast<size_t>(field_.degree() / 8);
  if (p.is_identity() || layout < 2 || !field_.Contains(p.x())) {
    return absl::InvalidArgumentError("not a message point");
  }
  Bytes x_bytes = field_.ToBytes(p.x());
  const size_t offset = x_bytes.size() - layout;
  for (size_t i = 0; i < offset; ++i) {
    if (x_bytes[i] != 0) return absl::InvalidArgumentError("not a message point");
  }
  const size_t len = x_bytes[offset];
  if (len > ChunkCapacity()) {
    return absl::InvalidArgumentError("not a message point");
  }
  for (size_t i = offset + 1 + len; i + 1 < x_bytes.size(); ++i) {
    if (x_bytes[i] != 0) return absl::InvalidArgumentError("not a message point");
  }
  return Bytes(x_bytes.begin() + offset + 1, x_bytes.begin() + offset + 1 + len);
}

}  // namespace scope::group
