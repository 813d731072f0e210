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

#ifndef SCOPE_GROUP_CURVE_H_
#define SCOPE_GROUP_CURVE_H_

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "scope/common/bytes.h"
#include "scope/common/rng.h"
#include "scope/group/binary_field.h"

namespace scope::group {

// A point on y^2 + xy = x^3 + a x^2 + b, or the identity.
class Point {
 public:
  Point() = default;  // identity
  static Point Identity() { return Point(); }
  static Point Affine(FieldElement x, FieldElement y) {
    Point p;
    p.identity_ = false;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
  }

  bool is_identity() const { return identity_; }
  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.identity_ || b.identity_) return a.identity_ == b.identity_;
    return a.x_ == b.x_ && a.y_ == b.y_;
  }

 private:
  bool identity_ = true;
  FieldElement x_;
  FieldElement y_;
};

// Integer reduced into [0, n) for the curve that created it.
class Scalar {
 public:
  Scalar() = default;
  const mpz_class& value() const { return value_; }
  bool IsZero() const { return value_ == 0; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
  }

 private:
  friend class Curve;
  explicit Scalar(mpz_class v) : value_(std::move(v)) {}
  mpz_class value_;
};

struct CurveParams {
  std::string name;
  int m = 0;
  std::vector<int> poly_terms;  // exponents below m, including 0
  std::string a_hex;
  std::string b_hex;
  std::string gx_hex;
  std::string gy_hex;
  std::string order_hex;
  unsigned cofactor = 0;
};

// Elliptic-curve group over GF(2^m) with a prime-order base point.
// Immutable after construction; every method is const and thread-safe.
class Curve {
 public:
  // Validates the parameters: base point on the curve, order prime,
  // order * base == identity.
  static absl::StatusOr<Curve> Create(const CurveParams& params);

  // NIST binary curves matching 163/283/409/571-bit keys, plus a tiny curve
  // over GF(2^7) whose group is small enough to enumerate.
  static const Curve& B163();
  static const Curve& B283();
  static const Curve& B409();
  static const Curve& B571();
  static const Curve& Toy();
  static std::span<const Curve* const> Production();
  static absl::StatusOr<const Curve*> ForKeyBits(int bits);

  const std::string& name() const { return name_; }
  const BinaryField& field() const { return field_; }
  int key_bits() const { return field_.degree(); }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const Point& base() const { return base_; }
  const mpz_class& order() const { return order_; }
  unsigned cofactor() const { return cofactor_; }

  bool IsOnCurve(const Point& p) const;

  Point Negate(const Point& p) const;
  Point Add(const Point& p, const Point& q) const;
  Point Subtract(const Point& p, const Point& q) const { return Add(p, Negate(q)); }
  Point Double(const Point& p) const;
  Point Multiply(const Scalar& k, const Point& p) const {
    return MultiplyInteger(k.value(), p);
  }
  Point MultiplyBase(const Scalar& k) const { return Multiply(k, base_); }
  // Any non-negative integer, not reduced: used for cofactor and order checks.
  Point MultiplyInteger(const mpz_class& k, const Point& p) const;

  // Group law with validation of both operands.
  absl::StatusOr<Point> CheckedAdd(const Point& p, const Point& q) const;
  absl::StatusOr<Point> CheckedMultiply(const Scalar& k, const Point& p) const;

  Scalar MakeScalar(const mpz_class& v) const;
  // Uniform in [1, n).
  Scalar RandomNonzeroScalar(Rng& rng) const;
  Scalar AddScalars(const Scalar& a, const Scalar& b) const {
    return MakeScalar(a.value() + b.value());
  }

  // 0x00 for the identity, else 0x04 || x || y with byte_length() each.
  Bytes SerializePoint(const Point& p) const;
  size_t SerializedPointSize(const Point& p) const {
    return p.is_identity() ? 1 : 1 + 2 * field_.byte_length();
  }
  absl::StatusOr<Point> ParsePoint(ByteReader& reader) const;
  absl::StatusOr<Point> ParsePoint(ByteSpan bytes) const;

  // floor(m/8) - 2 payload bytes fit in one point; 0 when the field is too
  // small to carry the length/counter framing.
  size_t ChunkCapacity() const;
  // Try-and-increment: x = [len][payload][zero pad][counter], big-endian.
  absl::StatusOr<Point> EncodeChunk(ByteSpan chunk) const;
  absl::StatusOr<Bytes> DecodeChunk(const Point& p) const;

 private:
  Curve(std::string name, BinaryField field, FieldElement a, FieldElement b,
        Point base, mpz_class order, unsigned cofactor);

  // Montgomery ladder in projective x-only coordinates with y recovery.
  Point LadderMultiply(const mpz_class& k, const Point& p) const;

  std::string name_;
  BinaryField field_;
  FieldElement a_;
  FieldElement b_;
  Point base_;
  mpz_class order_;
  unsigned cofactor_;
};

// Free-function forms of the checked group operations.
inline absl::StatusOr<Point> PointAdd(const Curve& c, const Point& p,
                                      const Point& q) {
  return c.CheckedAdd(p, q);
}
inline absl::StatusOr<Point> ScalarMul(const Curve& c, const Scalar& k,
                                       const Point& p) {
  return c.CheckedMultiply(k, p);
}

}  // namespace scope::group

#endif  // SCOPE_GROUP_CURVE_H_
