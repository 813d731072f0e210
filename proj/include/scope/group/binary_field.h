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

#ifndef SCOPE_GROUP_BINARY_FIELD_H_
#define SCOPE_GROUP_BINARY_FIELD_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "scope/common/bytes.h"

namespace scope::group {

// Enough 64-bit words for the largest supported field, GF(2^571).
inline constexpr int kMaxFieldWords = 9;
inline constexpr int kMaxFieldDegree = kMaxFieldWords * 64 - 5;

// Polynomial-basis element of GF(2^m): bit i is the coefficient of x^i.
// Carries its field degree so mixing elements of different fields is caught.
class FieldElement {
 public:
  using Words = std::array<uint64_t, kMaxFieldWords>;

  FieldElement() = default;

  int degree() const { return degree_; }
  const Words& words() const { return words_; }
  bool IsZero() const;
  bool bit(int i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.degree_ == b.degree_ && a.words_ == b.words_;
  }

 private:
  friend class BinaryField;

  Words words_{};
  int degree_ = 0;
};

// GF(2^m) with reduction polynomial x^m + sum_j x^{terms[j]}.
class BinaryField {
 public:
  // `lower_terms` are the exponents below m that appear in the reduction
  // polynomial; 0 must be among them.
  static absl::StatusOr<BinaryField> Create(int m, std::vector<int> lower_terms);

  int degree() const { return m_; }
  int word_count() const { return words_; }
  // ceil(m/8): the fixed serialized width.
  size_t byte_length() const { return static_cast<size_t>((m_ + 7) / 8); }
  const std::vector<int>& lower_terms() const { return terms_; }

  FieldElement Zero() const;
  FieldElement One() const;
  // Reduces an arbitrary polynomial given as little-endian words.
  FieldElement FromWords(std::span<const uint64_t> words) const;
  FieldElement FromU64(uint64_t poly) const;
  // Exactly byte_length() big-endian bytes; rejects values of degree >= m.
  absl::StatusOr<FieldElement> FromBytes(ByteSpan bytes) const;
  Bytes ToBytes(const FieldElement& a) const;
  // True if `a` belongs to this field (degree tag and range).
  bool Contains(const FieldElement& a) const;

  FieldElement Add(const FieldElement& a, const FieldElement& b) const;
  FieldElement Mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement Sqr(const FieldElement& a) const;
  // Multiplicative inverse; Inv(0) is 0.
  FieldElement Inv(const FieldElement& a) const;
  FieldElement Div(const FieldElement& a, const FieldElement& b) const {
    return Mul(a, Inv(b));
  }
  // a^(2^k).
  FieldElement SqrN(const FieldElement& a, int k) const;
  // Absolute trace to GF(2).
  int Trace(const FieldElement& a) const;
  // Half-trace; solves z^2 + z = a when m is odd and Trace(a) == 0.
  FieldElement HalfTrace(const FieldElement& a) const;
  // Unique square root.
  FieldElement Sqrt(const FieldElement& a) const { return SqrN(a, m_ - 1); }

 private:
  BinaryField(int m, std::vector<int> terms);

  // Reduces a 2*kMaxFieldWords product in place and returns the element.
  FieldElement Reduce(std::array<uint64_t, 2 * kMaxFieldWords>& wide) const;

  int m_ = 0;
  int words_ = 0;
  std::vector<int> terms_;
  FieldElement::Words trace_mask_{};
};

// Bitwise XOR of coefficient vectors; fails on a degree mismatch.
absl::StatusOr<FieldElement> FieldAdd(const BinaryField& field,
                                      const FieldElement& a,
                                      const FieldElement& b);
// Product reduced modulo the field polynomial; fails on a degree mismatch.
absl::StatusOr<FieldElement> FieldMul(const BinaryField& field,
                                      const FieldElement& a,
                                      const FieldElement& b);

}  // namespace scope::group

#endif  // SCOPE_GROUP_BINARY_FIELD_H_
