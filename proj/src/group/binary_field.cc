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

#include "scope/group/binary_field.h"

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace scope::group {
namespace {

using Wide = std::array<uint64_t, 2 * kMaxFieldWords>;

constexpr std::array<uint16_t, 256> MakeSpreadTable() {
  std::array<uint16_t, 256> table{};
  for (int i = 0; i < 256; ++i) {
    uint16_t v = 0;
    for (int b = 0; b < 8; ++b) {
      if (i >> b & 1) v |= static_cast<uint16_t>(1u << (2 * b));
    }
    table[i] = v;
  }
  return table;
}

constexpr std::array<uint16_t, 256> kSpread = MakeSpreadTable();

uint64_t SpreadHalf(uint32_t v) {
  return static_cast<uint64_t>(kSpread[v & 0xff]) |
         static_cast<uint64_t>(kSpread[(v >> 8) & 0xff]) << 16 |
         static_cast<uint64_t>(kSpread[(v >> 16) & 0xff]) << 32 |
         static_cast<uint64_t>(kSpread[(v >> 24) & 0xff]) << 48;
}

void ClmulPortable(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi) {
  unsigned __int128 acc = 0;
  unsigned __int128 wide_a = a;
  for (int i = 0; i < 64; ++i) {
    unsigned __int128 mask = -static_cast<unsigned __int128>((b >> i) & 1);
    acc ^= (wide_a << i) & mask;
  }
  lo = static_cast<uint64_t>(acc);
  hi = static_cast<uint64_t>(acc >> 64);
}

void MulWordsPortable(const uint64_t* a, const uint64_t* b, int n, Wide& out) {
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      uint64_t lo, hi;
      ClmulPortable(a[i], b[j], lo, hi);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
}

__attribute__((target("pclmul,sse2"))) void MulWordsPclmul(const uint64_t* a,
                                                           const uint64_t* b,
                                                           int n, Wide& out) {
  for (int i = 0; i < n; ++i) {
    __m128i x = _mm_cvtsi64_si128(static_cast<long long>(a[i]));
    for (int j = 0; j < n; ++j) {
      __m128i y = _mm_cvtsi64_si128(static_cast<long long>(b[j]));
      __m128i r = _mm_clmulepi64_si128(x, y, 0x00);
      out[i + j] ^= static_cast<uint64_t>(_mm_cvtsi128_si64(r));
      out[i + j + 1] ^=
          static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_srli_si128(r, 8)));
    }
  }
}

bool HasPclmul() {
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("pclmul") != 0;
  }();
  return has;
}

// out ^= t * x^shift, where shift may be negative if the low bits of t that
// would fall below x^0 are known to be zero.
inline void XorShifted(Wide& out, uint64_t t, int shift) {
  if (shift < 0) {
    out[0] ^= t >> (-shift);
    return;
  }
  int word = shift / 64;
  int bit = shift % 64;
  out[word] ^= t << bit;
  if (bit != 0) out[word + 1] ^= t >> (64 - bit);
}

}  // namespace

bool FieldElement::IsZero() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](uint64_t w) { return w == 0; });
}

absl::StatusOr<BinaryField> BinaryField::Create(int m,
                                                std::vector<int> lower_terms) {
  if (m < 2 || m > kMaxFieldDegree) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported field degree ", m));
  }
  std::sort(lower_terms.begin(), lower_terms.end());
  lower_terms.erase(std::unique(lower_terms.begin(), lower_terms.end()),
                    lower_terms.end());
  if (lower_terms.empty() || lower_terms.front() != 0) {
    return absl::InvalidArgumentError(
        "reduction polynomial must have a constant term");
  }
  if (lower_terms.back() >= m) {
    return absl::InvalidArgumentError("reduction term exceeds field degree");
  }
  return BinaryField(m, std::move(lower_terms));
}

BinaryField::BinaryField(int m, std::vector<int> terms)
    : m_(m), words_((m + 63) / 64), terms_(std::move(terms)) {
  // Trace is GF(2)-linear, so Tr(a) is the parity of a & mask where
  // mask bit i holds Tr(x^i).
  for (int i = 0; i < m_; ++i) {
    FieldElement xi = Zero();
    xi.words_[i / 64] = uint64_t{1} << (i % 64);
    FieldElement acc = xi;
    FieldElement t = xi;
    for (int k = 1; k < m_; ++k) {
      t = Sqr(t);
      acc = Add(acc, t);
    }
    if (!acc.IsZero()) trace_mask_[i / 64] |= uint64_t{1} << (i % 64);
  }
}

FieldElement BinaryField::Zero() const {
  FieldElement e;
  e.degree_ = m_;
  return e;
}

FieldElement BinaryField::One() const {
  FieldElement e = Zero();
  e.words_[0] = 1;
  return e;
}

FieldElement BinaryField::Reduce(Wide& c) const {
  const int top_word = m_ / 64;
  const int top_bit = m_ % 64;
  for (int i = static_cast<int>(c.size()) - 1; i >= top_word; --i) {
    while (true) {
      uint64_t t = c[i];
      if (i == top_word) t &= ~((uint64_t{1} << top_bit) - 1);
      if (t == 0) break;
      c[i] ^= t;
      const int base = 64 * i - m_;
      for (int term : terms_) XorShifted(c, t, base + term);
    }
  }
  FieldElement out = Zero();
  std::copy(c.begin(), c.begin() + words_, out.words_.begin());
  return out;
}

FieldElement BinaryField::FromWords(std::span<const uint64_t> words) const {
  Wide wide{};
  // Callers pass at most 2 * kMaxFieldWords words; anything beyond is dropped.
  size_t n = std::min(words.size(), wide.size());
  std::copy(words.begin(), words.begin() + n, wide.begin());
  return Reduce(wide);
}

FieldElement BinaryField::FromU64(uint64_t poly) const {
  uint64_t w[1] = {poly};
  return FromWords(w);
}

absl::StatusOr<FieldElement> BinaryField::FromBytes(ByteSpan bytes) const {
  if (bytes.size() != byte_length()) {
    return absl::InvalidArgumentError(
        absl::StrCat("field element needs ", byte_length(), " bytes, got ",
                     bytes.size()));
  }
  FieldElement out = Zero();
  const size_t n = bytes.size();
  for (size_t i = 0; i < n; ++i) {
    size_t bit_pos = 8 * (n - 1 - i);
    out.words_[bit_pos / 64] |= static_cast<uint64_t>(bytes[i]) << (bit_pos % 64);
  }
  if (!Contains(out)) {
    return absl::InvalidArgumentError("field element has degree >= m");
  }
  return out;
}

Bytes BinaryField::ToBytes(const FieldElement& a) const {
  const size_t n = byte_length();
  Bytes out(n);
  for (size_t i = 0; i < n; ++i) {
    size_t bit_pos = 8 * (n - 1 - i);
    out[i] = static_cast<uint8_t>(a.words_[bit_pos / 64] >> (bit_pos % 64));
  }
  return out;
}

bool BinaryField::Contains(const FieldElement& a) const {
  if (a.degree_ != m_) return false;
  for (int i = 0; i < kMaxFieldWords; ++i) {
    uint64_t allowed;
    if (i < m_ / 64) {
      allowed = ~uint64_t{0};
    } else if (i == m_ / 64) {
      allowed = (uint64_t{1} << (m_ % 64)) - 1;
    } else {
      allowed = 0;
    }
    if (a.words_[i] & ~allowed) return false;
  }
  return true;
}

FieldElement BinaryField::Add(const FieldElement& a,
                              const FieldElement& b) const {
  FieldElement out = Zero();
  for (int i = 0; i < words_; ++i) out.words_[i] = a.words_[i] ^ b.words_[i];
  return out;
}

FieldElement BinaryField::Mul(const FieldElement& a,
                              const FieldElement& b) const {
  Wide wide{};
  if (HasPclmul()) {
    MulWordsPclmul(a.words_.data(), b.words_.data(), words_, wide);
  } else {
    MulWordsPortable(a.words_.data(), b.words_.data(), words_, wide);
  }
  return Reduce(wide);
}

FieldElement BinaryField::Sqr(const FieldElement& a) const {
  Wide wide{};
  for (int i = 0; i < words_; ++i) {
    wide[2 * i] = SpreadHalf(static_cast<uint32_t>(a.words_[i]));
    wide[2 * i + 1] = SpreadHalf(static_cast<uint32_t>(a.words_[i] >> 32));
  }
  return Reduce(wide);
}

FieldElement BinaryField::SqrN(const FieldElement& a, int k) const {
  FieldElement out = a;
  for (int i = 0; i < k; ++i) out = Sqr(out);
  return out;
}

FieldElement BinaryField::Inv(const FieldElement& a) const {
  if (a.IsZero()) return Zero();
  // Itoh-Tsujii: build a^(2^(m-1) - 1) along the binary expansion of m-1,
  // then one squaring gives a^(2^m - 2) = a^-1.
  const int e = m_ - 1;
  const int top = std::bit_width(static_cast<unsigned>(e)) - 1;
  FieldElement beta = a;
  int k = 1;
  for (int bit = top - 1; bit >= 0; --bit) {
    beta = Mul(SqrN(beta, k), beta);
    k *= 2;
    if ((e >> bit) & 1) {
      beta = Mul(Sqr(beta), a);
      k += 1;
    }
  }
  return Sqr(beta);
}

int BinaryField::Trace(const FieldElement& a) const {
  int parity = 0;
  for (int i = 0; i < words_; ++i) {
    parity ^= std::popcount(a.words_[i] & trace_mask_[i]) & 1;
  }
  return parity;
}

FieldElement BinaryField::HalfTrace(const FieldElement& a) const {
  FieldElement acc = a;
  FieldElement t = a;
  for (int i = 1; i <= (m_ - 1) / 2; ++i) {
    t = Sqr(Sqr(t));
    acc = Add(acc, t);
  }
  return acc;
}

absl::StatusOr<FieldElement> FieldAdd(const BinaryField& field,
                                      const FieldElement& a,
                                      const FieldElement& b) {
  if (!field.Contains(a) || !field.Contains(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("field degree mismatch: ", a.degree(), " vs ", b.degree(),
                     " in GF(2^", field.degree(), ")"));
  }
  return field.Add(a, b);
}

absl::StatusOr<FieldElement> FieldMul(const BinaryField& field,
                                      const FieldElement& a,
                                      const FieldElement& b) {
  if (!field.Contains(a) || !field.Contains(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("field degree mismatch: ", a.degree(), " vs ", b.degree(),
                     " in GF(2^", field.degree(), ")"));
  }
  return field.Mul(a, b);
}

}  // namespace scope::group
