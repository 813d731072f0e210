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

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <vector>

#include "scope/common/bigint.h"
#include "scope/common/rng.h"

namespace scope::group {
namespace {

BinaryField MakeField(int m, std::vector<int> terms) {
  auto f = BinaryField::Create(m, std::move(terms));
  EXPECT_TRUE(f.ok()) << f.status();
  return *std::move(f);
}

// Shift-and-reduce reference on small fields, polynomials packed in ints.
uint64_t NaiveMul(uint64_t a, uint64_t b, int m, uint64_t poly) {
  uint64_t acc = 0;
  for (int i = 0; i < m; ++i) {
    if ((b >> i) & 1) acc ^= a << i;
  }
  for (int d = 2 * m - 2; d >= m; --d) {
    if ((acc >> d) & 1) acc ^= poly << (d - m);
  }
  return acc;
}

// Same reference with arbitrary-precision polynomials for production sizes.
mpz_class PolyFromTerms(int m, const std::vector<int>& terms) {
  mpz_class p = 0;
  mpz_setbit(p.get_mpz_t(), m);
  for (int t : terms) mpz_setbit(p.get_mpz_t(), t);
  return p;
}

mpz_class NaiveMulBig(const mpz_class& a, const mpz_class& b, int m,
                      const mpz_class& poly) {
  mpz_class acc = 0;
  for (size_t i = 0; i < mpz_sizeinbase(b.get_mpz_t(), 2); ++i) {
    if (mpz_tstbit(b.get_mpz_t(), i)) acc ^= a << i;
  }
  for (long d = static_cast<long>(mpz_sizeinbase(acc.get_mpz_t(), 2)) - 1;
       d >= m; --d) {
    if (mpz_tstbit(acc.get_mpz_t(), d)) acc ^= poly << (d - m);
  }
  return acc;
}

mpz_class ToInt(const BinaryField& f, const FieldElement& a) {
  return BigIntFromBytes(f.ToBytes(a));
}

FieldElement FromInt(const BinaryField& f, const mpz_class& v) {
  auto e = f.FromBytes(BigIntToBytes(v, f.byte_length()));
  EXPECT_TRUE(e.ok());
  return *e;
}

TEST(BinaryFieldTest, RejectsBadPolynomials) {
  EXPECT_FALSE(BinaryField::Create(1, {0}).ok());
  EXPECT_FALSE(BinaryField::Create(8, {4, 3}).ok());  // no constant term
  EXPECT_FALSE(BinaryField::Create(8, {9, 0}).ok());
  EXPECT_FALSE(BinaryField::Create(kMaxFieldDegree + 1, {1, 0}).ok());
}

TEST(BinaryFieldTest, Gf8AdditionExample) {
  BinaryField f = MakeField(3, {1, 0});
  FieldElement a = f.FromU64(0b101);  // x^2 + 1
  FieldElement b = f.FromU64(0b011);  // x + 1
  EXPECT_EQ(f.Add(a, b), f.FromU64(0b110));
  EXPECT_EQ(f.Add(a, a), f.Zero());
  EXPECT_EQ(f.Add(a, f.Zero()), a);
}

TEST(BinaryFieldTest, Gf8MultiplicationTableMatchesNaive) {
  BinaryField f = MakeField(3, {1, 0});
  for (uint64_t a = 0; a < 8; ++a) {
    for (uint64_t b = 0; b < 8; ++b) {
      EXPECT_EQ(f.Mul(f.FromU64(a), f.FromU64(b)),
                f.FromU64(NaiveMul(a, b, 3, 0b1011)))
          << a << " * " << b;
    }
  }
}

struct SmallField {
  int m;
  std::vector<int> terms;
  uint64_t poly;
};

class SmallFieldAxioms : public ::testing::TestWithParam<SmallField> {};

TEST_P(SmallFieldAxioms, Exhaustive) {
  const SmallField& p = GetParam();
  BinaryField f = MakeField(p.m, p.terms);
  const uint64_t size = uint64_t{1} << p.m;
  std::vector<FieldElement> el;
  for (uint64_t v = 0; v < size; ++v) el.push_back(f.FromU64(v));

  for (uint64_t a = 0; a < size; ++a) {
    EXPECT_EQ(f.Mul(el[a], f.One()), el[a]);
    EXPECT_EQ(f.Mul(el[a], f.Zero()), f.Zero());
    EXPECT_EQ(f.Sqr(el[a]), f.Mul(el[a], el[a]));
    EXPECT_EQ(f.Sqr(f.Sqrt(el[a])), el[a]);
    if (a != 0) {
      EXPECT_EQ(f.Mul(el[a], f.Inv(el[a])), f.One());
    }
    for (uint64_t b = 0; b < size; ++b) {
      EXPECT_EQ(f.Mul(el[a], el[b]), f.FromU64(NaiveMul(a, b, p.m, p.poly)));
      EXPECT_EQ(f.Mul(el[a], el[b]), f.Mul(el[b], el[a]));
      for (uint64_t c = 0; c < size; ++c) {
        ASSERT_EQ(f.Mul(f.Mul(el[a], el[b]), el[c]),
                  f.Mul(el[a], f.Mul(el[b], el[c])));
        ASSERT_EQ(f.Add(f.Add(el[a], el[b]), el[c]),
                  f.Add(el[a], f.Add(el[b], el[c])));
        ASSERT_EQ(f.Mul(el[a], f.Add(el[b], el[c])),
                  f.Add(f.Mul(el[a], el[b]), f.Mul(el[a], el[c])));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Gf8To32, SmallFieldAxioms,
                         ::testing::Values(SmallField{3, {1, 0}, 0b1011},
                                           SmallField{4, {1, 0}, 0b10011},
                                           SmallField{5, {2, 0}, 0b100101}));

TEST(BinaryFieldTest, TraceAndHalfTraceSmall) {
  BinaryField f = MakeField(7, {1, 0});
  for (uint64_t v = 0; v < 128; ++v) {
    FieldElement a = f.FromU64(v);
    // Trace as the sum of the conjugates.
    FieldElement t = f.Zero();
    FieldElement c = a;
    for (int i = 0; i < 7; ++i) {
      t = f.Add(t, c);
      c = f.Sqr(c);
    }
    ASSERT_TRUE(t == f.Zero() || t == f.One());
    EXPECT_EQ(f.Trace(a), t == f.One() ? 1 : 0);
    if (f.Trace(a) == 0) {
      FieldElement z = f.HalfTrace(a);
      EXPECT_EQ(f.Add(f.Sqr(z), z), a);
    }
  }
}

TEST(BinaryFieldTest, BytesRoundTripAndRangeCheck) {
  BinaryField f = MakeField(163, {7, 6, 3, 0});
  EXPECT_EQ(f.byte_length(), 21u);
  Bytes top(21, 0);
  top[0] = 0x08;  // bit 163
  EXPECT_FALSE(f.FromBytes(top).ok());
  EXPECT_FALSE(f.FromBytes(Bytes(20, 0)).ok());
  top[0] = 0x07;
  auto e = f.FromBytes(top);
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(f.ToBytes(*e), top);
}

TEST(BinaryFieldTest, FreeFunctionsRejectDegreeMismatch) {
  BinaryField f3 = MakeField(3, {1, 0});
  BinaryField f5 = MakeField(5, {2, 0});
  EXPECT_FALSE(FieldAdd(f3, f3.One(), f5.One()).ok());
  EXPECT_FALSE(FieldMul(f5, f3.One(), f5.One()).ok());
  auto sum = FieldAdd(f3, f3.One(), f3.FromU64(2));
  ASSERT_TRUE(sum.ok());
  EXPECT_EQ(*sum, f3.FromU64(3));
}

struct BigField {
  int m;
  std::vector<int> terms;
};

class ProductionField : public ::testing::TestWithParam<BigField> {};

TEST_P(ProductionField, MatchesNaiveReference) {
  const BigField& p = GetParam();
  BinaryField f = MakeField(p.m, p.terms);
  mpz_class poly = PolyFromTerms(p.m, p.terms);
  mpz_class bound = 1;
  bound <<= p.m;
  Rng rng(static_cast<uint64_t>(p.m));
  for (int i = 0; i < 200; ++i) {
    mpz_class a = rng.UniformBelow(bound);
    mpz_class b = rng.UniformBelow(bound);
    FieldElement fa = FromInt(f, a);
    FieldElement fb = FromInt(f, b);
    ASSERT_EQ(ToInt(f, f.Mul(fa, fb)), NaiveMulBig(a, b, p.m, poly));
    ASSERT_EQ(ToInt(f, f.Sqr(fa)), NaiveMulBig(a, a, p.m, poly));
    ASSERT_EQ(ToInt(f, f.Add(fa, fb)), a ^ b);
    if (a != 0) {
      ASSERT_EQ(f.Mul(fa, f.Inv(fa)), f.One());
    }
    ASSERT_EQ(f.Sqr(f.Sqrt(fa)), fa);
    if (f.Trace(fa) == 0) {
      FieldElement z = f.HalfTrace(fa);
      ASSERT_EQ(f.Add(f.Sqr(z), z), fa);
    }
  }
}

TEST_P(ProductionField, ReducesWideInputs) {
  const BigField& p = GetParam();
  BinaryField f = MakeField(p.m, p.terms);
  mpz_class poly = PolyFromTerms(p.m, p.terms);
  Rng rng(1000 + static_cast<uint64_t>(p.m));
  std::vector<uint64_t> words(2 * f.word_count());
  for (auto& w : words) w = rng.NextU64();
  mpz_class v = 0;
  for (size_t i = words.size(); i-- > 0;) {
    v <<= 64;
    v += words[i];
  }
  mpz_class expect = NaiveMulBig(v, 1, p.m, poly);
  EXPECT_EQ(ToInt(f, f.FromWords(words)), expect);
}

INSTANTIATE_TEST_SUITE_P(NistBinary, ProductionField,
                         ::testing::Values(BigField{163, {7, 6, 3, 0}},
                                           BigField{283, {12, 7, 5, 0}},
                                           BigField{409, {87, 0}},
                                           BigField{571, {10, 5, 2, 0}}));

}  // namespace
}  // namespace scope::group
