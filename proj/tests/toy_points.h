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

#ifndef SCOPE_TESTS_TOY_POINTS_H_
#define SCOPE_TESTS_TOY_POINTS_H_

#include <vector>

#include "scope/group/curve.h"

namespace scope::testing {

// Every point of the toy curve, identity first, found by brute force.
inline std::vector<group::Point> AllToyPoints() {
  const group::Curve& c = group::Curve::Toy();
  const group::BinaryField& f = c.field();
  std::vector<group::Point> pts = {group::Point::Identity()};
  for (uint64_t x = 0; x < 128; ++x) {
    for (uint64_t y = 0; y < 128; ++y) {
      group::Point p = group::Point::Affine(f.FromU64(x), f.FromU64(y));
      if (c.IsOnCurve(p)) pts.push_back(p);
    }
  }
  return pts;
}

// Left-to-right double-and-add, independent of the library's ladder.
inline group::Point DoubleAndAdd(const group::Curve& c, const mpz_class& k,
                                 const group::Point& p) {
  group::Point acc = group::Point::Identity();
  if (k <= 0) return acc;
  for (long i = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; i >= 0;
       --i) {
    acc = c.Double(acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = c.Add(acc, p);
  }
  return acc;
}

}  // namespace scope::testing

#endif  // SCOPE_TESTS_TOY_POINTS_H_
