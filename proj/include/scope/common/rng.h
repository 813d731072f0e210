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

#ifndef SCOPE_COMMON_RNG_H_
#define SCOPE_COMMON_RNG_H_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "scope/common/bytes.h"

namespace scope {

// Deterministic SHA-256 counter-mode generator. Two instances built from the
// same seed produce identical streams, which is what makes simulator runs
// bit-reproducible. Not thread-safe; give each thread its own instance.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  // Seeds from the operating system.
  static Rng FromEntropy();

  void Fill(std::span<uint8_t> out);
  Bytes NextBytes(size_t n);
  uint64_t NextU64();
  // Uniform in [0, bound). bound must be positive.
  uint64_t Uniform(uint64_t bound);
  // Uniform in [0, bound) by rejection sampling.
  mpz_class UniformBelow(const mpz_class& bound);

  // Independent child stream, keyed by this stream's state and `label`.
  Rng Fork(std::string_view label);

 private:
  struct FromKeyTag {};
  Rng(FromKeyTag, const Bytes& key);
  void Refill();

  std::array<uint8_t, 32> key_{};
  uint64_t counter_ = 0;
  std::array<uint8_t, 32> block_{};
  size_t block_pos_ = 32;
};

}  // namespace scope

#endif  // SCOPE_COMMON_RNG_H_
