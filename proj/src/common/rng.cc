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

#include "scope/common/rng.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "scope/common/bigint.h"
#include "scope/common/hash.h"

namespace scope {

Rng::Rng(uint64_t seed) {
  ByteWriter w;
  w.PutBytes(ByteSpan(reinterpret_cast<const uint8_t*>("scope-rng"), 9));
  w.PutU64(seed);
  Bytes key = Sha256(w.bytes());
  std::copy(key.begin(), key.end(), key_.begin());
}

Rng::Rng(FromKeyTag, const Bytes& key) {
  std::copy(key.begin(), key.begin() + 32, key_.begin());
}

Rng Rng::FromEntropy() {
  std::random_device device;
  uint64_t seed = (static_cast<uint64_t>(device()) << 32) ^ device();
  Rng rng(seed);
  // Mix in a second draw so the 64-bit seed is not the only entropy.
  ByteWriter w;
  w.PutBytes(rng.key_);
  for (int i = 0; i < 8; ++i) w.PutU32(device());
  return Rng(FromKeyTag{}, Sha256(w.bytes()));
}

void Rng::Refill() {
  ByteWriter w;
  w.PutBytes(key_);
  w.PutU64(counter_++);
  Bytes block = Sha256(w.bytes());
  std::copy(block.begin(), block.end(), block_.begin());
  block_pos_ = 0;
}

void Rng::Fill(std::span<uint8_t> out) {
  for (uint8_t& b : out) {
    if (block_pos_ == block_.size()) Refill();
    b = block_[block_pos_++];
  }
}

Bytes Rng::NextBytes(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

uint64_t Rng::NextU64() {
  std::array<uint8_t, 8> buf;
  Fill(buf);
  uint64_t v = 0;
  for (uint8_t b : buf) v = v << 8 | b;
  return v;
}

uint64_t Rng::Uniform(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Uniform bound must be positive");
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  while (true) {
    uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

mpz_class Rng::UniformBelow(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("UniformBelow bound must be positive");
  size_t bits = BitLength(bound);
  size_t nbytes = (bits + 7) / 8;
  unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
  Bytes buf(nbytes);
  while (true) {
    Fill(buf);
    buf[0] &= static_cast<uint8_t>(0xff >> excess);
    mpz_class v = BigIntFromBytes(buf);
    if (v < bound) return v;
  }
}

Rng Rng::Fork(std::string_view label) {
  ByteWriter w;
  w.PutBytes(key_);
  w.PutU64(counter_++);
  w.PutBytes(ByteSpan(reinterpret_cast<const uint8_t*>(label.data()), label.size()));
  return Rng(FromKeyTag{}, Sha256(w.bytes()));
}

}  // namespace scope
