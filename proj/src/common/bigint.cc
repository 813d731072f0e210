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

#include "scope/common/bigint.h"

#include <stdexcept>
#include <string>

namespace scope {

Bytes BigIntToBytes(const mpz_class& value, size_t width) {
  if (value < 0) throw std::invalid_argument("negative big integer");
  size_t needed = (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
  if (value == 0) needed = 0;
  if (needed > width) throw std::invalid_argument("big integer exceeds width");
  Bytes out(width, 0);
  size_t count = 0;
  mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0,
             value.get_mpz_t());
  return out;
}

mpz_class BigIntFromBytes(ByteSpan bytes) {
  mpz_class out;
  if (bytes.empty()) return out;
  mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return out;
}

mpz_class BigIntFromHex(std::string_view hex) {
  return mpz_class(std::string(hex), 16);
}

size_t BitLength(const mpz_class& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

}  // namespace scope
