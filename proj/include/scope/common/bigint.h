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

#ifndef SCOPE_COMMON_BIGINT_H_
#define SCOPE_COMMON_BIGINT_H_

#include <gmpxx.h>

#include <cstddef>
#include <string_view>

#include "scope/common/bytes.h"

namespace scope {

// Big-endian, unsigned. The value must fit in `width` bytes.
Bytes BigIntToBytes(const mpz_class& value, size_t width);
mpz_class BigIntFromBytes(ByteSpan bytes);
mpz_class BigIntFromHex(std::string_view hex);
size_t BitLength(const mpz_class& value);

}  // namespace scope

#endif  // SCOPE_COMMON_BIGINT_H_
