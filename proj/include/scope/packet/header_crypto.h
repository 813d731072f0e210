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

#ifndef SCOPE_PACKET_HEADER_CRYPTO_H_
#define SCOPE_PACKET_HEADER_CRYPTO_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "scope/he/elgamal.h"
#include "scope/packet/header.h"

namespace scope::packet {

// Deterministic encryption of one header value: the chunk [tag][value] with
// the value big-endian in 4 bytes (ids) or 8 bytes (bitmaps).
absl::StatusOr<he::Ciphertext> EncryptField(const he::Curve& curve, FieldTag tag,
                                            uint64_t value, const he::FlowKey& fk,
                                            const he::Point& pk);

absl::StatusOr<ScopeHeader> EncryptHeader(const he::Curve& curve,
                                          const CopeHeader& h,
                                          const he::FlowKey& fk,
                                          const he::Point& pk_dest);

// Holder-of-key inverse of EncryptHeader.
absl::StatusOr<CopeHeader> DecryptHeader(const he::Curve& curve,
                                         const ScopeHeader& h,
                                         const he::KeyPair& kp);

}  // namespace scope::packet

#endif  // SCOPE_PACKET_HEADER_CRYPTO_H_
