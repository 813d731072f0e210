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

#ifndef SCOPE_CODING_PAYLOAD_H_
#define SCOPE_CODING_PAYLOAD_H_

#include <vector>

#include "absl/status/statusor.h"
#include "scope/common/bytes.h"
#include "scope/common/rng.h"
#include "scope/he/elgamal.h"

namespace scope::coding {

// Frames the payload as [u16 length][bytes] and cuts it into chunks of the
// curve's chunk capacity.
absl::StatusOr<std::vector<Bytes>> SplitPayload(const he::Curve& curve, ByteSpan payload);
// Inverse of SplitPayload; bytes past the framed length are ignored.
absl::StatusOr<Bytes> JoinPayload(const std::vector<Bytes>& chunks);

absl::StatusOr<std::vector<he::Ciphertext>> EncryptPayload(const he::Curve& curve,
                                                           const he::Point& pk,
                                                           ByteSpan payload, Rng& rng);

// Chunkwise homomorphic sum; shorter lists are padded with the zero ciphertext.
absl::StatusOr<std::vector<he::Ciphertext>> CodePayload(
    const std::vector<std::vector<he::Ciphertext>>& chunk_lists);

// Subtracts each known contribution chunkwise and strips trailing zero
// ciphertexts left by padding. Needs no key.
absl::StatusOr<std::vector<he::Ciphertext>> RemoveContributions(
    const std::vector<he::Ciphertext>& coded,
    const std::vector<std::vector<he::Ciphertext>>& known);

// RemoveContributions, then decrypt and decode each remaining chunk.
absl::StatusOr<std::vector<Bytes>> DecodeChunks(
    const he::Curve& curve, const std::vector<he::Ciphertext>& coded,
    const std::vector<std::vector<he::Ciphertext>>& known, const he::KeyPair& kp_self);
absl::StatusOr<Bytes> DecodePayload(const he::Curve& curve,
                                    const std::vector<he::Ciphertext>& coded,
                                    const std::vector<std::vector<he::Ciphertext>>& known,
                                    const he::KeyPair& kp_self);

}  // namespace scope::coding

#endif  // SCOPE_CODING_PAYLOAD_H_
