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

#include "scope/coding/payload.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "scope/common/status_macros.h"

namespace scope::coding {

using he::Ciphertext;

absl::StatusOr<std::vector<Bytes>> SplitPayload(const he::Curve& curve, ByteSpan payload) {
  if (payload.size() > 0xffff) {
    return absl::InvalidArgumentError("payload longer than 65535 bytes");
  }
  size_t cap = curve.ChunkCapacity();
  if (cap == 0) {
    return absl::FailedPreconditionError(absl::StrCat(curve.name(), " has no chunk codec"));
  }
  ByteWriter w;
  w.PutU16(static_cast<uint16_t>(payload.size()));
  w.PutBytes(payload);
  const Bytes& framed = w.bytes();
  std::vector<Bytes> out;
  for (size_t off = 0; off < framed.size(); off += cap) {
    size_t n = std::min(cap, framed.size() - off);
    out.emplace_back(framed.begin() + off, framed.begin() + off + n);
  }
  return out;
}

absl::StatusOr<Bytes> JoinPayload(const std::vector<Bytes>& chunks) {
  Bytes framed;
  for (const auto& c : chunks) framed.insert(framed.end(), c.begin(), c.end());
  ByteReader r(framed, "payload framing");
  ASSIGN_OR_RETURN(uint16_t len, r.GetU16());
  ASSIGN_OR_RETURN(ByteSpan body, r.GetBytes(len));
  return Bytes(body.begin(), body.end());
}

absl::StatusOr<std::vector<Ciphertext>> EncryptPayload(const he::Curve& curve,
                                                       const he::Point& pk,
                                                       ByteSpan payload, Rng& rng) {
  ASSIGN_OR_RETURN(std::vector<Bytes> chunks, SplitPayload(curve, payload));
  std::vector<Ciphertext> out;
  for (const auto& c : chunks) {
    ASSIGN_OR_RETURN(he::Point m, curve.EncodeChunk(c));
    ASSIGN_OR_RETURN(Ciphertext ct, he::EncryptRandom(curve, pk, m, rng));
    out.push_back(std::move(ct));
  }
  return out;
}

absl::StatusOr<std::vector<Ciphertext>> CodePayload(
    const std::vector<std::vector<Ciphertext>>& chunk_lists) {
  size_t width = 0;
  const he::Curve* curve = nullptr;
  for (const auto& list : chunk_lists) {
    width = std::max(width, list.size());
    if (!list.empty() && curve == nullptr) curve = list.front().curve();
  }
  if (curve == nullptr) return absl::InvalidArgumentError("nothing to code");
  std::vector<Ciphertext> out(width, Ciphertext::Zero(*curve));
  for (const auto& list : chunk_lists) {
    for (size_t k = 0; k < list.size(); ++k) {
      ASSIGN_OR_RETURN(out[k], he::CtAdd(out[k], list[k]));
    }
  }
  return out;
}

absl::StatusOr<std::vector<Ciphertext>> RemoveContributions(
    const std::vector<Ciphertext>& coded, const std::vector<std::vector<Ciphertext>>& known) {
  std::vector<Ciphertext> out = coded;
  for (const auto& list : known) {
    if (list.size() > out.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "known contribution has ", list.size(), " chunks, coded payload ", out.size()));
    }
    for (size_t k = 0; k < list.size(); ++k) {
      ASSIGN_OR_RETURN(out[k], he::CtSub(out[k], list[k]));
    }
  }
  while (!out.empty() && out.back().IsZero() && out.back().layers().empty()) {
    out.pop_back();
  }
  return out;
}

absl::StatusOr<std::vector<Bytes>> DecodeChunks(
    const he::Curve& curve, const std::vector<Ciphertext>& coded,
    const std::vector<std::vector<Ciphertext>>& known, const he::KeyPair& kp_self) {
  ASSIGN_OR_RETURN(std::vector<Ciphertext> own, RemoveContributions(coded, known));
  std::vector<Bytes> out;
  for (size_t k = 0; k < own.size(); ++k) {
    if (own[k].layers().size() != 1) {
      return absl::FailedPreconditionError(absl::StrCat(
          "chunk ", k, " carries ", own[k].layers().size(),
          " layers after removing known contributions"));
    }
    ASSIGN_OR_RETURN(he::Point m, he::Decrypt(curve, kp_self, own[k]));
    ASSIGN_OR_RETURN(Bytes b, curve.DecodeChunk(m));
    out.push_back(std::move(b));
  }
  return out;
}

absl::StatusOr<Bytes> DecodePayload(const he::Curve& curve, const std::vector<Ciphertext>& coded,
                                    const std::vector<std::vector<Ciphertext>>& known,
                                    const he::KeyPair& kp_self) {
  ASSIGN_OR_RETURN(std::vector<Bytes> chunks, DecodeChunks(curve, coded, known, kp_self));
  return JoinPayload(chunks);
}

}  // namespace scope::coding
