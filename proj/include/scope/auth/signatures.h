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

#ifndef SCOPE_AUTH_SIGNATURES_H_
#define SCOPE_AUTH_SIGNATURES_H_

#include <vector>

#include "absl/status/statusor.h"
#include "scope/auth/ecdsa.h"
#include "scope/common/rng.h"
#include "scope/he/elgamal.h"
#include "scope/packet/header.h"

namespace scope::auth {

// Contact signature: one signature per encrypted header field, per section.
struct SignScope {
  std::vector<Signature> sign_encode;
  std::vector<Signature> sign_report;
  std::vector<Signature> sign_ack;
  friend bool operator==(const SignScope&, const SignScope&) = default;
};

// Source signature: one signature per payload ciphertext, in chunk order.
struct SignPayload {
  std::vector<Signature> sigs;
  friend bool operator==(const SignPayload&, const SignPayload&) = default;
};

// Each signature covers the field's serialized ciphertext bytes.
SignScope SignHeader(const SigKeyPair& kp, const packet::ScopeHeader& h,
                     Rng& rng);
// Walks the encode, report and ack sections in that order and stops at the
// first field whose signature does not verify under `pk_sender`.
bool EvaluateContact(const SignScope& sig, const packet::ScopeHeader& h,
                     const PrimeCurve& curve, const PrimePoint& pk_sender);

absl::StatusOr<SignPayload> SignChunks(const SigKeyPair& kp_source,
                                       const std::vector<he::Ciphertext>& chunks,
                                       Rng& rng);
bool EvaluatePayload(const SignPayload& sig,
                     const std::vector<he::Ciphertext>& chunks,
                     const PrimeCurve& curve, const PrimePoint& pk_source);

}  // namespace scope::auth

#endif  // SCOPE_AUTH_SIGNATURES_H_
