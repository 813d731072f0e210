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

#include "scope/auth/signatures.h"

#include "absl/status/status.h"

namespace scope::auth {
namespace {

std::vector<Signature> SignFields(const SigKeyPair& kp,
                                  const std::vector<const he::Ciphertext*>& fields,
                                  Rng& rng) {
  std::vector<Signature> out;
  out.reserve(fields.size());
  for (const he::Ciphertext* c : fields) {
    out.push_back(EcdsaSign(kp, he::SerializeCiphertext(*c), rng));
  }
  return out;
}

bool VerifyFields(const std::vector<Signature>& sigs,
                  const std::vector<const he::Ciphertext*>& fields,
                  const PrimeCurve& curve, const PrimePoint& pk) {
  if (sigs.size() != fields.size()) return false;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (!EcdsaVerify(curve, pk, he::SerializeCiphertext(*fields[i]), sigs[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace

SignScope SignHeader(const SigKeyPair& kp, const packet::ScopeHeader& h,
                     Rng& rng) {
  SignScope out;
  out.sign_encode = SignFields(kp, packet::EncodeFields(h), rng);
  out.sign_report = SignFields(kp, packet::ReportFields(h), rng);
  out.sign_ack = SignFields(kp, packet::AckFields(h), rng);
  return out;
}

bool EvaluateContact(const SignScope& sig, const packet::ScopeHeader& h,
                     const PrimeCurve& curve, const PrimePoint& pk_sender) {
  return VerifyFields(sig.sign_encode, packet::EncodeFields(h), curve, pk_sender) &&
         VerifyFields(sig.sign_report, packet::ReportFields(h), curve, pk_sender) &&
         VerifyFields(sig.sign_ack, packet::AckFields(h), curve, pk_sender);
}

absl::StatusOr<SignPayload> SignChunks(const SigKeyPair& kp_source,
                                       const std::vector<he::Ciphertext>& chunks,
                                       Rng& rng) {
  if (chunks.empty()) return absl::InvalidArgumentError("payload has no chunks");
  SignPayload out;
  out.sigs.reserve(chunks.size());
  for (const he::Ciphertext& c : chunks) {
    out.sigs.push_back(EcdsaSign(kp_source, he::SerializeCiphertext(c), rng));
  }
  return out;
}

bool EvaluatePayload(const SignPayload& sig,
                     const std::vector<he::Ciphertext>& chunks,
                     const PrimeCurve& curve, const PrimePoint& pk_source) {
  if (sig.sigs.size() != chunks.size()) return false;
  for (size_t i = 0; i < chunks.size(); ++i) {
    if (!EcdsaVerify(curve, pk_source, he::SerializeCiphertext(chunks[i]),
                     sig.sigs[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace scope::auth
