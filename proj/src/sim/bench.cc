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

#include "scope/sim/bench.h"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "nlohmann/json.hpp"
#include "scope/auth/ecdsa.h"
#include "scope/common/rng.h"
#include "scope/common/status_macros.h"
#include "scope/group/curve.h"
#include "scope/he/elgamal.h"
#include "scope/sim/simulator.h"

namespace scope::sim {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

BenchRecord Row(int scenario, std::string mode, int ecc, int ecdsa, int sigs,
                std::string metric, double sum, const BenchOptions& o) {
  return {scenario, std::move(mode), ecc, ecdsa, sigs, std::move(metric), sum / o.trials,
          o.trials, o.seed};
}

void Progress(const BenchOptions& o, const std::string& msg) {
  if (o.progress) o.progress(msg);
}

absl::Status KeySizes(const BenchOptions& o, std::vector<BenchRecord>& out) {
  for (int id : o.scenarios) {
    ASSIGN_OR_RETURN(Scenario s, BuildScenario(id));
    for (int bits : o.ecc_bits) {
      ASSIGN_OR_RETURN(const he::Curve* curve, he::Curve::ForKeyBits(bits));
      size_t size = o.payload_chunks * curve->ChunkCapacity() - 2;
      double agg = 0, e2e = 0, cond = 0;
      for (int t = 0; t < o.trials; ++t) {
        RunConfig cfg;
        cfg.mode = Mode::kScope;
        cfg.ecc_bits = bits;
        cfg.seed = o.seed + t;
        ASSIGN_OR_RETURN(RunResult r, Run(s, RandomPayloads(s, size, cfg.seed), cfg));
        if (!r.undeliverable.empty()) {
          return absl::InternalError(absl::StrCat("bench run lost a flow in scenario ", id));
        }
        agg += r.timings.payload_encrypt_ms + r.timings.aggregate_ms;
        e2e += r.timings.total_ms;
        cond += r.timings.condition_ms;
      }
      out.push_back(Row(id, "scope", bits, 0, 0, "aggregate_time", agg, o));
      out.push_back(Row(id, "scope", bits, 0, 0, "end_to_end_time", e2e, o));
      out.push_back(Row(id, "scope", bits, 0, 0, "condition_eval_time", cond, o));
      Progress(o, absl::StrCat("key-sizes scenario ", id, " ecc ", bits));
    }
  }
  return absl::OkStatus();
}

absl::Status Signatures(const BenchOptions& o, std::vector<BenchRecord>& out) {
  for (int sbits : o.ecdsa_bits) {
    ASSIGN_OR_RETURN(const auth::PrimeCurve* sc, auth::PrimeCurve::ForBits(sbits));
    for (int n : o.signature_counts) {
      double sum = 0;
      for (int t = 0; t < o.trials; ++t) {
        Rng rng(o.seed + t);
        auth::SigKeyPair kp = auth::SigKeygen(*sc, rng);
        std::vector<Bytes> msgs;
        for (int k = 0; k < n; ++k) msgs.push_back(rng.NextBytes(64));
        auto start = Clock::now();
        for (const auto& m : msgs) (void)auth::EcdsaSign(kp, m, rng);
        sum += Since(start);
      }
      out.push_back(Row(0, "robust", 0, sbits, n, "signature_gen_time", sum, o));
    }
    Progress(o, absl::StrCat("signatures ecdsa ", sbits));
  }
  return absl::OkStatus();
}

absl::Status EncSign(const BenchOptions& o, std::vector<BenchRecord>& out) {
  for (int bits : o.ecc_bits) {
    ASSIGN_OR_RETURN(const he::Curve* curve, he::Curve::ForKeyBits(bits));
    for (int sbits : o.ecdsa_bits) {
      ASSIGN_OR_RETURN(const auth::PrimeCurve* sc, auth::PrimeCurve::ForBits(sbits));
      for (int n : o.signature_counts) {
        double sum = 0;
        for (int t = 0; t < o.trials; ++t) {
          Rng rng(o.seed + t);
          he::KeyPair kp = he::Keygen(*curve, rng);
          auth::SigKeyPair sk = auth::SigKeygen(*sc, rng);
          std::vector<he::Point> pieces;
          for (int k = 0; k < n; ++k) {
            ASSIGN_OR_RETURN(he::Point m,
                             curve->EncodeChunk(rng.NextBytes(curve->ChunkCapacity())));
            pieces.push_back(m);
          }
          auto start = Clock::now();
          for (const auto& m : pieces) {
            ASSIGN_OR_RETURN(he::Ciphertext c, he::EncryptRandom(*curve, kp.pk, m, rng));
            (void)auth::EcdsaSign(sk, he::SerializeCiphertext(c), rng);
          }
          sum += Since(start);
        }
        out.push_back(Row(0, "robust", bits, sbits, n, "enc_plus_sign_time", sum, o));
      }
      Progress(o, absl::StrCat("enc-sign ecc ", bits, " ecdsa ", sbits));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<BenchRecord>> RunBench(const BenchOptions& opts) {
  if (opts.trials < 1) return absl::InvalidArgumentError("trials must be at least 1");
  std::vector<BenchRecord> out;
  if (opts.families.count(BenchFamily::kKeySizes)) RETURN_IF_ERROR(KeySizes(opts, out));
  if (opts.families.count(BenchFamily::kSignatures)) RETURN_IF_ERROR(Signatures(opts, out));
  if (opts.families.count(BenchFamily::kEncSign)) RETURN_IF_ERROR(EncSign(opts, out));
  auto key = [](const BenchRecord& r) {
    return std::tie(r.metric, r.scenario, r.ecc_bits, r.ecdsa_bits, r.signatures);
  };
  std::sort(out.begin(), out.end(),
            [&](const BenchRecord& a, const BenchRecord& b) { return key(a) < key(b); });
  return out;
}

std::string BenchCsv(const std::vector<BenchRecord>& rows) {
  std::string out = absl::StrCat(kBenchCsvHeader, "\n");
  for (const auto& r : rows) {
    absl::StrAppend(&out, r.scenario, ",", r.mode, ",", r.ecc_bits, ",", r.ecdsa_bits, ",",
                    r.signatures, ",", r.metric, ",", absl::StrFormat("%.4f", r.mean_ms), ",",
                    r.trials, ",", r.seed, "\n");
  }
  return out;
}

nlohmann::json BenchJson(const std::vector<BenchRecord>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"scenario", r.scenario},
                   {"mode", r.mode},
                   {"ecc_bits", r.ecc_bits},
                   {"ecdsa_bits", r.ecdsa_bits},
                   {"signatures", r.signatures},
                   {"metric", r.metric},
                   {"mean_ms", r.mean_ms},
                   {"trials", r.trials},
                   {"seed", r.seed}});
  }
  return out;
}

}  // namespace scope::sim
