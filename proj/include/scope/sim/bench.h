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

#ifndef SCOPE_SIM_BENCH_H_
#define SCOPE_SIM_BENCH_H_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json_fwd.hpp"

namespace scope::sim {

enum class BenchFamily { kKeySizes, kSignatures, kEncSign };

// One cell of the sweep. Columns that do not apply to a family are 0.
struct BenchRecord {
  int scenario = 0;
  std::string mode;
  int ecc_bits = 0;
  int ecdsa_bits = 0;
  int signatures = 0;
  std::string metric;
  double mean_ms = 0;
  int trials = 0;
  uint64_t seed = 0;
};

struct BenchOptions {
  std::set<BenchFamily> families = {BenchFamily::kKeySizes, BenchFamily::kSignatures,
                                    BenchFamily::kEncSign};
  std::vector<int> scenarios = {1, 2, 3, 4};
  std::vector<int> ecc_bits = {163, 283, 409, 571};
  std::vector<int> ecdsa_bits = {384, 521};
  std::vector<int> signature_counts = {5, 10, 15, 20};
  int trials = 20;
  uint64_t seed = 0;
  // Payload length in chunks, the same on every curve.
  int payload_chunks = 16;
  std::function<void(const std::string&)> progress;
};

// Key-size rows: scope-mode runs per (scenario, ECC size) reporting
// aggregate_time (source payload encryption plus homomorphic aggregation),
// end_to_end_time and condition_eval_time. Signature rows:
// signature_gen_time per (count, ECDSA size). Enc-sign rows:
// enc_plus_sign_time per (ECC size, ECDSA size, count). Rows come back sorted.
absl::StatusOr<std::vector<BenchRecord>> RunBench(const BenchOptions& opts);

inline constexpr const char* kBenchCsvHeader =
    "scenario,mode,ecc_bits,ecdsa_bits,signatures,metric,mean_ms,trials,seed";
std::string BenchCsv(const std::vector<BenchRecord>& rows);
nlohmann::json BenchJson(const std::vector<BenchRecord>& rows);

}  // namespace scope::sim

#endif  // SCOPE_SIM_BENCH_H_
