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

#ifndef SCOPE_SIM_SIMULATOR_H_
#define SCOPE_SIM_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json_fwd.hpp"
#include "scope/common/bytes.h"
#include "scope/sim/scenario.h"

namespace scope::sim {

enum class Mode { kCope, kScope, kRobust };
enum class AdversaryMode { kHonestButCurious, kMalicious };

std::string_view ModeName(Mode m);
absl::StatusOr<Mode> ParseMode(std::string_view s);
std::string_view AdversaryModeName(AdversaryMode m);
absl::StatusOr<AdversaryMode> ParseAdversaryMode(std::string_view s);

struct AdversaryConfig {
  NodeId node = 0;
  AdversaryMode mode = AdversaryMode::kHonestButCurious;
};

struct RunConfig {
  Mode mode = Mode::kCope;
  bool coding = true;
  uint64_t seed = 0;
  int ecc_bits = 163;
  int ecdsa_bits = 384;
  std::optional<AdversaryConfig> adversary;
  int max_rounds = 256;
};

struct TransmissionRecord {
  int round = 0;
  NodeId sender = 0;
  std::vector<NodeId> receivers;
  Bytes bytes;
  bool coded = false;
  // Control traffic of the secure coding condition; not counted as a
  // transmission.
  bool control = false;
};

struct TransmissionLog {
  std::vector<TransmissionRecord> records;
  int unicast_count = 0;    // native packets
  int broadcast_count = 0;  // coded packets
  int coded_packet_count = 0;
  int dropped_by_auth_count = 0;

  int transmissions() const { return unicast_count + broadcast_count; }
  // Counters agree with the record list.
  bool Consistent() const;
  nlohmann::json ToJson() const;
  // Every byte `node` sent, received or overheard, control traffic included.
  Bytes ObservationLog(NodeId node) const;
};

struct InferenceAttempt {
  int round = 0;
  std::string method;       // "xor-difference" or "homomorphic-difference"
  Bytes recovered;          // what the node obtained
  bool plaintext_recovered = false;
};

struct TamperAttempt {
  int round = 0;
  int flow = 0;
  size_t chunk = 0;
  bool detected = false;    // dropped by an authentication check
  bool delivered = false;   // altered payload reached the destination
};

struct AdversaryReport {
  NodeId node = 0;
  AdversaryMode mode = AdversaryMode::kHonestButCurious;
  Bytes observed;
  std::vector<InferenceAttempt> inferences;
  std::vector<TamperAttempt> tampers;
  nlohmann::json ToJson() const;
};

// Wall-clock milliseconds per protocol phase, summed over all nodes.
struct PhaseTimings {
  double payload_encrypt_ms = 0;
  double header_encrypt_ms = 0;
  double aggregate_ms = 0;
  double condition_ms = 0;
  double sign_ms = 0;
  double verify_ms = 0;
  double decode_ms = 0;
  double total_ms = 0;
  int condition_evaluations = 0;
  int aggregations = 0;
};

struct RunResult {
  TransmissionLog log;
  std::map<int, Bytes> received;             // flow id -> delivered payload
  std::map<int, std::string> undeliverable;  // flow id -> reason
  std::optional<AdversaryReport> adversary;
  PhaseTimings timings;
  int rounds = 0;

  nlohmann::json ToJson() const;
};

// Deterministic in (scenario, payloads, config); timings excepted.
absl::StatusOr<RunResult> Run(const Scenario& scenario,
                              const std::map<int, Bytes>& payloads,
                              const RunConfig& config);

// Random payloads of `size` bytes per flow, from `seed`.
std::map<int, Bytes> RandomPayloads(const Scenario& scenario, size_t size, uint64_t seed);

}  // namespace scope::sim

#endif  // SCOPE_SIM_SIMULATOR_H_
