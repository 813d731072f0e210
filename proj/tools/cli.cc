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

#include "cli.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "nlohmann/json.hpp"
#include "scope/sim/bench.h"
#include "scope/sim/scenario.h"
#include "scope/sim/simulator.h"

namespace scope::cli {
namespace {

struct UsageError {
  std::string message;
};

struct RunFlags {
  std::string scenario = "1";
  std::string mode = "cope";
  int ecc_bits = 163;
  int ecdsa_bits = 384;
  uint64_t seed = 0;
  size_t payload_size = 64;
  bool no_coding = false;
  bool tamper = false;
  std::string adversary;
  std::string format = "text";
  std::string out;
};

struct BenchFlags {
  std::vector<std::string> scenarios;
  std::vector<int> ecc_bits;
  std::vector<int> ecdsa_bits;
  std::vector<std::string> families;
  int trials = 20;
  uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
  bool quiet = false;
};

absl::StatusOr<sim::Scenario> ResolveScenario(const std::string& arg, bool& usage) {
  int id = 0;
  auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), id);
  if (ec == std::errc() && end == arg.data() + arg.size()) {
    auto s = sim::BuildScenario(id);
    usage = !s.ok();
    return s;
  }
  if (!std::filesystem::exists(arg)) {
    usage = true;
    return absl::NotFoundError(absl::StrCat("unknown scenario '", arg, "'"));
  }
  return sim::LoadScenarioFile(arg);
}

absl::StatusOr<sim::AdversaryConfig> ParseAdversary(const std::string& arg) {
  std::vector<std::string> parts = absl::StrSplit(arg, ':');
  int node = 0;
  if (parts.size() != 2 ||
      std::from_chars(parts[0].data(), parts[0].data() + parts[0].size(), node).ec !=
          std::errc()) {
    return absl::InvalidArgumentError(absl::StrCat("expected NODE:MODE, got '", arg, "'"));
  }
  auto mode = sim::ParseAdversaryMode(parts[1]);
  if (!mode.ok()) return mode.status();
  return sim::AdversaryConfig{static_cast<NodeId>(node), *mode};
}

int Emit(const std::string& text, const std::string& path, std::ostream& out,
         std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(path);
  f << text;
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

std::string RunText(const sim::Scenario& s, const sim::RunConfig& cfg,
                    const std::map<int, Bytes>& sent, const sim::RunResult& r) {
  std::ostringstream o;
  o << "scenario=" << s.name << "\n";
  o << "mode=" << sim::ModeName(cfg.mode) << " coding=" << (cfg.coding ? "on" : "off")
    << " seed=" << cfg.seed << "\n";
  o << "transmissions=" << r.log.transmissions() << "\n";
  o << "unicast=" << r.log.unicast_count << " broadcast=" << r.log.broadcast_count
    << " coded=" << r.log.coded_packet_count << "\n";
  o << "dropped_by_auth=" << r.log.dropped_by_auth_count << "\n";
  o << "rounds=" << r.rounds << "\n";
  for (const auto& f : s.flows) {
    o << "flow " << f.flow_id << ": ";
    if (auto it = r.undeliverable.find(f.flow_id); it != r.undeliverable.end()) {
      o << "undelivered (" << it->second << ")\n";
      continue;
    }
    auto got = r.received.find(f.flow_id);
    auto want = sent.find(f.flow_id);
    bool intact = got != r.received.end() && want != sent.end() && got->second == want->second;
    o << (intact ? "delivered" : "delivered ALTERED") << "\n";
  }
  if (r.adversary) {
    const auto& a = *r.adversary;
    o << "adversary node=" << a.node << " mode=" << sim::AdversaryModeName(a.mode)
      << " observed_bytes=" << a.observed.size() << "\n";
    for (const auto& inf : a.inferences) {
      o << "  inference round=" << inf.round << " method=" << inf.method
        << " plaintext_recovered=" << (inf.plaintext_recovered ? "yes" : "no") << "\n";
    }
    for (const auto& t : a.tampers) {
      o << "  tamper round=" << t.round << " flow=" << t.flow << " chunk=" << t.chunk
        << " detected=" << (t.detected ? "yes" : "no")
        << " delivered=" << (t.delivered ? "yes" : "no") << "\n";
    }
  }
  return o.str();
}

int CmdRun(const RunFlags& f, std::ostream& out, std::ostream& err) {
  bool usage = false;
  auto scenario = ResolveScenario(f.scenario, usage);
  if (!scenario.ok()) {
    if (usage) throw UsageError{std::string(scenario.status().message())};
    err << "error: " << scenario.status().message() << "\n";
    return kExitRuntime;
  }
  sim::RunConfig cfg;
  auto mode = sim::ParseMode(f.mode);
  if (!mode.ok()) throw UsageError{std::string(mode.status().message())};
  cfg.mode = *mode;
  cfg.coding = !f.no_coding;
  cfg.seed = f.seed;
  cfg.ecc_bits = f.ecc_bits;
  cfg.ecdsa_bits = f.ecdsa_bits;
  if (!f.adversary.empty()) {
    auto adv = ParseAdversary(f.adversary);
    if (!adv.ok()) throw UsageError{std::string(adv.status().message())};
    cfg.adversary = *adv;
  }
  if (f.tamper) {
    if (!cfg.adversary) {
      auto node = sim::IntersectingNode(*scenario);
      if (!node) {
        err << "error: --tamper needs --adversary, scenario has no intersecting node\n";
        return kExitUsage;
      }
      cfg.adversary = sim::AdversaryConfig{*node, sim::AdversaryMode::kMalicious};
    }
    cfg.adversary->mode = sim::AdversaryMode::kMalicious;
  }
  if (f.payload_size == 0) throw UsageError{"--payload-size must be positive"};
  auto payloads = sim::RandomPayloads(*scenario, f.payload_size, f.seed);
  auto result = sim::Run(*scenario, payloads, cfg);
  if (!result.ok()) {
    err << "error: " << result.status().message() << "\n";
    return kExitRuntime;
  }
  std::string text = f.format == "json" ? result->ToJson().dump(2) + "\n"
                                        : RunText(*scenario, cfg, payloads, *result);
  return Emit(text, f.out, out, err);
}

int CmdBench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  sim::BenchOptions opts;
  opts.trials = f.trials;
  opts.seed = f.seed;
  if (!f.scenarios.empty()) {
    opts.scenarios.clear();
    for (const auto& s : f.scenarios) {
      int id = 0;
      auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
      if (ec != std::errc() || end != s.data() + s.size() || id < 1 || id > 4) {
        throw UsageError{absl::StrCat("bench scenario must be 1..4, got '", s, "'")};
      }
      opts.scenarios.push_back(id);
    }
  }
  if (!f.ecc_bits.empty()) opts.ecc_bits = f.ecc_bits;
  if (!f.ecdsa_bits.empty()) opts.ecdsa_bits = f.ecdsa_bits;
  if (!f.families.empty()) {
    opts.families.clear();
    for (const auto& name : f.families) {
      if (name == "all" || name == "key-sizes") opts.families.insert(sim::BenchFamily::kKeySizes);
      if (name == "all" || name == "signatures") opts.families.insert(sim::BenchFamily::kSignatures);
      if (name == "all" || name == "enc-sign") opts.families.insert(sim::BenchFamily::kEncSign);
    }
  }
  if (!f.quiet) opts.progress = [&err](const std::string& m) { err << m << "\n"; };
  auto rows = sim::RunBench(opts);
  if (!rows.ok()) {
    err << "error: " << rows.status().message() << "\n";
    return kExitRuntime;
  }
  std::string text =
      f.format == "json" ? sim::BenchJson(*rows).dump(2) + "\n" : sim::BenchCsv(*rows);
  return Emit(text, f.out, out, err);
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SCOPE network coding simulator and bench", "scope"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("--scenario", rf.scenario, "Built-in id 1..4 or a scenario JSON file");
  run->add_option("--mode", rf.mode, "cope, scope or robust")
      ->check(CLI::IsMember({"cope", "scope", "robust"}));
  run->add_option("--ecc-bits", rf.ecc_bits, "ElGamal curve size")
      ->check(CLI::IsMember({163, 283, 409, 571}));
  run->add_option("--ecdsa-bits", rf.ecdsa_bits, "ECDSA curve size")
      ->check(CLI::IsMember({384, 521}));
  run->add_option("--seed", rf.seed, "Seed for keys, randomness and payloads");
  run->add_option("--payload-size", rf.payload_size, "Payload bytes per flow");
  run->add_flag("--no-coding", rf.no_coding, "Disable network coding");
  run->add_flag("--tamper", rf.tamper,
                "Malicious adversary, at the intersecting node unless --adversary is given");
  run->add_option("--adversary", rf.adversary, "NODE:MODE, MODE is honest-but-curious or malicious");
  run->add_option("--format", rf.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  run->add_option("--out", rf.out, "Write output to a file");

  BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "Timing sweep over key sizes");
  bench->add_option("--scenario", bf.scenarios, "Restrict to scenarios 1..4");
  bench->add_option("--ecc-bits", bf.ecc_bits, "Restrict ElGamal sizes")
      ->check(CLI::IsMember({163, 283, 409, 571}));
  bench->add_option("--ecdsa-bits", bf.ecdsa_bits, "Restrict ECDSA sizes")
      ->check(CLI::IsMember({384, 521}));
  bench->add_option("--family", bf.families, "all, key-sizes, signatures or enc-sign")
      ->check(CLI::IsMember({"all", "key-sizes", "signatures", "enc-sign"}));
  bench->add_option("--trials", bf.trials, "Trials per cell")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bf.seed, "First trial seed");
  bench->add_option("--format", bf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", bf.out, "Write output to a file");
  bench->add_flag("--quiet", bf.quiet, "No progress on stderr");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (run->parsed()) return CmdRun(rf, out, err);
    return CmdBench(bf, out, err);
  } catch (const UsageError& e) {
    CLI::App* sub = run->parsed() ? run : bench;
    err << "error: " << e.message << "\n\n" << sub->help();
    return kExitUsage;
  }
}

}  // namespace scope::cli
