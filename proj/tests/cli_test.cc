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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "scope/sim/bench.h"

namespace scope::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = Main(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  return absl::StrSplit(text, '\n', absl::SkipEmpty());
}

TEST(CliRun, CopeScenarioOneCodes) {
  Outcome r = Invoke({"run", "--scenario", "1", "--mode", "cope", "--seed", "0"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("transmissions=3\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("flow 1: delivered\n"), std::string::npos);
  EXPECT_NE(r.out.find("flow 2: delivered\n"), std::string::npos);
}

TEST(CliRun, NoCodingBaseline) {
  Outcome r = Invoke({"run", "--scenario", "2", "--mode", "scope", "--no-coding"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("transmissions=8\n"), std::string::npos) << r.out;
}

TEST(CliRun, RobustTamperDropped) {
  Outcome r = Invoke({"run", "--scenario", "1", "--mode", "robust", "--tamper", "--seed", "0"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("dropped_by_auth=1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("detected=yes delivered=no"), std::string::npos) << r.out;
}

TEST(CliRun, ScopeTamperReachesDestination) {
  Outcome r = Invoke({"run", "--scenario", "1", "--mode", "scope", "--tamper"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("dropped_by_auth=0\n"), std::string::npos);
  EXPECT_NE(r.out.find("delivered ALTERED"), std::string::npos) << r.out;
}

TEST(CliRun, AdversaryFlag) {
  Outcome r = Invoke({"run", "--scenario", "1", "--adversary", "2:honest-but-curious"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("adversary node=2 mode=honest-but-curious"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("plaintext_recovered=yes"), std::string::npos) << r.out;
}

TEST(CliRun, JsonFormat) {
  Outcome r = Invoke({"run", "--scenario", "3", "--mode", "cope", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("transmissions").get<int>(), 9);
  int native = 0;
  for (const auto& rec : j.at("log").at("records")) native += !rec.at("control") && !rec.at("coded");
  EXPECT_EQ(native, j.at("unicast_count").get<int>());
}

TEST(CliRun, ScenarioFile) {
  auto path = std::filesystem::temp_directory_path() / "scope_cli_diamond.json";
  {
    std::ofstream f(path);
    f << R"({"name": "line", "nodes": [1, 2, 3], "edges": [[1, 2], [2, 3]],
             "flows": [{"id": 1, "path": [1, 2, 3]}, {"id": 2, "path": [3, 2, 1]}]})";
  }
  Outcome r = Invoke({"run", "--scenario", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("scenario=line\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("transmissions=3\n"), std::string::npos) << r.out;
}

TEST(CliRun, MalformedScenarioFileIsRuntimeFailure) {
  auto path = std::filesystem::temp_directory_path() / "scope_cli_bad.json";
  {
    std::ofstream f(path);
    f << "{not json";
  }
  Outcome r = Invoke({"run", "--scenario", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, kExitRuntime);
}

TEST(CliRun, OutWritesFile) {
  auto path = std::filesystem::temp_directory_path() / "scope_cli_out.txt";
  Outcome r = Invoke({"run", "--scenario", "1", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::filesystem::remove(path);
  EXPECT_NE(ss.str().find("transmissions=3\n"), std::string::npos);
}

TEST(CliUsage, UnknownScenarioExitsTwoWithUsage) {
  for (std::string id : {"0", "5", "9", "no-such-file.json"}) {
    Outcome r = Invoke({"run", "--scenario", id});
    EXPECT_EQ(r.code, kExitUsage) << id;
    EXPECT_NE(r.err.find("--scenario"), std::string::npos) << r.err;
  }
}

TEST(CliUsage, BadFlagsExitTwo) {
  std::vector<std::vector<std::string>> cases = {
      {},
      {"frobnicate"},
      {"run", "--mode", "xor"},
      {"run", "--ecc-bits", "192"},
      {"run", "--ecdsa-bits", "256"},
      {"run", "--adversary", "2"},
      {"run", "--adversary", "x:malicious"},
      {"run", "--adversary", "2:evil"},
      {"run", "--payload-size", "0"},
      {"run", "--bogus"},
      {"bench", "--trials", "0"},
      {"bench", "--family", "key-size"},
      {"bench", "--scenario", "5"},
      {"bench", "--format", "xml"},
  };
  for (const auto& args : cases) {
    Outcome r = Invoke(args);
    EXPECT_EQ(r.code, kExitUsage) << (args.empty() ? "" : args.back());
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(CliUsage, UnknownAdversaryNodeIsRuntimeFailure) {
  EXPECT_EQ(Invoke({"run", "--adversary", "42:malicious"}).code, kExitRuntime);
}

TEST(CliUsage, HelpExitsZero) {
  Outcome r = Invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("bench"), std::string::npos);
}

TEST(CliBench, FullRowSetAndHeader) {
  Outcome r = Invoke({"bench", "--trials", "1", "--quiet"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto lines = Lines(r.out);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines[0], sim::kBenchCsvHeader);
  std::map<std::string, int> per_metric;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cols = absl::StrSplit(lines[i], ',');
    ASSERT_EQ(cols.size(), 9u) << lines[i];
    ++per_metric[cols[5]];
    EXPECT_GE(std::stod(cols[6]), 0.0);
    EXPECT_EQ(cols[7], "1");
  }
  EXPECT_EQ(per_metric["aggregate_time"], 16);
  EXPECT_EQ(per_metric["end_to_end_time"], 16);
  EXPECT_EQ(per_metric["condition_eval_time"], 16);
  EXPECT_EQ(per_metric["signature_gen_time"], 8);
  EXPECT_EQ(per_metric["enc_plus_sign_time"], 32);
  EXPECT_EQ(lines.size() - 1, 88u);
}

TEST(CliBench, FamilyFilter) {
  Outcome r = Invoke({"bench", "--family", "signatures", "--trials", "1", "--quiet"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Lines(r.out).size() - 1, 8u);
}

TEST(CliBench, NonTimingColumnsDeterministic) {
  std::vector<std::string> args = {"bench", "--family", "key-sizes", "--scenario", "1",
                                   "--ecc-bits", "163", "--trials", "2", "--seed", "7",
                                   "--quiet"};
  auto strip = [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& line : Lines(text)) {
      std::vector<std::string> cols = absl::StrSplit(line, ',');
      cols[6] = "";
      out.push_back(absl::StrJoin(cols, ","));
    }
    return out;
  };
  Outcome a = Invoke(args);
  Outcome b = Invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(Lines(a.out).size() - 1, 3u);
  EXPECT_NE(a.out.find(",2,7\n"), std::string::npos);
}

TEST(CliBench, JsonFormat) {
  Outcome r = Invoke({"bench", "--family", "signatures", "--ecdsa-bits", "384", "--trials", "1",
                      "--format", "json", "--quiet"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0].at("metric"), "signature_gen_time");
  EXPECT_EQ(j[0].at("ecdsa_bits"), 384);
}

}  // namespace
}  // namespace scope::cli
