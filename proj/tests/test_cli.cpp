// Copyright 2026 The spinzx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace spinzx::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return std::string(SPINZX_FIXTURE_DIR) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

fs::path temp_file(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("spinzx_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ParseTwice, FractionsAndDecimals) {
  EXPECT_EQ(parse_twice("1/2"), 1);
  EXPECT_EQ(parse_twice("3/2"), 3);
  EXPECT_EQ(parse_twice("-1/2"), -1);
  EXPECT_EQ(parse_twice("2"), 4);
  EXPECT_EQ(parse_twice("0"), 0);
  EXPECT_EQ(parse_twice(".5"), 1);
  EXPECT_EQ(parse_twice("-1.5"), -3);
  EXPECT_EQ(parse_twice("4/2"), 4);
  EXPECT_THROW(parse_twice("1/3"), InvalidSpinArgs);
  EXPECT_THROW(parse_twice("0.25"), InvalidSpinArgs);
  EXPECT_THROW(parse_twice("half"), InvalidSpinArgs);
  EXPECT_THROW(parse_twice(""), InvalidSpinArgs);
  EXPECT_THROW(parse_twice("1/0"), InvalidSpinArgs);
}

TEST(Eval, IdentityMatrix) {
  const CliRun r = run_cli({"eval", fixture("identity.zxd")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.err.empty());
  EXPECT_TRUE(contains(r.out, "outputs [2], inputs [2]"));
  EXPECT_TRUE(contains(r.out, "  1  0\n  0  1\n"));
}

TEST(Eval, ClosedFixturesMatchManifest) {
  const Json manifest = Json::parse(read_text(fixture("manifest.json")));
  ASSERT_GE(manifest.size(), 2u);
  for (const auto& entry : manifest) {
    const std::string name = entry["name"];
    const CliRun r = run_cli({"--json", "eval", fixture(name + ".zxd")});
    ASSERT_EQ(r.code, kExitOk) << name << r.err;
    const Json out = Json::parse(r.out);
    EXPECT_EQ(out["schema"], 1);
    const double tol = entry["tolerance"];
    EXPECT_NEAR(out["value"][0].get<double>(), entry["expected"][0].get<double>(), tol) << name;
    EXPECT_NEAR(out["value"][1].get<double>(), entry["expected"][1].get<double>(), tol) << name;
    EXPECT_FALSE(entry["paper_anchor"].get<std::string>().empty());
  }
  EXPECT_EQ(run_cli({"eval", fixture("pqc_demo.zxd")}).out, "0.8660254038\n");
}

TEST(Eval, ErrorExitCodes) {
  const CliRun malformed = run_cli({"eval", fixture("malformed.zxd")});
  EXPECT_EQ(malformed.code, kExitParse);
  EXPECT_TRUE(contains(malformed.err, "line 3"));
  EXPECT_TRUE(malformed.out.empty());
  EXPECT_EQ(run_cli({"eval", "/nonexistent/file.zxd"}).code, kExitParse);

  std::string text = read_text(fixture("identity.zxd"));
  const auto pos = text.rfind("\"dim\": 2");
  text.replace(pos, 8, "\"dim\": 3");
  const fs::path bad = temp_file("dim_mismatch.zxd", text);
  const CliRun invalid = run_cli({"eval", bad.string()});
  EXPECT_EQ(invalid.code, kExitValidation) << invalid.err;
  EXPECT_FALSE(invalid.err.empty());

  const CliRun big = run_cli({"--max-entries", "2", "eval", fixture("fused_chain.zxd")});
  EXPECT_EQ(big.code, kExitSize) << big.err;
}

TEST(Oracle, ThreeJm) {
  const CliRun r = run_cli({"oracle", "3jm", "1/2", "1/2", "0", "1/2", "-1/2", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "0.7071067812\n");
  EXPECT_TRUE(r.err.empty());
  EXPECT_EQ(run_cli({"oracle", "3jm", ".5", "0.5", "0", ".5", "-.5", "0"}).out, "0.7071067812\n");
  const CliRun violated = run_cli({"oracle", "3jm", "1/2", "1/2", "1/2", "1/2", "-1/2", "1/2"});
  EXPECT_EQ(violated.code, kExitOk);
  EXPECT_TRUE(contains(violated.out, "0\n"));
  EXPECT_TRUE(contains(violated.out, "Clebsch-Gordan conditions violated"));
  const CliRun msum = run_cli({"oracle", "3jm", "1", "1", "1", "1", "1", "0"});
  EXPECT_TRUE(contains(msum.out, "Clebsch-Gordan conditions violated"));
}

TEST(Oracle, InvalidSpinArguments) {
  EXPECT_EQ(run_cli({"oracle", "3jm", "1/3", "1", "1", "0", "0", "0"}).code, kExitSpinArgs);
  EXPECT_EQ(run_cli({"oracle", "3jm", "1/2", "1/2", "0", "1", "-1", "0"}).code, kExitSpinArgs);
  EXPECT_EQ(run_cli({"oracle", "3jm", "1/2", "1/2"}).code, kExitSpinArgs);
  EXPECT_EQ(run_cli({"oracle", "cg", "-1", "0", "1", "0", "0", "0"}).code, kExitSpinArgs);
  EXPECT_EQ(run_cli({"oracle", "wignerd", "x"}).code, kExitSpinArgs);
}

TEST(Oracle, ClebschGordanWignerSymmetriser) {
  EXPECT_EQ(run_cli({"oracle", "cg", "1/2", "1/2", "1/2", "-1/2", "1", "0"}).out, "0.7071067812\n");
  EXPECT_EQ(run_cli({"oracle", "wignerd", "1", "--identity"}).out,
            "matrix 3x3:\n  1  0  0\n  0  1  0\n  0  0  1\n");
  const CliRun rot = run_cli({"--json", "oracle", "wignerd", "1/2", "--angles", "0", "3.141592653589793", "0"});
  ASSERT_EQ(rot.code, kExitOk);
  const Json j = Json::parse(rot.out);
  EXPECT_NEAR(j["entries"][0][1][0].get<double>(), -1.0, 1e-12);
  const CliRun sym = run_cli({"oracle", "symmetriser", "2"});
  EXPECT_TRUE(contains(sym.out, "  0  0.5  0.5  0\n"));
}

TEST(Simplify, FusedChainShrinksAndVerifies) {
  const CliRun r = run_cli({"simplify", fixture("fused_chain.zxd"), "--strategy", "fuse"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "nodes: 7 -> 1"));
  EXPECT_TRUE(contains(r.out, "check: verified"));
  EXPECT_TRUE(r.err.empty());
}

TEST(Simplify, PqcFullStrategyGivesScalarWithTrace) {
  const fs::path out = fs::temp_directory_path() / "spinzx_cli_pqc_simplified.zxd";
  const CliRun r = run_cli({"--json", "simplify", fixture("pqc_demo.zxd"), "--strategy", "full",
                         "--trace", "-o", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["check"], "verified");
  EXPECT_EQ(j["nodes_after"], 0);
  ASSERT_FALSE(j["trace"].empty());
  EXPECT_EQ(j["trace"][0]["step"], 1);
  const CliRun value = run_cli({"eval", out.string()});
  EXPECT_EQ(value.out, "0.8660254038\n");
  const CliRun text = run_cli({"simplify", fixture("pqc_demo.zxd"), "--trace", "-o", out.string()});
  EXPECT_TRUE(contains(text.out, "trace:\n  step 1: "));
}

TEST(Simplify, StepCapIsANote) {
  const CliRun r = run_cli({"simplify", fixture("fused_chain.zxd"), "--max-steps", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "cap reached"));
  EXPECT_TRUE(contains(r.out, "steps: 1\n"));
}

TEST(Simplify, ParseErrorExitCode) {
  EXPECT_EQ(run_cli({"simplify", fixture("malformed.zxd")}).code, kExitParse);
}

TEST(Verify, SuitesReportPerCheck) {
  const CliRun r = run_cli({"verify", "binor"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "PASS closed loop [binor loop equals -2]"));
  EXPECT_TRUE(contains(r.out, "suite binor: PASS"));
  EXPECT_TRUE(r.err.empty());
  const CliRun lie = run_cli({"--json", "verify", "lie"});
  EXPECT_EQ(lie.code, kExitOk);
  const Json j = Json::parse(lie.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["suites"][0]["suite"], "lie");
}

TEST(Verify, TightToleranceFailsWithExitFive) {
  // A tolerance below round-off makes residual checks fail honestly.
  const CliRun r = run_cli({"--tolerance", "1e-30", "verify", "lie"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_TRUE(contains(r.out, "FAIL "));
}

TEST(Verify, UnknownSuiteIsUsageError) {
  const CliRun r = run_cli({"verify", "nonsense"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST(Demo, PqcReportsAmplitude) {
  const CliRun r = run_cli({"demo", "pqc"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "diagram amplitude: 0.866025403784"));
  EXPECT_TRUE(contains(r.out, "oracle amplitude: 0.866025403784"));
  EXPECT_TRUE(contains(r.out, "[PQC transition amplitude sqrt(3)/2]"));
  EXPECT_TRUE(contains(r.out, "demo pqc: PASS"));
}

TEST(Demo, LqgAndAklt) {
  const CliRun lqg = run_cli({"--json", "demo", "lqg"});
  ASSERT_EQ(lqg.code, kExitOk);
  const Json j = Json::parse(lqg.out);
  EXPECT_NEAR(j["facts"]["|eigenvalue|"].get<double>(), std::sqrt(3.0) / 4.0, 1e-9);
  const CliRun aklt = run_cli({"demo", "aklt", "--sites", "6"});
  EXPECT_EQ(aklt.code, kExitOk);
  EXPECT_TRUE(contains(aklt.out, "PASS spin-2 bond residual"));
  EXPECT_EQ(run_cli({"demo", "aklt", "--sites", "40"}).code, kExitUsage);
}

TEST(Demo, DeterministicGivenSeed) {
  const std::vector<std::string> args = {"--json", "--seed", "7", "demo", "qml", "--samples", "300"};
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run_cli({"--json", "--seed", "8", "demo", "qml", "--samples", "300"});
  EXPECT_NE(a.out, c.out);
}

TEST(ExportDot, WritesGraph) {
  const CliRun r = run_cli({"export-dot", fixture("fused_chain.zxd")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "graph"));
}

TEST(Config, ReadsOptionsFromWorkingDirectory) {
  const fs::path dir = fs::temp_directory_path() / "spinzx_cli_config";
  fs::create_directories(dir);
  std::ofstream(dir / "spinzx.toml") << "json = true\n";
  const fs::path previous = fs::current_path();
  fs::current_path(dir);
  const CliRun r = run_cli({"eval", fixture("identity.zxd")});
  fs::current_path(previous);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(Json::parse(r.out)["schema"], 1);
}

TEST(Usage, MissingCommand) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  const CliRun help = run_cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_TRUE(contains(help.out, "simplify"));
}

}  // namespace
}  // namespace spinzx::cli
