// Copyright 2026 The sqcqp Authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "sqcqp/cli.h"

namespace sqcqp::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string Data(const std::string& name) {
  return std::string(SQCQP_DATA_DIR) + "/" + name;
}

Outcome Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json Parse(const Outcome& o) { return nlohmann::json::parse(o.out); }

TEST(CliTest, SolveTrustRegion) {
  const Outcome o = Invoke({"solve", Data("trust_region.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Parse(o);
  EXPECT_EQ(j["status"], "Certified");
  EXPECT_NEAR(j["value"].get<double>(), 1.0, 1e-6);
  EXPECT_EQ(j["certificate"]["verdict"], "GloballyOptimal");
}

TEST(CliTest, SolveNonconvexSphere) {
  const Outcome o = Invoke({"solve", Data("nonconvex_sphere.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Parse(o);
  EXPECT_NEAR(j["value"].get<double>(), -1.0, 1e-6);
  EXPECT_EQ(j["dual_status"], "FlatAttained");
}

TEST(CliTest, SolveIsByteDeterministic) {
  const Outcome a = Invoke({"solve", Data("convex_qp.json"), "--seed", "4"});
  const Outcome b = Invoke({"solve", Data("convex_qp.json"), "--seed", "4"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"value\": 1"), std::string::npos) << a.out;
}

TEST(CliTest, WitnessFixture) {
  const Outcome o = Invoke({"witness", Data("fixture3d.json"), "--xv", "1,0,0",
                            "--xw", "0,1,0", "--lambda", "0.5"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto x = Parse(o)["x_tilde"];
  EXPECT_NEAR(x[0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(x[1].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(x[2].get<double>(), 0.70711, 1e-5);
}

TEST(CliTest, WitnessExitCodes) {
  const Outcome ok = Invoke({"witness", Data("trust_region.json"), "--xv",
                             "1,0", "--xw", "0,1", "--lambda", "0.5"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;

  const std::string path =
      (std::filesystem::temp_directory_path() / "sqcqp_full_rank.json").string();
  {
    std::ofstream f(path);
    f << R"({"version": 1, "n": 2,
      "objective": {"a": 1, "b": [1, 0], "c": 0},
      "constraints": [{"a": 1, "b": [0, 1], "c": -1}]})";
  }
  const Outcome full = Invoke({"witness", path, "--xv", "1,0", "--xw", "0,1",
                               "--lambda", "0.5"});
  EXPECT_EQ(full.code, kExitFullRank) << full.err;
  std::remove(path.c_str());

  const Outcome mismatch = Invoke({"witness", Data("fixture3d.json"), "--xv",
                                   "1,0", "--xw", "0,1", "--lambda", "0.5"});
  EXPECT_EQ(mismatch.code, kExitDataError);
}

TEST(CliTest, CertifyCandidate) {
  const Outcome o = Invoke({"certify", Data("trust_region_with_candidate.json")});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(Parse(o)["verdict"], "GloballyOptimal");
}

TEST(CliTest, CertifyMatrixMode) {
  const Outcome o = Invoke({"certify", Data("matrix_ball.json")});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(Parse(o)["verdict"], "GloballyOptimal");
}

TEST(CliTest, CertifyWithoutCandidateIsDataError) {
  EXPECT_EQ(Invoke({"certify", Data("trust_region.json")}).code,
            kExitDataError);
}

TEST(CliTest, MatrixModeOnlyForCertify) {
  EXPECT_EQ(Invoke({"solve", Data("matrix_ball.json")}).code, kExitDataError);
}

TEST(CliTest, Slemma) {
  const Outcome o = Invoke({"slemma", Data("nonconvex_sphere.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(Parse(o)["outcome"], "StrictPointFound");
  const Outcome shifted = Invoke(
      {"slemma", Data("trust_region.json"), "--include-objective", "1"});
  ASSERT_EQ(shifted.code, kExitOk) << shifted.err;
  EXPECT_EQ(Parse(shifted)["outcome"], "MultiplierFound");
}

TEST(CliTest, SampleWritesCsv) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "sqcqp_cli_sample.csv").string();
  const Outcome o = Invoke({"sample", Data("trust_region.json"), "--count", "5",
                            "--box", "1", "--seed", "3", "--out", path});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(Parse(o)["rows"], 5);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "f0,f1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  std::remove(path.c_str());
}

TEST(CliTest, SampleUnwritablePath) {
  const Outcome o = Invoke({"sample", Data("trust_region.json"), "--count", "5",
                            "--box", "1", "--out", "/nonexistent/dir/x.csv"});
  EXPECT_EQ(o.code, kExitCantCreate);
}

TEST(CliTest, Oracle) {
  const Outcome o = Invoke({"oracle", Data("trust_region.json"), "--box", "2",
                            "--points", "201"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = Parse(o);
  EXPECT_EQ(j["status"], "Feasible");
  EXPECT_NEAR(j["value"].get<double>(), 1.0, 1e-3);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({"solve", Data("trust_region.json"), "--bogus"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"witness", Data("fixture3d.json"), "--xv", "1,a,0", "--xw",
                    "0,1,0", "--lambda", "0.5"})
                .code,
            kExitUsage);
}

TEST(CliTest, MissingFile) {
  EXPECT_EQ(Invoke({"solve", "/nonexistent/problem.json"}).code, kExitNoInput);
}

TEST(CliTest, ShippedFixturesParse) {
  for (const char* name :
       {"trust_region.json", "nonconvex_sphere.json", "convex_qp.json"}) {
    const Outcome o = Invoke({"oracle", Data(name), "--box", "2", "--points", "21"});
    EXPECT_EQ(o.code, kExitOk) << name << ": " << o.err;
  }
}

}  // namespace
}  // namespace sqcqp::cli
