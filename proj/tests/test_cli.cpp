// Copyright 2026 The wvconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_helpers.hpp"
#include "wvconc/cli.hpp"
#include "wvconc/io.hpp"

using namespace wvconc;
using namespace testing_util;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wvconc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kBellJson = R"({"amplitudes": [[0.7071067811865476,0],[0,0],[0,0],[0.7071067811865476,0]]})";
const std::string kThreeJson =
    R"({"amplitudes": [[0.5773502691896258,0],[0.5773502691896258,0],[0,0],[0.5773502691896258,0]]})";
const std::string kWorkedJson = R"({"amplitudes": [[0.7071067811865476,0],[0.5,0],[0,0],[0,0.5]]})";

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wvconc_test_" + name);
}

}  // namespace

TEST(Cli, EstimateExamples) {
  const auto bell = run({"estimate", "--state", kBellJson});
  ASSERT_EQ(bell.code, 0) << bell.err;
  const auto j = nlohmann::json::parse(bell.out);
  EXPECT_EQ(j["route"], "DiagonalIntensity");
  EXPECT_DOUBLE_EQ(j["concurrence"].get<double>(), 1.0);
  EXPECT_EQ(j["parameters"]["grid_n"], 512);
  EXPECT_EQ(j["parameters"]["extent"], 6.0);
  EXPECT_EQ(j["parameters"]["lambda"], 0.01);
  EXPECT_EQ(j["parameters"]["photons"], 1000000);
  EXPECT_EQ(j["parameters"]["efficiency"], 1.0);

  const auto three = run({"estimate", "--state", kThreeJson});
  EXPECT_NEAR(nlohmann::json::parse(three.out)["concurrence"].get<double>(), 2.0 / 3, 1e-12);

  const auto bad = run({"estimate", "--state", R"({"amplitudes": [1, 1, 0, 0]})"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("norm"), std::string::npos);
}

TEST(Cli, EstimateIsThinAdapter) {
  const auto r = run({"estimate", "--state", kWorkedJson});
  const auto direct = to_json(estimate(reduced_state(to_state(kWorked), Subsystem::A)));
  auto j = nlohmann::json::parse(r.out);
  j.erase("parameters");
  EXPECT_EQ(j, direct);
}

TEST(Cli, StateFromFile) {
  const auto path = temp_path("state.json");
  std::ofstream(path) << kThreeJson;
  const auto r = run({"estimate", "--state", path.string()});
  EXPECT_EQ(r.code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, SimulateWithDumpedImages) {
  const auto prefix = temp_path("img").string();
  const auto r = run({"simulate", "--state", kWorkedJson, "--dump-images", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["concurrence"].get<double>(), 1.0 / std::sqrt(2.0), 1e-2);
  const auto truth = exact_intensity(reduced_state(to_state(kWorked), Subsystem::A), PostSelection::One,
                                     CouplingStrength(0.01), PointerGrid());
  std::ifstream csv(prefix + "_1.csv");
  EXPECT_EQ(read_image_csv(csv).values(), truth.values());
  std::ifstream raw(prefix + "_1.f64", std::ios::binary), meta(prefix + "_1.json");
  EXPECT_EQ(read_image_raw(raw, meta).values(), truth.values());
  for (const char* suffix : {"_0.csv", "_1.csv", "_0.f64", "_1.f64", "_0.json", "_1.json"})
    std::filesystem::remove(prefix + suffix);
}

TEST(Cli, WeaknessWarningAtLargeLambda) {
  const auto r = run({"simulate", "--state", kWorkedJson, "--lambda", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["diagnostics"]["weakness_warning"], 1.0);
}

TEST(Cli, McIsByteIdentical) {
  const std::vector<std::string> args{"mc", "--state", kThreeJson, "--photons", "20000", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(nlohmann::json::parse(a.out)["uncertainty"].is_null());
}

TEST(Cli, McPositionDump) {
  const auto prefix = temp_path("pos").string();
  const auto r = run({"mc", "--state", kBellJson, "--photons", "1000", "--dump-positions", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f0(prefix + "_0.bin", std::ios::binary), f1(prefix + "_1.bin", std::ios::binary);
  EXPECT_EQ(read_positions(f0).size() + read_positions(f1).size(), 2000u);
  std::filesystem::remove(prefix + "_0.bin");
  std::filesystem::remove(prefix + "_1.bin");
}

TEST(Cli, SweepCsv) {
  const auto path = temp_path("sweep.csv");
  const auto r = run({"sweep", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  EXPECT_EQ(lines, 1 + 201 * 201);
  std::filesystem::remove(path);
}

TEST(Cli, RobustnessCampaignAndSingleState) {
  const auto r = run({"robustness", "--samples", "50", "--refine-iters", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("index,epsilon,purity_vs_mixedness_lhs", 0), 0u);
  const auto w = run({"robustness", "--state", kBellJson});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_NEAR(nlohmann::json::parse(w.out)["certificate"]["m_upper"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"estimate"}).code, 2);
  EXPECT_EQ(run({"simulate", "--state", kBellJson, "--grid-n", "16"}).code, 2);
  EXPECT_EQ(run({"mc", "--state", kBellJson, "--efficiency", "0"}).code, 2);
  EXPECT_EQ(run({"estimate", "--state", kBellJson, "--lambda", "abc"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  // Strong coupling leaves too little overlap between the shifted modes to calibrate the branches.
  const auto strong = run({"simulate", "--state", kWorkedJson, "--lambda", "0.65"});
  EXPECT_EQ(strong.code, 3);
  EXPECT_NE(strong.err.find("overlap"), std::string::npos);
}
