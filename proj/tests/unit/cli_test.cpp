// Copyright 2026 The ftcap Authors
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

#include "ftcap/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ftcap;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ftcap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

}  // namespace

TEST(Sha256, KnownDigests) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, IdentityCapacityIsTwoBits) {
    const auto r = cli({"capacity", "identity", "--out", path("cap.json"), "--manifest", path("m.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path("cap.json"));
    const json j = json::parse(in);
    EXPECT_NEAR(j["result"]["value"].get<double>(), 2.0, 1e-9);
    EXPECT_TRUE(j["result"]["converged"].get<bool>());
}

TEST_F(CliTest, RejectsNonTracePreservingChannel) {
    std::ofstream(path("bad.json")) << R"({"dim_in":2,"dim_out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[0.5,0]]]]})";
    const auto r = cli({"capacity", path("bad.json"), "--manifest", path("m.json")});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_NE(r.err.find("trace preserving"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(cli({"capacity", "identity", "--no-such-flag"}).code, kExitValidation);
    EXPECT_EQ(cli({}).code, kExitValidation);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
    EXPECT_EQ(cli({"bounds", "depolarizing:0.1", "--p", "0.5", "--manifest", path("m.json")}).code, kExitDomain);
    EXPECT_EQ(cli({"bounds", "depolarizing:0.1", "--p", "1e-4", "--j1", "2", "--manifest", path("m.json")}).code,
              kExitValidation);
    EXPECT_EQ(cli({"steane", "--experiment", "encode", "--p-list", "1e-2", "--trials", "1000", "--manifest",
                   path("m.json")})
                  .code,
              kExitDomain);
    // Amplitude damping: the maximally mixed start is not optimal.
    std::ofstream(path("ad.json"))
        << R"({"dim_in":2,"dim_out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[0.8366600265340756,0]]],)"
        << R"([[[0,0],[0.5477225575051661,0]],[[0,0],[0,0]]]]})";
    EXPECT_EQ(cli({"capacity", path("ad.json"), "--manifest", path("m.json")}).code, kExitOk);
    EXPECT_EQ(cli({"capacity", path("ad.json"), "--max-iter", "1", "--restarts", "0", "--manifest", path("m.json")})
                  .code,
              kExitNoConvergence);
}

TEST_F(CliTest, ManifestReplayMatches) {
    const auto r = cli({"steane", "--p-list", "1e-3,3e-3", "--trials", "20000", "--seed", "9", "--out",
                        path("s.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path("s.csv.manifest.json"));
    const json m = json::parse(in);
    std::ifstream csv(path("s.csv"));
    std::stringstream body;
    body << csv.rdbuf();
    EXPECT_EQ(m["output_sha256"], sha256_hex(body.str()));
    EXPECT_EQ(m["seed"], 9);
    for (const auto& a : m["args"]) EXPECT_NE(a.get<std::string>(), "--out");

    const auto replay = cli({"replay", path("s.csv.manifest.json")});
    EXPECT_EQ(replay.code, kExitOk) << replay.out;
    EXPECT_TRUE(json::parse(replay.out)["match"].get<bool>());

    json tampered = m;
    tampered["output_sha256"] = sha256_hex("other");
    std::ofstream(path("t.json")) << tampered.dump();
    EXPECT_EQ(cli({"replay", path("t.json")}).code, kExitFailure);
}

TEST_F(CliTest, SeedFromEnvironmentIsRecorded) {
    ::setenv("FTCAP_SEED", "77", 1);
    const auto r = cli({"distill", "--q", "0.05", "--k", "1000", "--delta", "0.05", "--trials", "500", "--manifest",
                        path("m.json")});
    ::unsetenv("FTCAP_SEED");
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path("m.json"));
    const json m = json::parse(in);
    EXPECT_EQ(m["seed"], 77);
    const auto args = m["args"].get<std::vector<std::string>>();
    ASSERT_GE(args.size(), 2u);
    EXPECT_EQ(args[args.size() - 2], "--seed");
    EXPECT_EQ(args.back(), "77");
    EXPECT_EQ(cli({"replay", path("m.json")}).code, kExitOk);
}

TEST_F(CliTest, BoundsSweepEchoesParameters) {
    const auto r = cli({"bounds", "dephasing:0.1", "--p-list", "1e-5,1e-4", "--manifest", path("m.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("# ", 0), 0u);
    EXPECT_NE(r.out.find("p,f1,f2,f2_saturated,penalty,lower_bound,clamped\n"), std::string::npos);
}
