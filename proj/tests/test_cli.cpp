// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace sds::cli {
namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"sds_cli"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    Result r;
    r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

TEST(Cli, SpectrumJson) {
    const auto r = run_cli({"spectrum", "--alpha", "0.04", "--beta", "0.04", "--m", "1", "--omega", "1",
                            "--j", "0.5", "--s", "+0.5", "--n-max", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse(r.out);
    EXPECT_EQ(doc["meta"]["command"], "spectrum");
    EXPECT_EQ(doc["meta"]["branch"], "ZeroGS");
    EXPECT_TRUE(doc["meta"].contains("grid"));
    EXPECT_DOUBLE_EQ(doc["meta"]["params"]["alpha"].get<double>(), 0.04);
    ASSERT_EQ(doc["rows"].size(), 3u);
    const double expect[] = {0.0, 4.64, 9.92};
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(doc["rows"][i]["E2_minus_m2"].get<double>(), expect[i], 1e-12);
        EXPECT_EQ(doc["rows"][i]["n"], i);
    }
}

TEST(Cli, FractionsAndDecimalsAgree) {
    const auto a = run_cli({"spectrum", "--alpha", "0.04", "--beta", "0.04", "--j", "3/2", "--s=-1/2"});
    const auto b = run_cli({"spectrum", "--alpha", "0.04", "--beta", "0.04", "--j", "1.5", "--s", "-0.5"});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(parse(a.out)["meta"]["branch"], "NegSpinSameXi");
}

TEST(Cli, ClassifyLargeFrequency) {
    const auto r = run_cli({"classify", "--alpha", "0.04", "--beta", "0.04", "--m", "1", "--omega", "60",
                            "--j", "0.5", "--s", "+0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse(r.out);
    bool zero = true, pos = false;
    for (const auto& row : doc["rows"]) {
        if (row["branch"] == "ZeroGS") zero = row["valid"].get<bool>();
        if (row["branch"] == "PosSpinShifted") pos = row["valid"].get<bool>();
    }
    EXPECT_FALSE(zero);
    EXPECT_TRUE(pos);
}

TEST(Cli, CsvMirrorsRows) {
    const auto r = run_cli({"spectrum", "--alpha", "0.04", "--beta", "0.04", "--n-max", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0].rfind("n,N_principal,E2_minus_m2,E,e_n,branch", 0), 0u);
    EXPECT_EQ(lines[2].rfind("1,2,4.6399999999999997,", 0), 0u);
}

TEST(Cli, WavefunctionRows) {
    const auto r = run_cli({"wavefunction", "--alpha", "0.04", "--beta", "0.04", "--n", "2", "--samples", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse(r.out);
    ASSERT_EQ(doc["rows"].size(), 16u);
    for (const char* key : {"p", "re_R1", "im_R1", "re_R2", "im_R2"}) EXPECT_TRUE(doc["rows"][0].contains(key));
    EXPECT_NEAR(doc["meta"]["joint_norm"].get<double>(), 1.0, 1e-10);
    EXPECT_LT(doc["rows"][15]["p"].get<double>(), 5.0);
}

TEST(Cli, Uncertainty) {
    const auto r = run_cli({"uncertainty", "--alpha", "0.1", "--beta", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = parse(r.out)["rows"][0];
    EXPECT_NEAR(row["dx_min"].get<double>(), std::sqrt(0.1 / 1.2), 1e-15);
    EXPECT_EQ(row["dx_min"].get<double>(), row["dp_min"].get<double>());
}

TEST(Cli, VerifySuitesPass) {
    for (const char* suite : {"oracle", "spectrum", "wavefunction"}) {
        const auto r = run_cli({"verify", "--suite", suite, "--alpha", "0.04", "--beta", "0.04", "--m", "1",
                                "--omega", "1", "--j", "0.5", "--s", "+0.5", "--grid", "2000",
                                "--tolerance", "1e-3"});
        EXPECT_EQ(r.code, 0) << suite << ": " << r.err;
        const auto doc = parse(r.out);
        EXPECT_TRUE(doc["meta"]["pass"].get<bool>());
        EXPECT_EQ(doc["meta"]["grid"]["N"], 2000);
        EXPECT_FALSE(doc["rows"].empty());
    }
}

TEST(Cli, VerifyFactorizedAddsPartnerChecks) {
    const auto r = run_cli({"verify", "--suite", "oracle", "--alpha", "0.04", "--beta", "0.04",
                            "--grid", "1000", "--scheme", "factorized"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse(r.out);
    bool partner = false;
    for (const auto& row : doc["rows"]) partner = partner || row["check"] == "partner_isospectral";
    EXPECT_TRUE(partner);
}

TEST(Cli, VerifyFailureExitsThree) {
    const auto r = run_cli({"verify", "--suite", "oracle", "--alpha", "0.04", "--beta", "0.04",
                            "--grid", "300", "--tolerance", "1e-9"});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(parse(r.out)["meta"]["pass"].get<bool>());
    EXPECT_NE(r.err.find("error: verification"), std::string::npos);
}

TEST(Cli, DefaultGridFromEnvironment) {
    ::setenv("SDS_DEFAULT_GRID", "512", 1);
    const auto r = run_cli({"verify", "--suite", "oracle", "--alpha", "0.04", "--beta", "0.04"});
    const auto bad = (::setenv("SDS_DEFAULT_GRID", "lots", 1),
                      run_cli({"verify", "--suite", "oracle", "--alpha", "0.04", "--beta", "0.04"}));
    ::unsetenv("SDS_DEFAULT_GRID");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse(r.out)["meta"]["grid"]["N"], 512);
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, ErrorsAreSingleLine) {
    const std::vector<std::vector<const char*>> bad = {
        {"spectrum", "--alpha", "-1", "--beta", "0.04"},
        {"spectrum", "--alpha", "0.04"},
        {"spectrum", "--alpha", "0.04", "--beta", "0.04", "--bogus", "1"},
        {"spectrum", "--alpha", "0.04", "--beta", "0.04", "--j", "1"},
        {"spectrum", "--alpha", "0.04", "--beta", "0.04", "--j", "abc"},
        {"spectrum", "--alpha", "0.04", "--beta", "0.04", "--s", "3/2"},
        {"spectrum", "--alpha", "0.04", "--beta", "0.04", "--omega", "60", "--branch", "ZeroGS"},
        {"spectrum", "--alpha", "0.04", "--beta", "0.04", "--format", "xml"},
        {"classify", "--alpha", "1.5", "--beta", "0.5"},
        {"verify", "--alpha", "0.04", "--beta", "0.04", "--suite", "nope"},
        {"verify", "--alpha", "0.04", "--beta", "0.04", "--grid", "10"},
        {"frobnicate"},
        {},
    };
    for (const auto& args : bad) {
        std::vector<const char*> argv{"sds_cli"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
        EXPECT_EQ(code, 2) << (args.empty() ? "(none)" : args[0]);
        const std::string e = err.str();
        ASSERT_FALSE(e.empty());
        EXPECT_EQ(e.find('\n'), e.size() - 1) << e;
        EXPECT_EQ(e.rfind("error: ", 0), 0u) << e;
    }
}

TEST(Cli, DeterministicAtomicOutput) {
    const auto dir = std::filesystem::temp_directory_path() / "sds_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "table.json").string();
    std::string first;
    for (int i = 0; i < 2; ++i) {
        const auto r = run_cli({"spectrum", "--alpha", "0.04", "--beta", "0.07", "--omega", "2.5", "--j", "5/2",
                                "--n-max", "6", "--output", path.c_str()});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_TRUE(r.out.empty());
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        if (i == 0) first = ss.str();
        else EXPECT_EQ(first, ss.str());
    }
    EXPECT_FALSE(std::filesystem::exists(dir / ".table.json.tmp"));
    const auto r = run_cli({"spectrum", "--alpha", "0.04", "--beta", "0.04", "--output", "/nonexistent/dir/x.json"});
    EXPECT_EQ(r.code, 2);
    std::filesystem::remove_all(dir);
}

#ifdef SDS_CLI_PATH
TEST(Cli, BinaryExitCodes) {
    const std::string bin = SDS_CLI_PATH;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(bin + " spectrum --alpha 0.04 --beta 0.04"), 0);
    EXPECT_EQ(status(bin + " spectrum --alpha 0 --beta 0.04"), 2);
    EXPECT_EQ(status(bin + " verify --suite oracle --alpha 0.04 --beta 0.04 --grid 300 --tolerance 1e-30 --levels 3"), 3);
}
#endif

}  // namespace
}  // namespace sds::cli
