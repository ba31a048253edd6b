// Copyright 2026 The scot-sim Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "scot/cli.hpp"
#include "scot/errors.hpp"
#include "scot/io.hpp"

namespace scot {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("scot_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) {
        out.push_back(f);
    }
    return out;
}

TEST(Csv, Quoting) {
    EXPECT_EQ(io::csv_field("plain"), "plain");
    EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(io::csv_line({"x", "y,z"}), "x,\"y,z\"\r\n");
}

TEST(Json, LayoutRoundTrip) {
    const auto layout = geo::default_layout(3);
    const auto j = io::to_json(layout);
    const auto back = io::layout_from_json(j);
    EXPECT_EQ(back.dim, layout.dim);
    ASSERT_EQ(back.regions.size(), 3u);
    EXPECT_EQ(back.q_points, layout.q_points);
    EXPECT_EQ(back.worldlines.size(), layout.worldlines.size());
    EXPECT_TRUE(geo::validate_layout(back).ok());
    EXPECT_THROW((void)io::layout_from_json(io::json{{"dim", 1}}), InputError);
}

TEST(Json, Numbers) {
    EXPECT_EQ(io::num(0.5), "0.5");
    EXPECT_EQ(std::stod(io::num(0.1 + 0.2)), 0.1 + 0.2);
    EXPECT_EQ(io::bits({1, 0, 1}), "101");
}

TEST(Cli, RunPcc) {
    const auto dir = scratch("run");
    const auto r = call({"run", "--mode", "pcc", "--m", "3", "--n", "8", "--b", "1", "--seed", "7",
                         "--out", dir.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto doc = io::json::parse(slurp(dir / "transcript_pcc_seed7.json"));
    std::string x1;
    for (int v : doc["x"][1].get<std::vector<int>>()) {
        x1 += char('0' + v);
    }
    EXPECT_NE(r.out.find("output " + x1), std::string::npos);
    EXPECT_TRUE(doc["verification"]["ok"].get<bool>());
    EXPECT_TRUE(fs::exists(dir / "transcript_pcc_seed7.csv"));
}

TEST(Cli, RunModes) {
    const auto dir = scratch("modes");
    for (const std::string mode : {"psr", "pqc"}) {
        const auto r = call({"run", "--mode", mode, "--m", "2", "--n", "6", "--b", "0", "--seed",
                             "3", "--out", dir.string()});
        EXPECT_EQ(r.code, cli::kOk) << mode << r.err;
    }
}

TEST(Cli, ExplicitInputs) {
    const auto dir = scratch("explicit");
    const auto r = call({"run", "--mode", "pqc", "--m", "2", "--n", "4", "--b", "1", "--x", "0110",
                         "1011", "--out", dir.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("output 1011"), std::string::npos);
}

TEST(Cli, MissingLayout) {
    const auto r = call({"run", "--mode", "pcc", "--layout", "/nonexistent/layout.json"});
    EXPECT_EQ(r.code, cli::kConfigError);
}

TEST(Cli, NonSpacelikeLayout) {
    const auto dir = scratch("badlayout");
    auto layout = geo::default_layout(2);
    layout.regions[1] = layout.regions[0];
    layout.q_points[1] = layout.q_points[0];
    io::write_json(dir / "layout.json", io::to_json(layout));
    const auto r = call({"run", "--mode", "pcc", "--layout", (dir / "layout.json").string(),
                         "--out", dir.string()});
    EXPECT_EQ(r.code, cli::kConfigError);
    EXPECT_NE(r.err.find("spacelike"), std::string::npos);
}

TEST(Cli, LayoutFile) {
    const auto dir = scratch("layout");
    auto j = io::to_json(geo::default_layout(2, 6.0, 0.2));
    j["eps"] = 1e-12;
    io::write_json(dir / "layout.json", j);
    const auto r = call({"run", "--mode", "pcc", "--m", "2", "--n", "4", "--layout",
                         (dir / "layout.json").string(), "--out", dir.string()});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
}

TEST(Cli, SchedulingFailure) {
    const auto dir = scratch("sched");
    auto layout = geo::default_layout(2);
    layout.worldlines["B0"] = geo::Worldline({geo::Event{-15.0, {-5.0}}, geo::Event{-1.0, {-5.0}}});
    io::write_json(dir / "layout.json", io::to_json(layout));
    const auto r = call({"run", "--mode", "pcc", "--b", "0", "--layout",
                         (dir / "layout.json").string(), "--out", dir.string()});
    EXPECT_EQ(r.code, cli::kSchedulingError) << r.err;
}

TEST(Cli, BadFlags) {
    EXPECT_EQ(call({"run", "--mode", "xyz"}).code, cli::kConfigError);
    EXPECT_EQ(call({"run", "--mode", "pcc", "--b", "5"}).code, cli::kConfigError);
    EXPECT_EQ(call({}).code, cli::kConfigError);
    EXPECT_EQ(call({"frobnicate"}).code, cli::kConfigError);
}

TEST(Cli, BoundsSweep) {
    const auto dir = scratch("bounds");
    const auto r = call({"bounds", "--m", "2", "--theta", std::to_string(std::numbers::pi / 2),
                         "--n-min", "1", "--n-max", "20", "--out", dir.string()});
    ASSERT_EQ(r.code, cli::kOk);
    const auto rows = lines(slurp(dir / "bounds.csv"));
    ASSERT_EQ(rows.size(), 21u);
    double prev = 2.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double eps = std::stod(split_csv(rows[k])[5]);
        EXPECT_LT(eps, prev);
        prev = eps;
    }
}

TEST(Cli, BoundsLambdaColumn) {
    const auto dir = scratch("bounds2");
    const auto r = call({"bounds", "--m", "2", "3", "4", "--n-max", "3", "--out", dir.string()});
    ASSERT_EQ(r.code, cli::kOk);
    const auto rows = lines(slurp(dir / "bounds.csv"));
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto f = split_csv(rows[k]);
        const int m = std::stoi(f[0]);
        EXPECT_NEAR(std::stod(f[4]), std::pow(std::cos(std::numbers::pi / (2 * m)), 2), 1e-12);
    }
}

TEST(Cli, BoundsBadGamma) {
    EXPECT_EQ(call({"bounds", "--gamma", "0.6"}).code, cli::kConfigError);
    EXPECT_EQ(call({"bounds", "--n-min", "5", "--n-max", "2"}).code, cli::kConfigError);
}

TEST(Cli, AttackDeterministic) {
    const auto d1 = scratch("atk1");
    const auto d2 = scratch("atk2");
    const std::vector<std::string> base{"attack", "--m", "2", "--n", "1", "--restarts", "5",
                                        "--iterations", "50", "--seed", "11", "--out"};
    auto a1 = base;
    a1.push_back(d1.string());
    auto a2 = base;
    a2.push_back(d2.string());
    const auto r1 = call(a1);
    const auto r2 = call(a2);
    ASSERT_EQ(r1.code, cli::kOk);
    ASSERT_EQ(r2.code, cli::kOk);
    EXPECT_EQ(r1.out, r2.out);
    const auto f1 = slurp(d1 / "attack_m2_n1_seed11.json");
    EXPECT_EQ(f1, slurp(d2 / "attack_m2_n1_seed11.json"));
    const auto doc = io::json::parse(f1);
    EXPECT_GE(doc["margin"].get<double>(), -1e-9);
    EXPECT_LE(doc["p_exact"].get<double>(), doc["bound"].get<double>() + 1e-9);
}

TEST(Cli, AttackSerialMatchesParallel) {
    const auto d1 = scratch("atk3");
    const auto d2 = scratch("atk4");
    const auto r1 = call({"attack", "--n", "2", "--restarts", "2", "--iterations", "20", "--out",
                          d1.string()});
    const auto r2 = call({"attack", "--n", "2", "--restarts", "2", "--iterations", "20", "--serial",
                          "--out", d2.string()});
    ASSERT_EQ(r1.code, cli::kOk);
    EXPECT_EQ(r1.out, r2.out);
}

TEST(Cli, AttackGamma) {
    const auto d = scratch("atk5");
    const auto r = call({"attack", "--n", "2", "--gamma", "0.25", "--restarts", "2",
                         "--iterations", "20", "--out", d.string()});
    ASSERT_EQ(r.code, cli::kOk);
    const auto doc = io::json::parse(r.out);
    EXPECT_GE(doc["margin_gamma"].get<double>(), -1e-9);
}

TEST(Cli, AttackCapacity) {
    EXPECT_EQ(call({"attack", "--m", "3", "--n", "5"}).code, cli::kCapacityError);
}

TEST(Cli, OutDirFromEnvironment) {
    const auto dir = scratch("env");
    ::setenv(cli::kOutDirEnv, dir.string().c_str(), 1);
    const auto r = call({"bounds", "--n-max", "2"});
    ::unsetenv(cli::kOutDirEnv);
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_TRUE(fs::exists(dir / "bounds.csv"));
}

} // namespace
} // namespace scot
