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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "scot/dqacm.hpp"
#include "scot/errors.hpp"

namespace scot::dqacm {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Permutations, Enumerate) {
    const auto p2 = enumerate_permutations(2);
    ASSERT_EQ(p2.size(), 2u);
    EXPECT_EQ(p2[0], (Perm{0, 1}));
    EXPECT_EQ(p2[1], (Perm{1, 0}));
    EXPECT_EQ(enumerate_permutations(3).size(), 6u);

    const auto p4 = enumerate_permutations(4);
    ASSERT_EQ(p4.size(), 24u);
    EXPECT_TRUE(std::is_sorted(p4.begin(), p4.end()));
    EXPECT_EQ(std::set<Perm>(p4.begin(), p4.end()).size(), 24u);
    for (const auto& p : p4) {
        EXPECT_TRUE(is_permutation(p, 4));
    }
    EXPECT_THROW((void)enumerate_permutations(1), InputError);
    EXPECT_THROW((void)enumerate_permutations(9), InputError);
}

TEST(Permutations, Tuples) {
    const auto t = enumerate_perm_tuples(3, 2);
    ASSERT_EQ(t.size(), 36u);
    const auto perms = enumerate_permutations(3);
    EXPECT_EQ(t[7][0], perms[1]);
    EXPECT_EQ(t[7][1], perms[1]);
}

TEST(Permutations, PermuteTuple) {
    const PermTuple s{{2, 0, 1}};
    const PermTuple v{{1, 2, 0}};
    // s_v[i] = s[v[i]]
    EXPECT_EQ(permute_tuple(s, v), (PermTuple{{0, 1, 2}}));
}

TEST(Sampling, Deterministic) {
    const auto cfg = make_config(2, 4, {kPi / 2});
    const auto a = sample_inputs(cfg, 77);
    const auto b = sample_inputs(cfg, 77);
    EXPECT_EQ(a.r, b.r);
    EXPECT_EQ(a.s, b.s);
}

TEST(Sampling, Uniform) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const int samples = 100000;
    int swaps = 0;
    int ones = 0;
    for (int k = 0; k < samples; ++k) {
        const auto in = sample_inputs(cfg, 1000 + k);
        swaps += in.s[0][0] == 1;
        ones += in.r[0][0];
    }
    EXPECT_NEAR(swaps / double(samples), 0.5, 0.01);
    EXPECT_NEAR(ones / double(samples), 0.5, 0.01);
}

TEST(Stage1, SameBasisDeterministic) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const AliceInputs a{{{1}, {0}}, {{0, 1}}};
        EXPECT_EQ(stage1_honest(cfg, a, 0, seed).d[0][0], 1);
        const AliceInputs b{{{0}, {1}}, {{1, 0}}};
        EXPECT_EQ(stage1_honest(cfg, b, 0, seed).d[1][0], 0);
    }
}

TEST(Stage1, OtherSlotUniform) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const AliceInputs a{{{0}, {0}}, {{0, 1}}};
    int ones = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; ++k) {
        ones += stage1_honest(cfg, a, 0, k).d[1][0];
    }
    EXPECT_NEAR(ones / double(trials), 0.5, 0.02);
}

TEST(Stage1, BadC) {
    const auto cfg = make_config(3, 2);
    const auto in = sample_inputs(cfg, 1);
    EXPECT_THROW((void)stage1_honest(cfg, in, 3, 0), InputError);
    EXPECT_THROW((void)stage1_honest(cfg, in, -1, 0), InputError);
}

TEST(Decode, IndexLookup) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const BobRecord rec{1, {{0}, {1}}};
    EXPECT_EQ(decode(cfg, 1, rec, {{0, 1}}), (std::vector<int>{1}));
    EXPECT_EQ(decode(cfg, 1, rec, {{1, 0}}), (std::vector<int>{0}));
    EXPECT_THROW((void)decode(cfg, 1, rec, {{0, 1}, {0, 1}}), InputError);
}

TEST(Decode, PureFunction) {
    const auto cfg = make_config(3, 4);
    const auto in = sample_inputs(cfg, 3);
    const auto rec = stage1_honest(cfg, in, 2, 9);
    EXPECT_EQ(decode(cfg, 2, rec, in.s), decode(cfg, 2, rec, in.s));
}

TEST(Decode, PerfectCorrectness) {
    int runs = 0;
    for (int m : {2, 3}) {
        for (int n : {1, 4, 8}) {
            const auto cfg = make_config(m, n);
            for (int k = 0; k < 1000 / (3 * m); ++k) {
                const auto in = sample_inputs(cfg, 31 * k + n);
                for (int c = 0; c < m; ++c) {
                    const auto rec = stage1_honest(cfg, in, c, 5 * k + c);
                    ASSERT_EQ(decode(cfg, c, rec, in.s), in.r[c]);
                    ++runs;
                }
            }
        }
    }
    EXPECT_GE(runs, 1000);
}

TEST(Decode, FlipStatistics) {
    // Hamming distance of the decoded string is Binomial(n, p).
    const int n = 8;
    const double p = 0.1;
    const auto cfg = make_config(2, n, {kPi / 2});
    const int trials = 1000;
    double total = 0.0;
    for (int k = 0; k < trials; ++k) {
        const auto in = sample_inputs(cfg, k);
        const auto rec = stage1_honest(cfg, in, k % 2, 7000 + k, p);
        total += hamming_distance(decode(cfg, k % 2, rec, in.s), in.r[k % 2]);
    }
    const double mean = total / trials;
    const double sd = std::sqrt(n * p * (1 - p) / trials);
    EXPECT_NEAR(mean, n * p, 4 * sd);
}

TEST(KOutOfM, ReducesToSingle) {
    const auto cfg = make_config(3, 3);
    const auto in = sample_inputs(cfg, 4);
    const auto recs = k_stage1_honest(cfg, 1, in, {2}, 11);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].d, stage1_honest(cfg, in, 2, 11).d);
}

TEST(KOutOfM, TwoOfThree) {
    const auto cfg = make_config(3, 6);
    for (int k = 0; k < 50; ++k) {
        const auto in = sample_inputs(cfg, 100 + k);
        const auto recs = k_stage1_honest(cfg, 2, in, {0, 2}, k);
        EXPECT_EQ(decode(cfg, 0, recs[0], in.s), in.r[0]);
        EXPECT_EQ(decode(cfg, 2, recs[1], in.s), in.r[2]);
    }
}

TEST(KOutOfM, Errors) {
    const auto cfg = make_config(3, 2);
    const auto in = sample_inputs(cfg, 1);
    EXPECT_THROW((void)k_stage1_honest(cfg, 3, in, {0, 1, 2}, 0), InputError);
    EXPECT_THROW((void)k_stage1_honest(cfg, 2, in, {1, 1}, 0), InputError);
}

TEST(Config, Validation) {
    EXPECT_THROW((void)make_config(2, 0), InputError);
    EXPECT_THROW((void)make_config(2, 2, {kPi / 2}, 0.6), InputError);
    auto cfg = make_config(3, 2);
    cfg.m = 2;
    EXPECT_THROW(cfg.validate(), InputError);
}

} // namespace
} // namespace scot::dqacm
