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
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "adversary/internal.hpp"
#include "scot/adversary.hpp"
#include "scot/bounds.hpp"
#include "scot/errors.hpp"

namespace scot::adv {
namespace {

constexpr double kPi = std::numbers::pi;

using dqacm::DqacmConfig;
using dqacm::make_config;

// r for flat index idx: digit i*n + j (most significant first) is r_i^j.
dqacm::Strings r_of(int m, int n, int l, long idx) {
    dqacm::Strings r(m, std::vector<int>(n));
    for (int q = m * n - 1; q >= 0; --q) {
        r[q / n][q % n] = static_cast<int>(idx % l);
        idx /= l;
    }
    return r;
}

int as_index(const std::vector<int>& str, int l) {
    int e = 0;
    for (int v : str) {
        e = e * l + v;
    }
    return e;
}

// Distance histogram straight from the definition: Phi = U (Psi_r^s (x) chi),
// weight of (Pi_0^{e0} (x) Pi_1^{e1}) on Phi, averaged over s and r.
std::vector<double> brute_histogram(const DqacmConfig& cfg, const Strategy& st) {
    const int m = cfg.m;
    const int n = cfg.n;
    const int l = cfg.l();
    const int K = static_cast<int>(std::pow(l, n));
    const long R = static_cast<long>(std::pow(l, m * n));
    const auto tuples = dqacm::enumerate_perm_tuples(m, n);
    const auto b1 = st.split.b1_factors();
    std::vector<double> h((n + 1) * (n + 1), 0.0);
    for (std::size_t si = 0; si < tuples.size(); ++si) {
        for (long ri = 0; ri < R; ++ri) {
            const auto r = r_of(m, n, l, ri);
            const auto psi = qm::prepare_product_state(cfg.family, r, tuples[si]);
            const Vec phi = st.unitary * qm::kron(psi.amplitudes, st.ancilla_state);
            for (int e0 = 0; e0 < K; ++e0) {
                const Vec a = qm::apply_on_subsystems(phi, st.split.factor_dims,
                                                      st.split.b0_factors,
                                                      st.meas0[si].projector(e0));
                for (int e1 = 0; e1 < K; ++e1) {
                    const Vec b = qm::apply_on_subsystems(a, st.split.factor_dims, b1,
                                                          st.meas1[si].projector(e1));
                    const int w0 = dqacm::hamming_distance(index_string(e0, n, l), r[st.l0]);
                    const int w1 = dqacm::hamming_distance(index_string(e1, n, l), r[st.l1]);
                    h[w0 * (n + 1) + w1] += b.squaredNorm();
                }
            }
        }
    }
    for (auto& v : h) {
        v /= static_cast<double>(tuples.size()) * static_cast<double>(R);
    }
    return h;
}

std::vector<DqacmConfig> small_grid() {
    return {make_config(2, 1, {kPi / 2}), make_config(2, 1, {kPi / 3}), make_config(2, 2, {kPi / 2}),
            make_config(3, 1)};
}

TEST(Encoding, MatrixColumnsAreProductStates) {
    for (const auto& cfg : small_grid()) {
        const auto tuples = dqacm::enumerate_perm_tuples(cfg.m, cfg.n);
        for (const auto& s : tuples) {
            const Mat enc = encoding_matrix(cfg, s);
            for (Eigen::Index ri = 0; ri < enc.cols(); ++ri) {
                const auto r = r_of(cfg.m, cfg.n, cfg.l(), ri);
                EXPECT_EQ(r_from_index(cfg, ri), r);
                const auto psi = qm::prepare_product_state(cfg.family, r, s);
                ASSERT_LT((enc.col(ri) - psi.amplitudes).norm(), 1e-12);
            }
        }
    }
}

TEST(Encoding, FactoredApplyMatchesDense) {
    qm::Rng rng(3);
    for (int m : {2, 3}) {
        for (int n : {1, 2}) {
            const auto cfg = make_config(m, n);
            const auto tuples = dqacm::enumerate_perm_tuples(m, n);
            const detail::EncodingCache cache(cfg, tuples);
            for (std::size_t si = 0; si < tuples.size(); si += 1 + tuples.size() / 7) {
                const Mat enc = encoding_matrix(cfg, tuples[si]);
                const Mat x = Mat::Random(5, enc.rows());
                EXPECT_LT((cache.apply(si, x) - x * enc).norm(), 1e-11);
                EXPECT_LT((cache.apply_adjoint(si, x) - x * enc.adjoint()).norm(), 1e-11);
            }
        }
    }
}

TEST(Encoding, StringIndex) {
    EXPECT_EQ(string_index({1, 0, 1}, 2), 5);
    EXPECT_EQ(index_string(5, 3, 2), (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(as_index({1, 1}, 2), string_index({1, 1}, 2));
}

TEST(CheatProbability, MatchesPurificationOracle) {
    std::uint64_t seed = 1;
    for (const auto& cfg : small_grid()) {
        for (int anc : {1, 2}) {
            for (int k = 0; k < 3; ++k) {
                const auto st = random_strategy(cfg, 0, 1, anc, seed++);
                const auto ref = brute_histogram(cfg, st);
                const auto h = distance_histogram(cfg, st);
                ASSERT_EQ(h.weights.size(), ref.size());
                for (std::size_t c = 0; c < ref.size(); ++c) {
                    EXPECT_NEAR(h.weights[c], ref[c], 1e-12);
                }
                double total = 0.0;
                for (double w : h.weights) {
                    total += w;
                }
                EXPECT_NEAR(total, 1.0, 1e-10);
                EXPECT_NEAR(cheat_probability_exact(cfg, st), ref[0], 1e-12);
            }
        }
    }
}

TEST(CheatProbability, OtherTargets) {
    const auto cfg = make_config(3, 1);
    std::uint64_t seed = 50;
    for (int l0 = 0; l0 < 3; ++l0) {
        for (int l1 = 0; l1 < 3; ++l1) {
            if (l0 == l1) {
                continue;
            }
            const auto st = random_strategy(cfg, l0, l1, 2, seed++);
            EXPECT_NEAR(cheat_probability_exact(cfg, st), brute_histogram(cfg, st)[0], 1e-12);
            EXPECT_LE(cheat_probability_exact(cfg, st),
                      bounds::epsilon_bob(3, cfg.family.lambda(), 1) + 1e-9);
        }
    }
}

TEST(CheatProbability, SerialMatchesParallelBitwise) {
    for (const auto& cfg : small_grid()) {
        const auto st = random_strategy(cfg, 0, 1, 2, 99);
        const auto a = distance_histogram(cfg, st, Exec::Serial);
        const auto b = distance_histogram(cfg, st, Exec::Parallel);
        EXPECT_EQ(a.weights, b.weights);
    }
}

TEST(CheatProbability, SingleBranchAndBlind) {
    for (const auto& cfg : small_grid()) {
        const double l = cfg.l();
        const auto single = single_branch_strategy(cfg, 0, 1);
        EXPECT_NEAR(cheat_probability_exact(cfg, single), std::pow(l, -cfg.n), 1e-12);
        const auto blind = blind_strategy(cfg, 0, 1);
        EXPECT_NEAR(cheat_probability_exact(cfg, blind), std::pow(l, -2 * cfg.n), 1e-12);
    }
}

TEST(CheatProbability, GammaFloor) {
    const auto cfg1 = make_config(2, 1, {kPi / 2});
    const auto st1 = random_strategy(cfg1, 0, 1, 2, 7);
    EXPECT_EQ(cheat_probability_gamma(cfg1, st1, 0.0), cheat_probability_exact(cfg1, st1));
    // floor(1 * 0.5) = 0
    EXPECT_EQ(cheat_probability_gamma(cfg1, st1, 0.5), cheat_probability_exact(cfg1, st1));

    const auto cfg2 = make_config(2, 2, {kPi / 2});
    const auto st2 = random_strategy(cfg2, 0, 1, 2, 8);
    const auto ref = brute_histogram(cfg2, st2);
    // radius floor(2 * 0.5) = 1
    const double within1 = ref[0] + ref[1] + ref[3] + ref[4];
    EXPECT_NEAR(cheat_probability_gamma(cfg2, st2, 0.5), within1, 1e-12);
    EXPECT_NEAR(cheat_probability_gamma(cfg2, st2, 0.3), ref[0], 1e-12);
    EXPECT_GE(cheat_probability_gamma(cfg2, st2, 0.5), cheat_probability_exact(cfg2, st2));
    EXPECT_LE(cheat_probability_gamma(cfg2, st2, 0.3),
              bounds::epsilon_bob_gamma(2, 0.5, 2, 0.3) + 1e-9);
}

TEST(Strategy, RandomInvariants) {
    const auto cfg = make_config(2, 2, {kPi / 2});
    std::set<std::uint64_t> hashes;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto st = random_strategy(cfg, 0, 1, 2, seed);
        EXPECT_NO_THROW(st.validate(cfg));
        EXPECT_LT(qm::unitarity_residual(st.unitary), 1e-9);
        hashes.insert(strategy_hash(st));
    }
    EXPECT_EQ(hashes.size(), 100u);
    EXPECT_EQ(strategy_hash(random_strategy(cfg, 0, 1, 2, 5)),
              strategy_hash(random_strategy(cfg, 0, 1, 2, 5)));
}

TEST(Strategy, Capacity) {
    EXPECT_THROW(check_capacity(make_config(3, 4), 2), CapacityError);
    EXPECT_THROW(check_capacity(make_config(4, 1), 2), CapacityError);
    EXPECT_NO_THROW(check_capacity(make_config(3, 2), 2));
}

TEST(Strategy, BadTargets) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    EXPECT_THROW((void)random_strategy(cfg, 0, 0, 2, 1), InputError);
    EXPECT_THROW((void)random_strategy(cfg, 0, 2, 2, 1), InputError);
}

TEST(Strategy, UnitaryFromIsometryRoundTrip) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    auto st = random_strategy(cfg, 0, 1, 2, 4);
    const Mat iso = split_isometry(st);
    qm::Rng rng(1);
    const Mat u = unitary_from_isometry(st.split, st.ancilla_state, iso, rng);
    EXPECT_LT(qm::unitarity_residual(u), 1e-10);
    const double before = cheat_probability_exact(cfg, st);
    st.unitary = u;
    EXPECT_NEAR(cheat_probability_exact(cfg, st), before, 1e-12);
}

TEST(Bound, RandomStrategiesSmall) {
    for (const auto& cfg : small_grid()) {
        const double eps = bounds::epsilon_bob(cfg.m, cfg.family.lambda(), cfg.n);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto st = random_strategy(cfg, 0, 1, 2, 1000 + seed);
            EXPECT_LE(cheat_probability_exact(cfg, st), eps + 1e-9);
        }
    }
}

TEST(Seesaw, ZeroIterationsKeepsInitial) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const auto res = seesaw_optimize(cfg, 0, 1, 2, 0, 17);
    const auto init = random_strategy(cfg, 0, 1, 2, 17, balanced_b0(cfg, 2));
    EXPECT_EQ(strategy_hash(res.strategy), strategy_hash(init));
    EXPECT_NEAR(res.p, cheat_probability_exact(cfg, init), 1e-14);
    EXPECT_EQ(res.trace.size(), 1u);
}

TEST(Seesaw, MonotoneAndBounded) {
    for (const auto& cfg : small_grid()) {
        const double eps = bounds::epsilon_bob(cfg.m, cfg.family.lambda(), cfg.n);
        for (std::uint64_t seed : {1u, 2u}) {
            const auto res = seesaw_optimize(cfg, 0, 1, 2, 60, seed);
            for (std::size_t k = 1; k < res.trace.size(); ++k) {
                EXPECT_GE(res.trace[k], res.trace[k - 1] - 1e-10);
            }
            EXPECT_LE(res.p, eps + 1e-9);
            EXPECT_NEAR(res.p, res.trace.back(), 1e-9);
            EXPECT_NEAR(res.p, brute_histogram(cfg, res.strategy)[0], 1e-9);
        }
    }
}

TEST(Seesaw, SearchDeterministic) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    SeesawOptions opts;
    opts.restarts = 3;
    opts.iterations = 40;
    opts.seed = 5;
    const auto a = seesaw_search(cfg, opts);
    const auto b = seesaw_search(cfg, opts);
    EXPECT_EQ(a.restart_values, b.restart_values);
    EXPECT_EQ(strategy_hash(a.best.strategy), strategy_hash(b.best.strategy));
    opts.exec = Exec::Serial;
    const auto c = seesaw_search(cfg, opts);
    EXPECT_EQ(a.restart_values, c.restart_values);
}

TEST(Omega, Examples) {
    const dqacm::PermTuple id1{{0, 1}};
    const dqacm::PermTuple sw1{{1, 0}};
    EXPECT_EQ(omega_weight(sw1, 0, 1, id1, sw1), 1);
    EXPECT_EQ(omega_weight(id1, 0, 1, id1, sw1), 0);
    const dqacm::PermTuple v{{1, 0}, {0, 1}, {1, 0}};
    EXPECT_EQ(omega_weight(v, 0, 1, {{0, 1}, {0, 1}, {0, 1}}, {{1, 0}, {0, 1}, {1, 0}}), 2);
}

TEST(Omega, IndependentOfS) {
    for (int m : {2, 3}) {
        for (int n : {1, 2}) {
            const auto tuples = dqacm::enumerate_perm_tuples(m, n);
            for (const auto& v : tuples) {
                for (const auto& s : tuples) {
                    EXPECT_NO_THROW((void)omega_weight(v, 0, m - 1, tuples.front(), s));
                }
            }
        }
    }
}

TEST(Orthogonality, DistinctTuples) {
    qm::Rng rng(6);
    for (int m : {2, 3}) {
        for (int n : {1, 2}) {
            const auto tuples = dqacm::enumerate_perm_tuples(m, n);
            std::uniform_int_distribution<std::size_t> pick(0, tuples.size() - 1);
            for (int k = 0; k < 20; ++k) {
                const auto& s = tuples[pick(rng)];
                std::set<dqacm::PermTuple> seen;
                for (const auto& v : tuples) {
                    seen.insert(dqacm::permute_tuple(s, v));
                }
                EXPECT_EQ(seen.size(), tuples.size());
            }
        }
    }
}

TEST(Fgf, IdentityAndSwap) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const auto tuples = dqacm::enumerate_perm_tuples(2, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto st = random_strategy(cfg, 0, 1, 2, seed);
        for (const auto& s : tuples) {
            const auto id = verify_fgf_lemma(cfg, 0, 1, s, tuples[0], st.meas0, st.meas1);
            EXPECT_EQ(id.omega, 0);
            EXPECT_DOUBLE_EQ(id.bound, 1.0);
            EXPECT_TRUE(id.ok);
            const auto sw = verify_fgf_lemma(cfg, 0, 1, s, tuples[1], st.meas0, st.meas1);
            EXPECT_EQ(sw.omega, 1);
            EXPECT_NEAR(sw.bound, 0.5, 1e-12);
            EXPECT_LE(sw.norm, 0.5 + 1e-9);
            EXPECT_LE(sw.dd_norm_sq, sw.norm + 1e-9);
        }
    }
}

TEST(TargetPairs, OtherThanZeroOne) {
    const auto cfg = make_config(3, 1);
    const double eps = bounds::epsilon_bob(3, cfg.family.lambda(), 1);
    const auto tuples = dqacm::enumerate_perm_tuples(3, 1);
    std::uint64_t seed = 40;
    for (const auto& [l0, l1] : std::vector<std::pair<int, int>>{{2, 0}, {1, 2}, {2, 1}}) {
        const auto st = random_strategy(cfg, l0, l1, 2, seed++);
        const auto ref = brute_histogram(cfg, st);
        const auto h = distance_histogram(cfg, st);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            EXPECT_NEAR(h.weights[k], ref[k], 1e-12);
        }
        EXPECT_LE(cheat_probability_exact(cfg, st), eps + 1e-9);
        for (const auto& v : tuples) {
            const auto r = verify_fgf_lemma(cfg, l0, l1, tuples[seed % tuples.size()], v, st.meas0,
                                            st.meas1);
            EXPECT_TRUE(r.ok) << l0 << l1;
        }
    }
}

TEST(Fgf, Capacity) {
    const auto cfg = make_config(3, 2);
    const auto st = random_strategy(cfg, 0, 1, 2, 1);
    const auto tuples = dqacm::enumerate_perm_tuples(3, 2);
    EXPECT_THROW((void)verify_fgf_lemma(cfg, 0, 1, tuples[0], tuples[1], st.meas0, st.meas1),
                 CapacityError);
}

TEST(Equivalence, DeterministicRecord) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const auto strat = random_branching_strategy(cfg, 2, 1, 3);
    const auto r = verify_procedure_equivalence(cfg, strat, 4);
    EXPECT_TRUE(r.ok);
    EXPECT_LT(r.max_tv, 1e-9);
}

TEST(Equivalence, Random) {
    const auto cfg = make_config(2, 1, {kPi / 2});
    const int g = static_cast<int>(gamma_labels(2).size());
    EXPECT_EQ(g, 4);
    for (int k = 0; k < 5; ++k) {
        const auto strat = random_branching_strategy(cfg, 2, 1 + k % g, 10 + k);
        const auto r = verify_procedure_equivalence(cfg, strat, 20 + k);
        EXPECT_TRUE(r.ok) << k;
        EXPECT_LT(r.max_tv, 1e-9);
    }
}

} // namespace
} // namespace scot::adv
