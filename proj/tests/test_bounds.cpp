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

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include "scot/bounds.hpp"
#include "scot/dqacm.hpp"
#include "scot/errors.hpp"

namespace scot::bounds {
namespace {

using big = boost::multiprecision::cpp_dec_float_50;

constexpr double kPi = std::numbers::pi;

big h50(const big& g) {
    using boost::multiprecision::log;
    const big ln2 = log(big(2));
    return -(g * log(g) + (1 - g) * log(1 - g)) / ln2;
}

big eps50(int m, const big& lam, int n, const big& gamma) {
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    big base = (m - 1 + sqrt(lam)) / m;
    if (gamma > 0) {
        base *= pow(big(2), 2 * h50(gamma));
    }
    return pow(base, n);
}

TEST(Entropy, Values) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.11), h50(big("0.11")).convert_to<double>(), 1e-12);
    EXPECT_THROW((void)binary_entropy(-0.1), InputError);
    EXPECT_THROW((void)binary_entropy(1.5), InputError);
}

TEST(Epsilon, HalfLambda) {
    for (int n = 1; n <= 10; ++n) {
        EXPECT_NEAR(epsilon_bob(2, 0.5, n), std::pow(0.5 + 1.0 / (2.0 * std::sqrt(2.0)), n), 1e-15);
    }
    EXPECT_NEAR(epsilon_bob(2, 0.5, 1), 0.8535533906, 1e-9);
    EXPECT_NEAR(epsilon_bob(2, 0.5, 1), eps50(2, big("0.5"), 1, 0).convert_to<double>(), 1e-15);
    EXPECT_THROW((void)epsilon_bob(2, 1.0, 1), InputError);
    EXPECT_THROW((void)epsilon_bob(2, 0.0, 1), InputError);
}

TEST(Epsilon, Equispaced) {
    for (int m = 2; m <= 6; ++m) {
        const double lam = std::pow(std::cos(kPi / (2 * m)), 2);
        for (int n = 1; n <= 12; ++n) {
            EXPECT_NEAR(epsilon_bob(m, lam, n), std::pow((m - 1 + std::cos(kPi / (2 * m))) / m, n),
                        1e-12);
        }
    }
    EXPECT_NEAR(epsilon_bob(3, std::pow(std::cos(kPi / 6), 2), 1), (2 + std::cos(kPi / 6)) / 3,
                1e-15);
}

TEST(Epsilon, Monotone) {
    for (int m : {2, 3, 4}) {
        double prev_lam = -1.0;
        for (double lam = 0.05; lam < 0.99; lam += 0.05) {
            const double e = epsilon_bob(m, lam, 3);
            EXPECT_GT(e, prev_lam);
            prev_lam = e;
            double prev_n = 2.0;
            for (int n = 1; n <= 20; ++n) {
                const double v = epsilon_bob(m, lam, n);
                EXPECT_LT(v, prev_n);
                prev_n = v;
            }
        }
    }
}

TEST(EpsilonGamma, Oracle) {
    EXPECT_EQ(epsilon_bob_gamma(2, 0.5, 7, 0.0), epsilon_bob(2, 0.5, 7));
    const double v = epsilon_bob_gamma(2, 0.5, 10, 0.01);
    const double ref = eps50(2, big("0.5"), 10, big("0.01")).convert_to<double>();
    EXPECT_NEAR(v / ref, 1.0, 1e-12);
    for (int m : {2, 3, 5}) {
        for (double g : {0.001, 0.05, 0.2, 0.5}) {
            const double lam = std::pow(std::cos(kPi / (2 * m)), 2);
            const double ref2 = eps50(m, big(lam), 6, big(g)).convert_to<double>();
            EXPECT_NEAR(epsilon_bob_gamma(m, lam, 6, g) / ref2, 1.0, 1e-12);
        }
    }
    EXPECT_THROW((void)epsilon_bob_gamma(2, 0.5, 1, 0.51), InputError);
}

TEST(GammaThreshold, HalfLambda) {
    const auto g = gamma_threshold(2, 0.5);
    EXPECT_GE(g.gamma, 0.0145);
    EXPECT_LE(g.gamma, 0.0155);
    EXPECT_LT(g.residual, 1e-10);
    for (int n : {1, 5, 40}) {
        EXPECT_NEAR(epsilon_bob_gamma(2, 0.5, n, g.gamma), 1.0, 1e-9);
    }
}

TEST(GammaThreshold, PlugBack) {
    for (int m = 2; m <= 6; ++m) {
        const double lam = std::pow(std::cos(kPi / (2 * m)), 2);
        const auto g = gamma_threshold(m, lam);
        EXPECT_LE(g.gamma, 0.5);
        EXPECT_GT(g.gamma, 0.0);
        const big val = eps50(m, big(lam), 1, big(g.gamma));
        EXPECT_LT(std::abs(val.convert_to<double>() - 1.0), 1e-10) << m;
    }
}

TEST(GammaThreshold, DecreasesWithLambda) {
    double prev = 1.0;
    for (double lam = 0.05; lam < 0.96; lam += 0.05) {
        const double g = gamma_threshold(2, lam).gamma;
        EXPECT_LT(g, prev);
        prev = g;
    }
}

TEST(GammaThreshold, BelowThresholdBoundBelowOne) {
    for (int m : {2, 3, 4}) {
        const double lam = std::pow(std::cos(kPi / (2 * m)), 2);
        const double gt = gamma_threshold(m, lam).gamma;
        for (double f : {0.0, 0.25, 0.5, 0.75}) {
            for (int n : {1, 10, 100}) {
                EXPECT_LT(epsilon_bob_gamma(m, lam, n, f * gt), 1.0);
            }
        }
    }
}

TEST(CountOmega, Examples) {
    EXPECT_EQ(count_omega(2, 2, 0), 1u);
    EXPECT_EQ(count_omega(2, 2, 1), 2u);
    EXPECT_EQ(count_omega(2, 2, 2), 1u);
    EXPECT_EQ(count_omega(3, 1, 1), 2u);
    EXPECT_THROW((void)count_omega(2, 2, 3), InputError);
    for (int m = 2; m <= 5; ++m) {
        for (int n = 1; n <= 4; ++n) {
            std::uint64_t total = 0;
            for (int w = 0; w <= n; ++w) {
                total += count_omega(m, n, w);
            }
            std::uint64_t fact = 1;
            for (int k = 2; k <= m; ++k) {
                fact *= k;
            }
            EXPECT_EQ(total, static_cast<std::uint64_t>(std::llround(std::pow(fact, n))));
        }
    }
}

TEST(CountOmega, BruteForce) {
    for (int m : {2, 3}) {
        for (int n : {1, 2, 3}) {
            for (int l0 = 0; l0 < m; ++l0) {
                for (int l1 = 0; l1 < m; ++l1) {
                    if (l0 == l1) {
                        continue;
                    }
                    std::vector<std::uint64_t> tally(n + 1, 0);
                    for (const auto& v : dqacm::enumerate_perm_tuples(m, n)) {
                        int w = 0;
                        for (const auto& vj : v) {
                            w += vj[l1] == l0;
                        }
                        ++tally[w];
                    }
                    for (int w = 0; w <= n; ++w) {
                        EXPECT_EQ(tally[w], count_omega(m, n, w));
                    }
                }
            }
        }
    }
}

TEST(HammingBall, Sizes) {
    EXPECT_EQ(hamming_ball_size(10, 0.0), 1u);
    EXPECT_EQ(hamming_ball_size(10, 0.5), 638u);
    const auto s = hamming_ball_size(20, 0.1);
    EXPECT_EQ(s, 1u + 20u + 190u);
    using boost::multiprecision::pow;
    EXPECT_LE(big(s), pow(big(2), 20 * h50(big("0.1"))));
}

TEST(HammingBall, Radius) {
    EXPECT_EQ(ball_radius(10, 0.3), 3);
    EXPECT_EQ(ball_radius(1, 0.5), 0);
    EXPECT_EQ(ball_radius(2, 0.5), 1);
    EXPECT_EQ(ball_radius(4, 0.25), 1);
    EXPECT_EQ(ball_radius(3, 0.25), 0);
}

TEST(Report, Fields) {
    const auto r = make_report(2, 0.5, 4, 0.01);
    EXPECT_GT(r.epsilon_exact, 0.0);
    EXPECT_LT(r.epsilon_exact, 1.0);
    EXPECT_LE(r.epsilon_exact, r.epsilon_gamma);
    EXPECT_NEAR(r.gamma_threshold, gamma_threshold(2, 0.5).gamma, 0.0);
}

} // namespace
} // namespace scot::bounds
