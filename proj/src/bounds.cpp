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

#include "scot/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scot/errors.hpp"

namespace scot::bounds {

namespace {

void check_common(int m, double lam, int n) {
    if (m < 2) {
        throw InputError("m must be at least 2");
    }
    if (n < 1) {
        throw InputError("n must be at least 1");
    }
    if (!(lam > 0.0 && lam < 1.0)) {
        throw InputError("lambda must lie in (0, 1)");
    }
}

double bracket(int m, double lam) { return (m - 1 + std::sqrt(lam)) / m; }

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw CapacityError("integer overflow in exact count");
    }
    return a * b;
}

std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) {
        f = mul_checked(f, static_cast<std::uint64_t>(i));
    }
    return f;
}

std::uint64_t pow_checked(std::uint64_t base, int e) {
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        out = mul_checked(out, base);
    }
    return out;
}

} // namespace

double binary_entropy(double g) {
    if (!(g >= 0.0 && g <= 1.0)) {
        throw InputError("binary_entropy: argument outside [0, 1]");
    }
    if (g == 0.0 || g == 1.0) {
        return 0.0;
    }
    return -g * std::log2(g) - (1.0 - g) * std::log2(1.0 - g);
}

double epsilon_bob(int m, double lam, int n) {
    check_common(m, lam, n);
    return std::pow(bracket(m, lam), n);
}

double epsilon_bob_gamma(int m, double lam, int n, double gamma) {
    check_common(m, lam, n);
    if (!(gamma >= 0.0 && gamma <= 0.5)) {
        throw InputError("gamma must lie in [0, 1/2]");
    }
    return std::pow(std::exp2(2.0 * binary_entropy(gamma)) * bracket(m, lam), n);
}

GammaThreshold gamma_threshold(int m, double lam) {
    check_common(m, lam, 1);
    const double q = bracket(m, lam);
    auto f = [&](double g) { return std::exp2(2.0 * binary_entropy(g)) * q - 1.0; };
    double lo = 1e-12;
    double hi = 0.5;
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) {
        throw InvariantError("gamma_threshold: root is not bracketed in (1e-12, 1/2]");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double root = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
    GammaThreshold out{root, std::abs(f(root))};
    if (out.residual >= 1e-10 || out.gamma > 0.5) {
        throw InvariantError("gamma_threshold: bisection did not converge");
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) {
        // exact: out * (n - k + i) is divisible by i at every step
        out = mul_checked(out, static_cast<std::uint64_t>(n - k + i)) / static_cast<std::uint64_t>(i);
    }
    return out;
}

std::uint64_t count_omega(int m, int n, int omega) {
    if (m < 2 || n < 1) {
        throw InputError("count_omega: need m >= 2 and n >= 1");
    }
    if (omega < 0 || omega > n) {
        throw InputError("count_omega: omega must lie in [0, n]");
    }
    const std::uint64_t fm1 = factorial(m - 1);
    const std::uint64_t fm = factorial(m);
    return mul_checked(mul_checked(binomial(n, omega), pow_checked(fm1, omega)),
                       pow_checked(fm - fm1, n - omega));
}

int ball_radius(int n, double gamma) {
    if (!(gamma >= 0.0)) {
        throw InputError("ball_radius: gamma must be non-negative");
    }
    // Decimal inputs such as 0.3 carry a binary representation error well
    // below 1e-9; the slack recovers the intended rational comparison.
    return static_cast<int>(std::floor(n * gamma + 1e-9));
}

std::uint64_t hamming_ball_size(int n, double gamma) {
    if (n < 0 || n > 30) {
        throw InputError("hamming_ball_size: n must lie in [0, 30]");
    }
    if (!(gamma >= 0.0 && gamma <= 0.5)) {
        throw InputError("hamming_ball_size: gamma must lie in [0, 1/2]");
    }
    const int radius = std::min(ball_radius(n, gamma), n);
    std::uint64_t total = 0;
    for (int w = 0; w <= radius; ++w) {
        total += binomial(n, w);
    }
    if (n > 0 && 2 * radius <= n) {
        const double cap = std::exp2(n * binary_entropy(gamma));
        if (static_cast<double>(total) > cap * (1.0 + 1e-12)) {
            throw InvariantError("Hamming ball exceeds 2^{n h(gamma)}");
        }
    }
    return total;
}

BoundReport make_report(int m, double lam, int n, double gamma) {
    BoundReport rep;
    rep.m = m;
    rep.n = n;
    rep.lambda = lam;
    rep.gamma = gamma;
    rep.epsilon_exact = epsilon_bob(m, lam, n);
    rep.epsilon_gamma = epsilon_bob_gamma(m, lam, n, gamma);
    rep.gamma_threshold = gamma_threshold(m, lam).gamma;
    return rep;
}

} // namespace scot::bounds
