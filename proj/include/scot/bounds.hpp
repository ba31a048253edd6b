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

/**
 * Closed-form security quantities for class-C DQACM.
 */
#pragma once

#include <cstdint>

namespace scot::bounds {

/// h(g) = -g log2 g - (1-g) log2 (1-g), with h(0) = h(1) = 0.
[[nodiscard]] double binary_entropy(double g);

/// ((m - 1 + sqrt(lam)) / m)^n.
[[nodiscard]] double epsilon_bob(int m, double lam, int n);

/// [2^{2h(gamma)} (m - 1 + sqrt(lam)) / m]^n, gamma in [0, 1/2].
[[nodiscard]] double epsilon_bob_gamma(int m, double lam, int n, double gamma);

struct GammaThreshold {
    double gamma = 0.0;
    double residual = 0.0;
};

/// Root of 2^{2h(G)} (m - 1 + sqrt(lam)) / m = 1 on (1e-12, 1/2] by bisection.
[[nodiscard]] GammaThreshold gamma_threshold(int m, double lam);

/// C(n, w) ((m-1)!)^w (m! - (m-1)!)^{n-w}; throws CapacityError on overflow.
[[nodiscard]] std::uint64_t count_omega(int m, int n, int omega);

/// Largest integer w with w <= n*gamma (gamma taken as an exact decimal).
[[nodiscard]] int ball_radius(int n, double gamma);

/// sum_{w <= n gamma} C(n, w). Throws InvariantError if the 2^{n h(gamma)}
/// bound fails where it applies.
[[nodiscard]] std::uint64_t hamming_ball_size(int n, double gamma);

[[nodiscard]] std::uint64_t binomial(int n, int k);

struct BoundReport {
    int m = 2;
    int n = 1;
    double lambda = 0.5;
    double gamma = 0.0;
    double epsilon_exact = 0.0;
    double epsilon_gamma = 0.0;
    double gamma_threshold = 0.0;
};

[[nodiscard]] BoundReport make_report(int m, double lam, int n, double gamma);

} // namespace scot::bounds
