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
 * Adversarial strategies against class-C DQACM and the numerical checks
 * that back the security bound.
 *
 * The adversary's joint space is A (mn qudits, slot order) followed by an
 * ancilla E. A split assigns each of these factors to B_0 or B_1; vectors
 * on B_0 B_1 use index b0 * dim(B_1) + b1.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scot/dqacm.hpp"
#include "scot/quantum.hpp"

namespace scot::adv {

using qm::Mat;
using qm::Vec;

/// Rank-1 projectors |w_c><w_c| grouped by label; outcome e is the string
/// whose base-l digits (most significant first) spell e.
struct Measurement {
    Mat basis;
    std::vector<int> labels;
    int outcomes = 0;

    [[nodiscard]] qm::ProjectiveMeasurement projective() const;
    /// Sum of rank-1 projectors carrying label e.
    [[nodiscard]] Mat projector(int e) const;
    void check(double tol = 1e-9) const;
};

/// Haar basis with labels c mod outcomes.
[[nodiscard]] Measurement random_measurement(int dim, int outcomes, qm::Rng& rng);

struct Split {
    std::vector<int> factor_dims;
    std::vector<int> b0_factors;

    [[nodiscard]] std::vector<int> b1_factors() const;
    [[nodiscard]] int dim_b0() const;
    [[nodiscard]] int dim_b1() const;
    [[nodiscard]] int total_dim() const;
    /// Index in factor order -> index in (B_0, B_1) order.
    [[nodiscard]] std::vector<Eigen::Index> row_map() const;
    void check() const;
};

struct Strategy {
    int ancilla_dim = 1;
    Vec ancilla_state;
    Mat unitary;
    Split split;
    int l0 = 0;
    int l1 = 1;
    /// Indexed by the position of s in enumerate_perm_tuples(m, n).
    std::vector<Measurement> meas0;
    std::vector<Measurement> meas1;

    /// Throws InputError/InvariantError when a Strategy invariant fails.
    void validate(const dqacm::DqacmConfig& cfg) const;
};

/// Caps for exact evaluation: m in {2,3}, n <= 3, l^{mn} * ancilla_dim <= 4096.
void check_capacity(const dqacm::DqacmConfig& cfg, int ancilla_dim);

enum class Exec { Serial, Parallel };

/// H(w0, w1): probability that branch 0's guess sits at Hamming distance w0
/// from r_{l0} and branch 1's at w1 from r_{l1}, averaged over s and r.
struct DistanceHistogram {
    int n = 0;
    std::vector<double> weights;

    [[nodiscard]] double at(int w0, int w1) const { return weights[w0 * (n + 1) + w1]; }
    /// Mass with both distances <= radius.
    [[nodiscard]] double within(int radius) const;
};

[[nodiscard]] DistanceHistogram distance_histogram(const dqacm::DqacmConfig& cfg,
                                                   const Strategy& strat,
                                                   Exec exec = Exec::Parallel);

[[nodiscard]] double cheat_probability_exact(const dqacm::DqacmConfig& cfg, const Strategy& strat,
                                             Exec exec = Exec::Parallel);

/// Success when both guesses are within Hamming distance n*gamma; l = 2.
[[nodiscard]] double cheat_probability_gamma(const dqacm::DqacmConfig& cfg, const Strategy& strat,
                                             double gamma, Exec exec = Exec::Parallel);

/// Columns |Psi_r^s> for every r, r indexed digit-wise over (i, j), i major.
[[nodiscard]] Mat encoding_matrix(const dqacm::DqacmConfig& cfg, const dqacm::PermTuple& s);

/// The r matrix encoded by column index idx of encoding_matrix.
[[nodiscard]] dqacm::Strings r_from_index(const dqacm::DqacmConfig& cfg, Eigen::Index idx);

/// Outcome index of a length-n string over Omega.
[[nodiscard]] int string_index(const std::vector<int>& str, int l);
[[nodiscard]] std::vector<int> index_string(int idx, int n, int l);

/// U (I (x) chi) with rows reordered into (B_0, B_1) order.
[[nodiscard]] Mat split_isometry(const Strategy& strat);

[[nodiscard]] Strategy random_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1,
                                       int ancilla_dim, std::uint64_t seed);
/// Same, with B_0 holding the given factors.
[[nodiscard]] Strategy random_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1,
                                       int ancilla_dim, std::uint64_t seed,
                                       std::vector<int> b0_factors);
/// The first floor(F/2) of the F factors, so that dim B_0 and dim B_1 are close.
[[nodiscard]] std::vector<int> balanced_b0(const dqacm::DqacmConfig& cfg, int ancilla_dim);

/// U = 1, B_0 = A, B_1 = ancilla. B_0 measures slot s^j_{l0} in D_{l0};
/// B_1 always guesses the zero string.
[[nodiscard]] Strategy single_branch_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1,
                                              int ancilla_dim = 2);

/// Both branches always answer the zero string.
[[nodiscard]] Strategy blind_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1,
                                      int ancilla_dim = 2);

/// Rebuilds a full unitary whose action on A (x) chi matches a split isometry.
[[nodiscard]] Mat unitary_from_isometry(const Split& split, const Vec& chi, const Mat& iso,
                                        qm::Rng& rng);

struct SeesawResult {
    Strategy strategy;
    double p = 0.0;
    std::vector<double> trace;
    bool converged = false;
};

struct SeesawOptions {
    int l0 = 0;
    int l1 = 1;
    int ancilla_dim = 2;
    int iterations = 200;
    int restarts = 1;
    double tol = 1e-10;
    int polar_steps = 4;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
};

/// One alternating ascent from random_strategy(seed).
[[nodiscard]] SeesawResult seesaw_optimize(const dqacm::DqacmConfig& cfg, int l0, int l1,
                                           int ancilla_dim, int iterations, std::uint64_t seed);
[[nodiscard]] SeesawResult seesaw_optimize(const dqacm::DqacmConfig& cfg,
                                           const SeesawOptions& opts);

struct SeesawSearch {
    SeesawResult best;
    std::vector<double> restart_values;
};

/// Restart r uses seed opts.seed + r; the best restart wins, ties to the lowest r.
[[nodiscard]] SeesawSearch seesaw_search(const dqacm::DqacmConfig& cfg, const SeesawOptions& opts);

/// |{j : s_v^j[l1] = s^j[l0]}|, evaluated at two probes that must agree.
[[nodiscard]] int omega_weight(const dqacm::PermTuple& v, int l0, int l1,
                               const dqacm::PermTuple& s_probe,
                               const dqacm::PermTuple& s_probe2);

struct FgfResult {
    double norm = 0.0;
    double bound = 0.0;
    /// ||D_s D_{s_v}||^2 for the same measurements.
    double dd_norm_sq = 0.0;
    int omega = 0;
    bool ok = false;
};

/// Builds F_s and G_{s_v} on C (x) B_0 (x) B_1 and checks
/// ||F_s G_{s_v} F_s|| <= lambda^{omega_v} + 1e-9. meas0/meas1 are indexed
/// like Strategy::meas0/meas1.
[[nodiscard]] FgfResult verify_fgf_lemma(const dqacm::DqacmConfig& cfg, int l0, int l1,
                                         const dqacm::PermTuple& s, const dqacm::PermTuple& v,
                                         const std::vector<Measurement>& meas0,
                                         const std::vector<Measurement>& meas1);

/// Outcome labels (b', i, j) with i != j, in lexicographic order.
[[nodiscard]] std::vector<std::array<int, 3>> gamma_labels(int m);

/// A strategy whose branch measurements depend on an intermediate outcome
/// in gamma_labels(m), recorded by the projective measurement `record` on B_0 B_1.
struct BranchingStrategy {
    Strategy base;
    Measurement record;
    /// [outcome][s index]
    std::vector<std::vector<Measurement>> meas0;
    std::vector<std::vector<Measurement>> meas1;
};

/// `active` controls how many intermediate outcomes carry weight (>= 1).
[[nodiscard]] BranchingStrategy random_branching_strategy(const dqacm::DqacmConfig& cfg,
                                                          int ancilla_dim, int active,
                                                          std::uint64_t seed);

struct EquivalenceResult {
    double max_tv = 0.0;
    int trials = 0;
    bool ok = false;
};

/// Compares joint (outcome, e0, e1) distributions of the classically
/// branching procedure and its coherent-register version for random (r, s).
[[nodiscard]] EquivalenceResult verify_procedure_equivalence(const dqacm::DqacmConfig& cfg,
                                                             const BranchingStrategy& strat,
                                                             std::uint64_t seed, int trials = 10);

[[nodiscard]] std::uint64_t strategy_hash(const Strategy& strat);

} // namespace scot::adv
