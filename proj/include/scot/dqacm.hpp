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
 * Class-C one-out-of-m distributed quantum access with classical memory.
 *
 * r is stored as m rows of n outcomes (r[i][j] = r_i^j). The honest outcome
 * record d is indexed by physical position: d[p][j] is the outcome of the
 * qudit at position p of round j.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "scot/quantum.hpp"

namespace scot::dqacm {

using Perm = std::vector<int>;
using PermTuple = std::vector<Perm>;
using Strings = std::vector<std::vector<int>>;

/// All m! permutations of {0..m-1} in lexicographic order; 2 <= m <= 8.
[[nodiscard]] std::vector<Perm> enumerate_permutations(int m);

/// Every n-tuple of permutations; index = sum_j idx(s^j) * (m!)^(n-1-j).
[[nodiscard]] std::vector<PermTuple> enumerate_perm_tuples(int m, int n);

[[nodiscard]] bool is_permutation(const Perm& p, int m);

/// s_v^j[i] = s^j[v^j[i]].
[[nodiscard]] PermTuple permute_tuple(const PermTuple& s, const PermTuple& v);

[[nodiscard]] int hamming_distance(const std::vector<int>& a, const std::vector<int>& b);

struct DqacmConfig {
    int m = 2;
    int n = 1;
    qm::BasisFamily family;
    double gamma = 0.0;

    [[nodiscard]] int l() const { return family.l(); }
    /// Throws InputError when the invariants fail.
    void validate() const;
};

/// Planar family built from the angle list; equispaced angles i*pi/m when empty.
[[nodiscard]] DqacmConfig make_config(int m, int n, std::vector<double> thetas = {},
                                      double gamma = 0.0);

struct AliceInputs {
    Strings r;
    PermTuple s;
};

struct BobRecord {
    int c = 0;
    Strings d;
};

[[nodiscard]] AliceInputs sample_inputs(const DqacmConfig& cfg, std::uint64_t seed);

/// Measures every slot of |Psi_r^s> in D_c. With flip_rate > 0 each recorded
/// outcome is replaced by a different uniformly chosen symbol with that rate.
[[nodiscard]] BobRecord stage1_honest(const DqacmConfig& cfg, const AliceInputs& inputs, int c,
                                      std::uint64_t seed, double flip_rate = 0.0);

/// (d^1_{s_c^1}, ..., d^n_{s_c^n}).
[[nodiscard]] std::vector<int> decode(const DqacmConfig& cfg, int c, const BobRecord& record,
                                      const PermTuple& s);

/// k full copies of the state; copy q is measured entirely in D_{c_list[q]}.
[[nodiscard]] std::vector<BobRecord> k_stage1_honest(const DqacmConfig& cfg, int k,
                                                     const AliceInputs& inputs,
                                                     const std::vector<int>& c_list,
                                                     std::uint64_t seed);

} // namespace scot::dqacm
