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

#include "scot/dqacm.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "scot/errors.hpp"

namespace scot::dqacm {

std::vector<Perm> enumerate_permutations(int m) {
    if (m < 2 || m > 8) {
        throw InputError("enumerate_permutations: m must lie in [2, 8]");
    }
    std::vector<Perm> out;
    Perm p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<PermTuple> enumerate_perm_tuples(int m, int n) {
    if (n < 1) {
        throw InputError("enumerate_perm_tuples: n must be positive");
    }
    const auto perms = enumerate_permutations(m);
    std::vector<PermTuple> out{PermTuple{}};
    for (int j = 0; j < n; ++j) {
        std::vector<PermTuple> next;
        next.reserve(out.size() * perms.size());
        for (const auto& prefix : out) {
            for (const auto& p : perms) {
                PermTuple t = prefix;
                t.push_back(p);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

bool is_permutation(const Perm& p, int m) {
    if (static_cast<int>(p.size()) != m) {
        return false;
    }
    std::vector<char> seen(m, 0);
    for (int v : p) {
        if (v < 0 || v >= m || seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

PermTuple permute_tuple(const PermTuple& s, const PermTuple& v) {
    if (s.size() != v.size()) {
        throw InputError("permute_tuple: tuple lengths differ");
    }
    PermTuple out(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const int m = static_cast<int>(s[j].size());
        if (!is_permutation(s[j], m) || !is_permutation(v[j], m)) {
            throw InputError("permute_tuple: entries must be permutations");
        }
        out[j].resize(m);
        for (int i = 0; i < m; ++i) {
            out[j][i] = s[j][v[j][i]];
        }
    }
    return out;
}

int hamming_distance(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) {
        throw InputError("hamming_distance: length mismatch");
    }
    int d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d += a[k] != b[k] ? 1 : 0;
    }
    return d;
}

void DqacmConfig::validate() const {
    if (m < 2) {
        throw InputError("DQACM needs m >= 2");
    }
    if (n < 1) {
        throw InputError("DQACM needs n >= 1");
    }
    if (family.m() != m) {
        throw InputError("basis family size does not match m");
    }
    if (!(family.lambda() < 1.0)) {
        throw InputError("basis family lambda must be below 1");
    }
    if (!(gamma >= 0.0) || gamma > 0.5) {
        throw InputError("gamma must lie in [0, 1/2]");
    }
}

DqacmConfig make_config(int m, int n, std::vector<double> thetas, double gamma) {
    if (thetas.empty()) {
        thetas = qm::equispaced_thetas(m);
    }
    DqacmConfig cfg{m, n, qm::planar_basis_family(m, thetas), gamma};
    cfg.validate();
    return cfg;
}

AliceInputs sample_inputs(const DqacmConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    qm::Rng rng(seed);
    std::uniform_int_distribution<int> sym(0, cfg.l() - 1);
    AliceInputs in;
    in.r.assign(cfg.m, std::vector<int>(cfg.n));
    for (auto& row : in.r) {
        for (auto& v : row) {
            v = sym(rng);
        }
    }
    const auto perms = enumerate_permutations(cfg.m);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    for (int j = 0; j < cfg.n; ++j) {
        in.s.push_back(perms[pick(rng)]);
    }
    return in;
}

BobRecord stage1_honest(const DqacmConfig& cfg, const AliceInputs& inputs, int c,
                        std::uint64_t seed, double flip_rate) {
    cfg.validate();
    if (c < 0 || c >= cfg.m) {
        throw InputError("stage1_honest: c out of range");
    }
    if (static_cast<int>(inputs.s.size()) != cfg.n) {
        throw InputError("stage1_honest: s must hold n permutations");
    }
    if (!(flip_rate >= 0.0 && flip_rate <= 1.0)) {
        throw InputError("stage1_honest: flip rate must lie in [0, 1]");
    }
    const auto slots = qm::product_factors(cfg.family, inputs.r, inputs.s);
    const auto meas = qm::ProjectiveMeasurement::from_basis(cfg.family.basis(c), {0});
    qm::Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> shift(1, cfg.l() - 1);
    BobRecord rec;
    rec.c = c;
    rec.d.assign(cfg.m, std::vector<int>(cfg.n));
    for (int j = 0; j < cfg.n; ++j) {
        for (int p = 0; p < cfg.m; ++p) {
            const qm::PureState slot(slots[static_cast<std::size_t>(j) * cfg.m + p], {cfg.l()});
            int outcome = qm::measure(slot, meas, rng()).outcome;
            if (flip_rate > 0.0 && unif(rng) < flip_rate) {
                outcome = (outcome + shift(rng)) % cfg.l();
            }
            rec.d[p][j] = outcome;
        }
    }
    return rec;
}

std::vector<int> decode(const DqacmConfig& cfg, int c, const BobRecord& record,
                        const PermTuple& s) {
    if (c < 0 || c >= cfg.m) {
        throw InputError("decode: c out of range");
    }
    if (static_cast<int>(record.d.size()) != cfg.m) {
        throw InputError("decode: record must have m position rows");
    }
    const std::size_t n = s.size();
    std::vector<int> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_permutation(s[j], cfg.m)) {
            throw InputError("decode: s entries must be permutations");
        }
        const auto& row = record.d[s[j][c]];
        if (row.size() != n) {
            throw InputError("decode: record and s disagree on n");
        }
        out[j] = row[j];
    }
    return out;
}

std::vector<BobRecord> k_stage1_honest(const DqacmConfig& cfg, int k, const AliceInputs& inputs,
                                       const std::vector<int>& c_list, std::uint64_t seed) {
    if (k < 1 || k >= cfg.m) {
        throw InputError("k must satisfy 1 <= k < m");
    }
    if (static_cast<int>(c_list.size()) != k) {
        throw InputError("c_list must hold k entries");
    }
    std::vector<int> sorted = c_list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("c_list entries must be distinct");
    }
    std::vector<BobRecord> out;
    for (int q = 0; q < k; ++q) {
        out.push_back(stage1_honest(cfg, inputs, c_list[q], seed + static_cast<std::uint64_t>(q)));
    }
    return out;
}

} // namespace scot::dqacm
