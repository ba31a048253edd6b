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
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "internal.hpp"
#include "scot/errors.hpp"
#include "scot/adversary.hpp"

namespace scot::adv {

// ---------------------------------------------------------------------------
// Measurement

qm::ProjectiveMeasurement Measurement::projective() const {
    return qm::ProjectiveMeasurement::from_labelled_basis(basis, labels, outcomes, {0});
}

Mat Measurement::projector(int e) const {
    Mat p = Mat::Zero(basis.rows(), basis.rows());
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        if (labels[c] == e) {
            p += basis.col(c) * basis.col(c).adjoint();
        }
    }
    return p;
}

void Measurement::check(double tol) const {
    if (basis.rows() != basis.cols() || static_cast<Eigen::Index>(labels.size()) != basis.cols()) {
        throw InvariantError("measurement basis must be square with one label per column");
    }
    if (qm::unitarity_residual(basis) > tol) {
        throw InvariantError("measurement basis is not orthonormal");
    }
    for (int e : labels) {
        if (e < 0 || e >= outcomes) {
            throw InvariantError("measurement label out of range");
        }
    }
}

Measurement random_measurement(int dim, int outcomes, qm::Rng& rng) {
    Measurement meas;
    meas.basis = qm::haar_unitary(dim, rng);
    meas.outcomes = outcomes;
    meas.labels.resize(dim);
    for (int c = 0; c < dim; ++c) {
        meas.labels[c] = c % outcomes;
    }
    return meas;
}

// ---------------------------------------------------------------------------
// Split

std::vector<int> Split::b1_factors() const {
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(factor_dims.size()); ++f) {
        if (std::find(b0_factors.begin(), b0_factors.end(), f) == b0_factors.end()) {
            out.push_back(f);
        }
    }
    return out;
}

int Split::dim_b0() const {
    int d = 1;
    for (int f : b0_factors) {
        d *= factor_dims[f];
    }
    return d;
}

int Split::dim_b1() const {
    int d = 1;
    for (int f : b1_factors()) {
        d *= factor_dims[f];
    }
    return d;
}

int Split::total_dim() const {
    int d = 1;
    for (int v : factor_dims) {
        d *= v;
    }
    return d;
}

std::vector<Eigen::Index> Split::row_map() const {
    const int k = static_cast<int>(factor_dims.size());
    const auto b1 = b1_factors();
    const int d1 = dim_b1();
    std::vector<Eigen::Index> map(total_dim());
    std::vector<int> digit(k);
    for (Eigen::Index idx = 0; idx < static_cast<Eigen::Index>(map.size()); ++idx) {
        Eigen::Index rem = idx;
        for (int q = k - 1; q >= 0; --q) {
            digit[q] = static_cast<int>(rem % factor_dims[q]);
            rem /= factor_dims[q];
        }
        Eigen::Index i0 = 0;
        for (int f : b0_factors) {
            i0 = i0 * factor_dims[f] + digit[f];
        }
        Eigen::Index i1 = 0;
        for (int f : b1) {
            i1 = i1 * factor_dims[f] + digit[f];
        }
        map[idx] = i0 * d1 + i1;
    }
    return map;
}

void Split::check() const {
    const int k = static_cast<int>(factor_dims.size());
    if (!std::is_sorted(b0_factors.begin(), b0_factors.end()) ||
        std::adjacent_find(b0_factors.begin(), b0_factors.end()) != b0_factors.end()) {
        throw InvariantError("split factors must be strictly increasing");
    }
    for (int f : b0_factors) {
        if (f < 0 || f >= k) {
            throw InvariantError("split factor out of range");
        }
    }
}

// ---------------------------------------------------------------------------
// Strategy

void check_capacity(const dqacm::DqacmConfig& cfg, int ancilla_dim) {
    cfg.validate();
    if (ancilla_dim < 1) {
        throw InputError("ancilla dimension must be positive");
    }
    if (cfg.m < 2 || cfg.m > 3) {
        throw CapacityError("exact enumeration supports m in {2, 3}");
    }
    if (cfg.n > 3) {
        throw CapacityError("exact enumeration supports n <= 3");
    }
    double dim = std::pow(static_cast<double>(cfg.l()), cfg.m * cfg.n) * ancilla_dim;
    if (dim > 4096.0) {
        throw CapacityError("adversary space dimension " + std::to_string(static_cast<long>(dim)) +
                            " exceeds 4096");
    }
}

void Strategy::validate(const dqacm::DqacmConfig& cfg) const {
    check_capacity(cfg, ancilla_dim);
    const int m = cfg.m;
    if (l0 < 0 || l0 >= m || l1 < 0 || l1 >= m || l0 == l1) {
        throw InputError("targets l0, l1 must be distinct members of I_m");
    }
    split.check();
    const int dA = static_cast<int>(std::pow(cfg.l(), m * cfg.n));
    if (split.total_dim() != dA * ancilla_dim) {
        throw InvariantError("split dimensions do not match A (x) E");
    }
    if (unitary.rows() != dA * ancilla_dim || qm::unitarity_residual(unitary) > 1e-9) {
        throw InvariantError("strategy unitary is not unitary on A (x) E");
    }
    if (ancilla_state.size() != ancilla_dim || std::abs(ancilla_state.norm() - 1.0) > 1e-10) {
        throw InvariantError("ancilla state must be a unit vector of the ancilla dimension");
    }
    std::size_t S = 1;
    for (int j = 0; j < cfg.n; ++j) {
        S *= static_cast<std::size_t>(std::tgamma(m + 1) + 0.5);
    }
    if (meas0.size() != S || meas1.size() != S) {
        throw InvariantError("one measurement per s and branch is required");
    }
    const int K = static_cast<int>(std::pow(cfg.l(), cfg.n));
    for (std::size_t k = 0; k < S; ++k) {
        if (meas0[k].basis.rows() != split.dim_b0() || meas1[k].basis.rows() != split.dim_b1() ||
            meas0[k].outcomes != K || meas1[k].outcomes != K) {
            throw InvariantError("branch measurement dimensions do not match the split");
        }
        meas0[k].check();
        meas1[k].check();
    }
}

int string_index(const std::vector<int>& str, int l) {
    int idx = 0;
    for (int v : str) {
        idx = idx * l + v;
    }
    return idx;
}

std::vector<int> index_string(int idx, int n, int l) {
    std::vector<int> out(n);
    for (int q = n - 1; q >= 0; --q) {
        out[q] = idx % l;
        idx /= l;
    }
    return out;
}

dqacm::Strings r_from_index(const dqacm::DqacmConfig& cfg, Eigen::Index idx) {
    dqacm::Strings r(cfg.m, std::vector<int>(cfg.n));
    for (int q = cfg.m * cfg.n - 1; q >= 0; --q) {
        r[q / cfg.n][q % cfg.n] = static_cast<int>(idx % cfg.l());
        idx /= cfg.l();
    }
    return r;
}

Mat encoding_matrix(const dqacm::DqacmConfig& cfg, const dqacm::PermTuple& s) {
    const int m = cfg.m;
    const int n = cfg.n;
    const int l = cfg.l();
    if (static_cast<int>(s.size()) != n) {
        throw InputError("encoding_matrix: s must hold n permutations");
    }
    // which logical index i sits at slot (j, p)
    std::vector<int> who(static_cast<std::size_t>(m) * n);
    for (int j = 0; j < n; ++j) {
        if (!dqacm::is_permutation(s[j], m)) {
            throw InputError("encoding_matrix: s entries must be permutations");
        }
        for (int i = 0; i < m; ++i) {
            who[static_cast<std::size_t>(j) * m + s[j][i]] = i;
        }
    }
    Mat k = Mat::Ones(1, 1);
    for (int slot = 0; slot < m * n; ++slot) {
        k = qm::kron(k, cfg.family.basis(who[slot]));
    }
    const Eigen::Index R = k.cols();
    Mat out(k.rows(), R);
    const int digits = m * n;
    std::vector<int> rd(digits);
    for (Eigen::Index ridx = 0; ridx < R; ++ridx) {
        Eigen::Index rem = ridx;
        for (int q = digits - 1; q >= 0; --q) {
            rd[q] = static_cast<int>(rem % l);
            rem /= l;
        }
        // digit q = i*n + j carries r_i^j, which lives at slot (j, s^j_i)
        Eigen::Index kidx = 0;
        for (int slot = 0; slot < digits; ++slot) {
            const int j = slot / m;
            const int i = who[slot];
            kidx = kidx * l + rd[i * n + j];
        }
        out.col(ridx) = k.col(kidx);
    }
    return out;
}

Mat split_isometry(const Strategy& strat) {
    const int dE = strat.ancilla_dim;
    const Eigen::Index D = strat.unitary.rows();
    const Eigen::Index dA = D / dE;
    Mat iso = Mat::Zero(D, dA);
    for (Eigen::Index a = 0; a < dA; ++a) {
        for (int e = 0; e < dE; ++e) {
            iso.col(a) += strat.ancilla_state(e) * strat.unitary.col(a * dE + e);
        }
    }
    const auto map = strat.split.row_map();
    Mat out(D, dA);
    for (Eigen::Index i = 0; i < D; ++i) {
        out.row(map[i]) = iso.row(i);
    }
    return out;
}

Mat unitary_from_isometry(const Split& split, const Vec& chi, const Mat& iso, qm::Rng& rng) {
    const Eigen::Index D = iso.rows();
    const Eigen::Index dA = iso.cols();
    const auto dE = chi.size();
    const auto map = split.row_map();
    Mat out_cols(D, dA);
    for (Eigen::Index i = 0; i < D; ++i) {
        out_cols.row(i) = iso.row(map[i]);
    }
    Mat in_cols = Mat::Zero(D, dA);
    for (Eigen::Index a = 0; a < dA; ++a) {
        in_cols.block(a * dE, a, dE, 1) = chi;
    }
    const Mat q_in = qm::complete_basis(in_cols, rng);
    const Mat q_out = qm::complete_basis(out_cols, rng);
    return q_out * q_in.adjoint();
}

namespace {

Split make_split(const dqacm::DqacmConfig& cfg, int ancilla_dim, std::vector<int> b0) {
    Split sp;
    sp.factor_dims.assign(static_cast<std::size_t>(cfg.m) * cfg.n, cfg.l());
    if (ancilla_dim > 1) {
        sp.factor_dims.push_back(ancilla_dim);
    }
    sp.b0_factors = std::move(b0);
    return sp;
}

std::size_t tuple_count(const dqacm::DqacmConfig& cfg) {
    std::size_t s = 1;
    for (int j = 0; j < cfg.n; ++j) {
        s *= static_cast<std::size_t>(std::tgamma(cfg.m + 1) + 0.5);
    }
    return s;
}

void check_targets(const dqacm::DqacmConfig& cfg, int l0, int l1) {
    if (l0 < 0 || l0 >= cfg.m || l1 < 0 || l1 >= cfg.m || l0 == l1) {
        throw InputError("targets l0, l1 must be distinct members of I_m");
    }
}

} // namespace

namespace {

Strategy random_strategy_on(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim,
                            std::vector<int> b0, qm::Rng& rng) {
    Strategy st;
    st.ancilla_dim = ancilla_dim;
    st.l0 = l0;
    st.l1 = l1;
    st.split = make_split(cfg, ancilla_dim, std::move(b0));
    st.split.check();
    st.unitary = qm::haar_unitary(st.split.total_dim(), rng);
    st.ancilla_state = qm::random_state(ancilla_dim, rng);
    const int K = static_cast<int>(std::pow(cfg.l(), cfg.n));
    const std::size_t S = tuple_count(cfg);
    for (std::size_t k = 0; k < S; ++k) {
        st.meas0.push_back(random_measurement(st.split.dim_b0(), K, rng));
        st.meas1.push_back(random_measurement(st.split.dim_b1(), K, rng));
    }
    return st;
}

} // namespace

Strategy random_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim,
                         std::uint64_t seed) {
    check_capacity(cfg, ancilla_dim);
    check_targets(cfg, l0, l1);
    qm::Rng rng(seed);
    const int nf = cfg.m * cfg.n + (ancilla_dim > 1 ? 1 : 0);
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << nf) - 2);
    const std::uint64_t mask = pick(rng);
    std::vector<int> b0;
    for (int f = 0; f < nf; ++f) {
        if (mask >> f & 1U) {
            b0.push_back(f);
        }
    }
    return random_strategy_on(cfg, l0, l1, ancilla_dim, std::move(b0), rng);
}

Strategy random_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim,
                         std::uint64_t seed, std::vector<int> b0_factors) {
    check_capacity(cfg, ancilla_dim);
    check_targets(cfg, l0, l1);
    qm::Rng rng(seed);
    return random_strategy_on(cfg, l0, l1, ancilla_dim, std::move(b0_factors), rng);
}

std::vector<int> balanced_b0(const dqacm::DqacmConfig& cfg, int ancilla_dim) {
    const int nf = cfg.m * cfg.n + (ancilla_dim > 1 ? 1 : 0);
    std::vector<int> b0;
    for (int f = 0; f < nf / 2; ++f) {
        b0.push_back(f);
    }
    return b0;
}

namespace {

Strategy fixed_guess_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim,
                              bool decode_branch0) {
    check_capacity(cfg, ancilla_dim);
    check_targets(cfg, l0, l1);
    if (ancilla_dim < 2) {
        throw InputError("B_1 holds only the ancilla here, so ancilla_dim must be >= 2");
    }
    const int m = cfg.m;
    const int n = cfg.n;
    const int l = cfg.l();
    std::vector<int> b0(static_cast<std::size_t>(m) * n);
    std::iota(b0.begin(), b0.end(), 0);
    Strategy st;
    st.ancilla_dim = ancilla_dim;
    st.l0 = l0;
    st.l1 = l1;
    st.split = make_split(cfg, ancilla_dim, std::move(b0));
    st.unitary = Mat::Identity(st.split.total_dim(), st.split.total_dim());
    st.ancilla_state = Vec::Zero(ancilla_dim);
    st.ancilla_state(0) = 1.0;
    const int K = static_cast<int>(std::pow(l, n));
    const int dA = st.split.dim_b0();
    Measurement zero1;
    zero1.basis = Mat::Identity(ancilla_dim, ancilla_dim);
    zero1.labels.assign(ancilla_dim, 0);
    zero1.outcomes = K;
    for (const auto& s : dqacm::enumerate_perm_tuples(m, n)) {
        Measurement m0;
        m0.outcomes = K;
        if (!decode_branch0) {
            m0.basis = Mat::Identity(dA, dA);
            m0.labels.assign(dA, 0);
        } else {
            Mat basis = Mat::Ones(1, 1);
            for (int slot = 0; slot < m * n; ++slot) {
                const int j = slot / m;
                const int p = slot % m;
                basis = qm::kron(basis, p == s[j][l0] ? cfg.family.basis(l0)
                                                     : Mat(Mat::Identity(l, l)));
            }
            m0.basis = basis;
            m0.labels.resize(dA);
            std::vector<int> digit(static_cast<std::size_t>(m) * n);
            for (int c = 0; c < dA; ++c) {
                int rem = c;
                for (int q = m * n - 1; q >= 0; --q) {
                    digit[q] = rem % l;
                    rem /= l;
                }
                std::vector<int> guess(n);
                for (int j = 0; j < n; ++j) {
                    guess[j] = digit[static_cast<std::size_t>(j) * m + s[j][l0]];
                }
                m0.labels[c] = string_index(guess, l);
            }
        }
        st.meas0.push_back(std::move(m0));
        st.meas1.push_back(zero1);
    }
    return st;
}

} // namespace

Strategy single_branch_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim) {
    return fixed_guess_strategy(cfg, l0, l1, ancilla_dim, true);
}

Strategy blind_strategy(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim) {
    return fixed_guess_strategy(cfg, l0, l1, ancilla_dim, false);
}

// ---------------------------------------------------------------------------
// Hash

namespace {

struct Fnv {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void bytes(const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t k = 0; k < n; ++k) {
            h ^= c[k];
            h *= 0x100000001b3ULL;
        }
    }
    void i64(std::int64_t v) { bytes(&v, sizeof v); }
    void real(double v) { i64(std::llround(v * 1e12)); }
    void mat(const Mat& a) {
        i64(a.rows());
        i64(a.cols());
        for (Eigen::Index k = 0; k < a.size(); ++k) {
            real(a.data()[k].real());
            real(a.data()[k].imag());
        }
    }
};

} // namespace

std::uint64_t strategy_hash(const Strategy& strat) {
    Fnv f;
    f.i64(strat.ancilla_dim);
    f.i64(strat.l0);
    f.i64(strat.l1);
    for (int d : strat.split.factor_dims) {
        f.i64(d);
    }
    f.i64(-1);
    for (int b : strat.split.b0_factors) {
        f.i64(b);
    }
    f.mat(strat.unitary);
    f.mat(strat.ancilla_state);
    for (const auto* branch : {&strat.meas0, &strat.meas1}) {
        for (const auto& meas : *branch) {
            f.mat(meas.basis);
            for (int lab : meas.labels) {
                f.i64(lab);
            }
        }
    }
    return f.h;
}

} // namespace scot::adv
