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
#include <map>

#include "internal.hpp"
#include "scot/errors.hpp"

namespace scot::adv {

namespace {

std::size_t tuple_index(const dqacm::PermTuple& s, int m) {
    static const auto index_of = [](int mm) {
        std::map<dqacm::Perm, std::size_t> idx;
        const auto perms = dqacm::enumerate_permutations(mm);
        for (std::size_t k = 0; k < perms.size(); ++k) {
            idx[perms[k]] = k;
        }
        return idx;
    };
    const auto idx = index_of(m);
    std::size_t out = 0;
    for (const auto& p : s) {
        auto it = idx.find(p);
        if (it == idx.end()) {
            throw InputError("tuple entry is not a permutation of I_m");
        }
        out = out * idx.size() + it->second;
    }
    return out;
}

/// sum over columns r of `enc` with selector(r) true of |b_r><b_r|.
template <class Sel>
Mat column_projector(const Mat& enc, Sel&& sel) {
    Mat p = Mat::Zero(enc.rows(), enc.rows());
    for (Eigen::Index r = 0; r < enc.cols(); ++r) {
        if (sel(r)) {
            p.noalias() += enc.col(r) * enc.col(r).adjoint();
        }
    }
    return p;
}

Mat kron3(const Mat& a, const Mat& b, const Mat& c) { return qm::kron(qm::kron(a, b), c); }

/// D_s for the given pair of measurements.
Mat d_operator(const detail::Tables& tab, const Mat& enc, const Measurement& m0,
               const Measurement& m1) {
    const Eigen::Index dim = enc.rows() * m0.basis.rows() * m1.basis.rows();
    Mat d = Mat::Zero(dim, dim);
    for (int e0 = 0; e0 < tab.K; ++e0) {
        const Mat p0 = m0.projector(e0);
        for (int e1 = 0; e1 < tab.K; ++e1) {
            const Mat c = column_projector(
                enc, [&](Eigen::Index r) { return tab.rl0[r] == e0 && tab.rl1[r] == e1; });
            d += kron3(c, p0, m1.projector(e1));
        }
    }
    return d;
}

} // namespace

int omega_weight(const dqacm::PermTuple& v, int l0, int l1, const dqacm::PermTuple& s_probe,
                 const dqacm::PermTuple& s_probe2) {
    auto count = [&](const dqacm::PermTuple& s) {
        const auto sv = dqacm::permute_tuple(s, v);
        int w = 0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            const int m = static_cast<int>(s[j].size());
            if (l0 < 0 || l0 >= m || l1 < 0 || l1 >= m || l0 == l1) {
                throw InputError("omega_weight: targets must be distinct members of I_m");
            }
            w += sv[j][l1] == s[j][l0] ? 1 : 0;
        }
        return w;
    };
    const int a = count(s_probe);
    const int b = count(s_probe2);
    if (a != b) {
        throw InvariantError("omega_v differs between two probes of s");
    }
    return a;
}

FgfResult verify_fgf_lemma(const dqacm::DqacmConfig& cfg, int l0, int l1,
                           const dqacm::PermTuple& s, const dqacm::PermTuple& v,
                           const std::vector<Measurement>& meas0,
                           const std::vector<Measurement>& meas1) {
    cfg.validate();
    const detail::Tables tab(cfg, l0, l1);
    if (meas0.size() != tab.tuples.size() || meas1.size() != tab.tuples.size()) {
        throw InputError("verify_fgf_lemma: one measurement per s and branch is required");
    }
    const auto sv = dqacm::permute_tuple(s, v);
    const std::size_t is = tuple_index(s, cfg.m);
    const std::size_t isv = tuple_index(sv, cfg.m);
    const Eigen::Index dC = tab.R;
    const Eigen::Index dB0 = meas0[is].basis.rows();
    const Eigen::Index dB1 = meas1[is].basis.rows();
    if (meas0[isv].basis.rows() != dB0 || meas1[isv].basis.rows() != dB1) {
        throw InputError("verify_fgf_lemma: branch dimensions differ between s and s_v");
    }
    if (static_cast<double>(dC) * dB0 * dB1 > 4096.0) {
        throw CapacityError("verify_fgf_lemma: C B_0 B_1 dimension exceeds 4096");
    }
    const Mat enc_s = encoding_matrix(cfg, s);
    const Mat enc_sv = encoding_matrix(cfg, sv);
    const Mat id0 = Mat::Identity(dB0, dB0);
    const Mat id1 = Mat::Identity(dB1, dB1);
    const Eigen::Index dim = dC * dB0 * dB1;
    Mat f = Mat::Zero(dim, dim);
    Mat g = Mat::Zero(dim, dim);
    for (int e = 0; e < tab.K; ++e) {
        const Mat cf = column_projector(enc_s, [&](Eigen::Index r) { return tab.rl0[r] == e; });
        f += kron3(cf, meas0[is].projector(e), id1);
        const Mat cg = column_projector(enc_sv, [&](Eigen::Index r) { return tab.rl1[r] == e; });
        g += kron3(cg, id0, meas1[isv].projector(e));
    }
    FgfResult out;
    out.omega = omega_weight(v, l0, l1, s, tab.tuples.front());
    out.bound = std::pow(cfg.family.lambda(), out.omega);
    out.norm = qm::spectral_norm(f * g * f);
    const Mat ds = d_operator(tab, enc_s, meas0[is], meas1[is]);
    const Mat dsv = d_operator(tab, enc_sv, meas0[isv], meas1[isv]);
    const double dd = qm::spectral_norm(ds * dsv);
    out.dd_norm_sq = dd * dd;
    out.ok = out.norm <= out.bound + 1e-9;
    return out;
}

std::vector<std::array<int, 3>> gamma_labels(int m) {
    std::vector<std::array<int, 3>> out;
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i != j) {
                    out.push_back({k, i, j});
                }
            }
        }
    }
    return out;
}

BranchingStrategy random_branching_strategy(const dqacm::DqacmConfig& cfg, int ancilla_dim,
                                            int active, std::uint64_t seed) {
    const int g = static_cast<int>(gamma_labels(cfg.m).size());
    if (active < 1 || active > g) {
        throw InputError("active intermediate outcomes must lie in [1, |Gamma|]");
    }
    BranchingStrategy out;
    out.base = random_strategy(cfg, 0, 1, ancilla_dim, seed);
    qm::Rng rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    const int dB0 = out.base.split.dim_b0();
    const int dB1 = out.base.split.dim_b1();
    const int K = out.base.meas0.front().outcomes;
    out.record = random_measurement(dB0 * dB1, g, rng);
    for (auto& lab : out.record.labels) {
        lab %= active;
    }
    const std::size_t S = out.base.meas0.size();
    out.meas0.resize(g);
    out.meas1.resize(g);
    for (int k = 0; k < g; ++k) {
        for (std::size_t si = 0; si < S; ++si) {
            out.meas0[k].push_back(random_measurement(dB0, K, rng));
            out.meas1[k].push_back(random_measurement(dB1, K, rng));
        }
    }
    return out;
}

EquivalenceResult verify_procedure_equivalence(const dqacm::DqacmConfig& cfg,
                                               const BranchingStrategy& strat,
                                               std::uint64_t seed, int trials) {
    strat.base.validate(cfg);
    const auto labels = gamma_labels(cfg.m);
    const int g = static_cast<int>(labels.size());
    const int dB0 = strat.base.split.dim_b0();
    const int dB1 = strat.base.split.dim_b1();
    const int D = dB0 * dB1;
    const int K = strat.base.meas0.front().outcomes;
    if (static_cast<double>(D) * g * g * g > 4096.0) {
        throw CapacityError("procedure equivalence: coherent register space exceeds 4096");
    }
    const auto tuples = dqacm::enumerate_perm_tuples(cfg.m, cfg.n);
    const Mat iso = split_isometry(strat.base);

    // U' = sum_k R_k (x) W_k (x) W_k (x) W_k, with W_k swapping mu_0 and mu_k.
    std::vector<Mat> rproj(g);
    std::vector<Mat> mu(g);
    Mat big = Mat::Zero(static_cast<Eigen::Index>(D) * g * g * g,
                        static_cast<Eigen::Index>(D) * g * g * g);
    for (int k = 0; k < g; ++k) {
        rproj[k] = strat.record.projector(k);
        Mat w = Mat::Identity(g, g);
        if (k != 0) {
            w(0, 0) = 0.0;
            w(k, k) = 0.0;
            w(0, k) = 1.0;
            w(k, 0) = 1.0;
        }
        big += qm::kron(rproj[k], kron3(w, w, w));
        mu[k] = Mat::Zero(g, g);
        mu[k](k, k) = 1.0;
    }
    if (qm::unitarity_residual(big) > 1e-9) {
        throw InvariantError("coherent recording operator is not unitary");
    }
    const std::vector<int> dims{dB0, dB1, g, g, g};
    const Mat idg = Mat::Identity(g, g);

    qm::Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick_s(0, tuples.size() - 1);
    const auto R = static_cast<std::size_t>(std::pow(cfg.l(), cfg.m * cfg.n));
    std::uniform_int_distribution<std::size_t> pick_r(0, R - 1);
    EquivalenceResult res;
    for (int t = 0; t < trials; ++t) {
        const std::size_t si = pick_s(rng);
        const auto ri = static_cast<Eigen::Index>(pick_r(rng));
        const Vec phi = iso * encoding_matrix(cfg, tuples[si]).col(ri);

        // classical outcome first, then branch measurements
        std::vector<double> p1(static_cast<std::size_t>(g) * K * K, 0.0);
        for (int k = 0; k < g; ++k) {
            const Vec after = rproj[k] * phi;
            for (int e0 = 0; e0 < K; ++e0) {
                const Vec a = qm::apply_on_subsystems(after, {dB0, dB1}, {0},
                                                      strat.meas0[k][si].projector(e0));
                for (int e1 = 0; e1 < K; ++e1) {
                    const Vec b = qm::apply_on_subsystems(a, {dB0, dB1}, {1},
                                                          strat.meas1[k][si].projector(e1));
                    p1[(static_cast<std::size_t>(k) * K + e0) * K + e1] = b.squaredNorm();
                }
            }
        }

        // coherent recording, then block measurements
        Vec reg = Vec::Zero(static_cast<Eigen::Index>(g) * g * g);
        reg(0) = 1.0;
        const Vec psi = big * qm::kron(phi, reg);
        std::vector<Mat> pi0(K);
        std::vector<Mat> pi1(K);
        for (int e = 0; e < K; ++e) {
            pi0[e] = Mat::Zero(static_cast<Eigen::Index>(dB0) * g * g,
                               static_cast<Eigen::Index>(dB0) * g * g);
            pi1[e] = Mat::Zero(static_cast<Eigen::Index>(dB1) * g, static_cast<Eigen::Index>(dB1) * g);
            for (int k = 0; k < g; ++k) {
                pi0[e] += kron3(strat.meas0[k][si].projector(e), mu[k], idg);
                pi1[e] += qm::kron(strat.meas1[k][si].projector(e), mu[k]);
            }
        }
        double tv = 0.0;
        for (int e0 = 0; e0 < K; ++e0) {
            const Vec a = qm::apply_on_subsystems(psi, dims, {0, 2, 4}, pi0[e0]);
            for (int e1 = 0; e1 < K; ++e1) {
                const Vec b = qm::apply_on_subsystems(a, dims, {1, 3}, pi1[e1]);
                for (int k = 0; k < g; ++k) {
                    const double p2 = qm::apply_on_subsystems(b, dims, {4}, mu[k]).squaredNorm();
                    tv += std::abs(p2 - p1[(static_cast<std::size_t>(k) * K + e0) * K + e1]);
                }
            }
        }
        res.max_tv = std::max(res.max_tv, 0.5 * tv);
        ++res.trials;
    }
    res.ok = res.max_tv < 1e-9;
    return res;
}

} // namespace scot::adv
