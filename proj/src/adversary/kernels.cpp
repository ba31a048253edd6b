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

#include "internal.hpp"
#include "scot/bounds.hpp"
#include "scot/errors.hpp"

namespace scot::adv {

namespace detail {

Tables::Tables(const dqacm::DqacmConfig& cfg, int l0, int l1)
    : m(cfg.m), n(cfg.n), l(cfg.l()), tuples(dqacm::enumerate_perm_tuples(cfg.m, cfg.n)) {
    K = static_cast<int>(std::pow(l, n));
    R = static_cast<Eigen::Index>(std::pow(l, m * n));
    rl0.resize(R);
    rl1.resize(R);
    for (Eigen::Index r = 0; r < R; ++r) {
        const auto rr = r_from_index(cfg, r);
        rl0[r] = string_index(rr[l0], l);
        rl1[r] = string_index(rr[l1], l);
    }
    hd.resize(static_cast<std::size_t>(K) * K);
    for (int a = 0; a < K; ++a) {
        const auto sa = index_string(a, n, l);
        for (int b = 0; b < K; ++b) {
            hd[a * K + b] = dqacm::hamming_distance(sa, index_string(b, n, l));
        }
    }
}

namespace {

/// x <- x (F_0 (x) F_1 (x) ...), factor f acting on column digit f (most significant first).
void right_kron(Mat& x, const std::vector<const Mat*>& factors, int l) {
    const Eigen::Index cols = x.cols();
    Mat tmp(x.rows(), l);
    Eigen::Index stride = cols;
    for (const Mat* f : factors) {
        stride /= l;
        for (Eigen::Index outer = 0; outer < cols; outer += stride * l) {
            for (Eigen::Index inner = 0; inner < stride; ++inner) {
                const Eigen::Index base = outer + inner;
                for (int c = 0; c < l; ++c) {
                    tmp.col(c) = x.col(base) * (*f)(0, c);
                    for (int a = 1; a < l; ++a) {
                        tmp.col(c) += x.col(base + a * stride) * (*f)(a, c);
                    }
                }
                for (int c = 0; c < l; ++c) {
                    x.col(base + c * stride) = tmp.col(c);
                }
            }
        }
    }
}

} // namespace

EncodingCache::EncodingCache(const dqacm::DqacmConfig& cfg,
                             const std::vector<dqacm::PermTuple>& tuples)
    : l_(cfg.l()), slots_(cfg.m * cfg.n) {
    const int m = cfg.m;
    const int n = cfg.n;
    for (int i = 0; i < m; ++i) {
        bases_.push_back(cfg.family.basis(i));
        bases_adj_.push_back(cfg.family.basis(i).adjoint());
    }
    const auto R = static_cast<Eigen::Index>(std::pow(l_, slots_));
    std::vector<int> rd(slots_);
    for (const auto& s : tuples) {
        std::vector<int> who(slots_);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < m; ++i) {
                who[j * m + s[j][i]] = i;
            }
        }
        std::vector<Eigen::Index> perm(R);
        for (Eigen::Index ridx = 0; ridx < R; ++ridx) {
            Eigen::Index rem = ridx;
            for (int q = slots_ - 1; q >= 0; --q) {
                rd[q] = static_cast<int>(rem % l_);
                rem /= l_;
            }
            // digit i*n + j carries r_i^j, which lives at slot (j, s^j_i)
            Eigen::Index kidx = 0;
            for (int slot = 0; slot < slots_; ++slot) {
                kidx = kidx * l_ + rd[who[slot] * n + slot / m];
            }
            perm[ridx] = kidx;
        }
        who_.push_back(std::move(who));
        perm_.push_back(std::move(perm));
    }
}

Mat EncodingCache::apply(std::size_t si, const Mat& x) const {
    Mat k = x;
    std::vector<const Mat*> f(slots_);
    for (int slot = 0; slot < slots_; ++slot) {
        f[slot] = &bases_[who_[si][slot]];
    }
    right_kron(k, f, l_);
    Mat out(x.rows(), x.cols());
    const auto& perm = perm_[si];
    for (Eigen::Index r = 0; r < x.cols(); ++r) {
        out.col(r) = k.col(perm[r]);
    }
    return out;
}

Mat EncodingCache::apply_adjoint(std::size_t si, const Mat& y) const {
    Mat z(y.rows(), y.cols());
    const auto& perm = perm_[si];
    for (Eigen::Index r = 0; r < y.cols(); ++r) {
        z.col(perm[r]) = y.col(r);
    }
    std::vector<const Mat*> f(slots_);
    for (int slot = 0; slot < slots_; ++slot) {
        f[slot] = &bases_adj_[who_[si][slot]];
    }
    right_kron(z, f, l_);
    return z;
}

namespace {

void histogram_for_s(const Tables& tab, const Mat& phi, const Measurement& m0,
                     const Measurement& m1, int dB0, int dB1, std::vector<double>& out) {
    const int K = tab.K;
    const int n = tab.n;
    const Mat w1h = m1.basis.adjoint();
    const Mat w0c = m0.basis.conjugate();
    std::vector<double> q(static_cast<std::size_t>(K) * K);
    for (Eigen::Index r = 0; r < tab.R; ++r) {
        Eigen::Map<const Mat> mt(phi.col(r).data(), dB1, dB0);
        const Mat t = w1h * mt * w0c;
        std::fill(q.begin(), q.end(), 0.0);
        for (int c0 = 0; c0 < dB0; ++c0) {
            const int e0 = m0.labels[c0];
            for (int c1 = 0; c1 < dB1; ++c1) {
                q[e0 * K + m1.labels[c1]] += std::norm(t(c1, c0));
            }
        }
        const int a = tab.rl0[r];
        const int b = tab.rl1[r];
        for (int e0 = 0; e0 < K; ++e0) {
            const int w0 = tab.dist(e0, a);
            for (int e1 = 0; e1 < K; ++e1) {
                out[w0 * (n + 1) + tab.dist(e1, b)] += q[e0 * K + e1];
            }
        }
    }
}

} // namespace

DistanceHistogram histogram_from_isometry(const dqacm::DqacmConfig& cfg, const Tables& tab,
                                          const EncodingCache& enc, const Mat& iso,
                                          const std::vector<Measurement>& meas0,
                                          const std::vector<Measurement>& meas1, int dB0,
                                          int dB1, Exec exec) {
    const auto S = static_cast<std::int64_t>(tab.tuples.size());
    const std::size_t cells = static_cast<std::size_t>(cfg.n + 1) * (cfg.n + 1);
    std::vector<std::vector<double>> per_s(S, std::vector<double>(cells, 0.0));
    auto body = [&](std::int64_t si) {
        const Mat phi = enc.apply(static_cast<std::size_t>(si), iso);
        histogram_for_s(tab, phi, meas0[si], meas1[si], dB0, dB1, per_s[si]);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t si = 0; si < S; ++si) {
            body(si);
        }
    } else {
        for (std::int64_t si = 0; si < S; ++si) {
            body(si);
        }
    }
    DistanceHistogram h;
    h.n = cfg.n;
    h.weights.assign(cells, 0.0);
    const double norm = 1.0 / (static_cast<double>(S) * static_cast<double>(tab.R));
    for (std::int64_t si = 0; si < S; ++si) {
        for (std::size_t c = 0; c < cells; ++c) {
            h.weights[c] += per_s[si][c];
        }
    }
    for (auto& w : h.weights) {
        w *= norm;
    }
    return h;
}

} // namespace detail

double DistanceHistogram::within(int radius) const {
    double acc = 0.0;
    const int top = std::min(radius, n);
    for (int a = 0; a <= top; ++a) {
        for (int b = 0; b <= top; ++b) {
            acc += at(a, b);
        }
    }
    return acc;
}

DistanceHistogram distance_histogram(const dqacm::DqacmConfig& cfg, const Strategy& strat,
                                     Exec exec) {
    strat.validate(cfg);
    const detail::Tables tab(cfg, strat.l0, strat.l1);
    const detail::EncodingCache enc(cfg, tab.tuples);
    return detail::histogram_from_isometry(cfg, tab, enc, split_isometry(strat), strat.meas0,
                                           strat.meas1, strat.split.dim_b0(),
                                           strat.split.dim_b1(), exec);
}

double cheat_probability_exact(const dqacm::DqacmConfig& cfg, const Strategy& strat, Exec exec) {
    return distance_histogram(cfg, strat, exec).at(0, 0);
}

double cheat_probability_gamma(const dqacm::DqacmConfig& cfg, const Strategy& strat, double gamma,
                               Exec exec) {
    if (cfg.l() != 2) {
        throw InputError("error-tolerant cheating probability needs l = 2");
    }
    if (!(gamma >= 0.0 && gamma <= 0.5)) {
        throw InputError("gamma must lie in [0, 1/2]");
    }
    return distance_histogram(cfg, strat, exec).within(bounds::ball_radius(cfg.n, gamma));
}

} // namespace scot::adv
