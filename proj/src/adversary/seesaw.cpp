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
#include <cmath>

#include <Eigen/Eigenvalues>

#include "internal.hpp"
#include "scot/errors.hpp"

namespace scot::adv {

namespace {

using detail::EncodingCache;
using detail::Tables;

/// Columns of conj(W) grouped by label.
std::vector<Mat> conj_label_blocks(const Measurement& meas) {
    std::vector<std::vector<Eigen::Index>> cols(meas.outcomes);
    for (Eigen::Index c = 0; c < meas.basis.cols(); ++c) {
        cols[meas.labels[c]].push_back(c);
    }
    std::vector<Mat> out(meas.outcomes);
    for (int e = 0; e < meas.outcomes; ++e) {
        out[e].resize(meas.basis.rows(), static_cast<Eigen::Index>(cols[e].size()));
        for (std::size_t k = 0; k < cols[e].size(); ++k) {
            out[e].col(static_cast<Eigen::Index>(k)) = meas.basis.col(cols[e][k]).conjugate();
        }
    }
    return out;
}

double measurement_score(const std::vector<Mat>& score, const Measurement& meas) {
    double acc = 0.0;
    for (Eigen::Index c = 0; c < meas.basis.cols(); ++c) {
        const auto w = meas.basis.col(c);
        acc += (w.adjoint() * score[meas.labels[c]] * w)(0, 0).real();
    }
    return acc;
}

void relabel(const std::vector<Mat>& score, Measurement& meas) {
    for (Eigen::Index c = 0; c < meas.basis.cols(); ++c) {
        const auto w = meas.basis.col(c);
        int best = meas.labels[c];
        double best_val = (w.adjoint() * score[best] * w)(0, 0).real();
        for (int e = 0; e < meas.outcomes; ++e) {
            const double v = (w.adjoint() * score[e] * w)(0, 0).real();
            if (v > best_val + 1e-15) {
                best = e;
                best_val = v;
            }
        }
        meas.labels[c] = best;
    }
}

/// Improves sum_c <w_c| S^{label c} |w_c>. Exact optimum for two outcomes.
void improve_measurement(const std::vector<Mat>& score, Measurement& meas, int polar_steps) {
    const double before = measurement_score(score, meas);
    Measurement trial = meas;
    if (meas.outcomes == 2) {
        Eigen::SelfAdjointEigenSolver<Mat> eig(score[0] - score[1]);
        const Eigen::Index d = score[0].rows();
        trial.basis = eig.eigenvectors();
        for (Eigen::Index c = 0; c < d; ++c) {
            trial.labels[c] = eig.eigenvalues()(c) >= 0.0 ? 0 : 1;
        }
    } else {
        relabel(score, trial);
        for (int it = 0; it < polar_steps; ++it) {
            Mat g(trial.basis.rows(), trial.basis.cols());
            for (Eigen::Index c = 0; c < trial.basis.cols(); ++c) {
                g.col(c) = score[trial.labels[c]] * trial.basis.col(c);
            }
            trial.basis = qm::polar_factor(g);
            relabel(score, trial);
        }
    }
    if (measurement_score(score, trial) >= before) {
        meas = std::move(trial);
    }
}

struct Workspace {
    const dqacm::DqacmConfig& cfg;
    const Tables& tab;
    const EncodingCache& enc;
    int dB0;
    int dB1;
};

void measurement_step(const Workspace& ws, const Mat& phi, Measurement& m0, Measurement& m1,
                      int polar_steps) {
    const int K = ws.tab.K;
    // branch 0 against the current branch-1 measurement
    {
        const auto blocks = conj_label_blocks(m1);
        std::vector<Mat> score(K, Mat::Zero(ws.dB0, ws.dB0));
        for (Eigen::Index r = 0; r < ws.tab.R; ++r) {
            Eigen::Map<const Mat> mt(phi.col(r).data(), ws.dB1, ws.dB0);
            const Mat& wb = blocks[ws.tab.rl1[r]];
            if (wb.cols() == 0) {
                continue;
            }
            const Mat x = mt.transpose() * wb;
            score[ws.tab.rl0[r]].noalias() += x * x.adjoint();
        }
        improve_measurement(score, m0, polar_steps);
    }
    // branch 1 against the refreshed branch-0 measurement
    {
        const auto blocks = conj_label_blocks(m0);
        std::vector<Mat> score(K, Mat::Zero(ws.dB1, ws.dB1));
        for (Eigen::Index r = 0; r < ws.tab.R; ++r) {
            Eigen::Map<const Mat> mt(phi.col(r).data(), ws.dB1, ws.dB0);
            const Mat& wb = blocks[ws.tab.rl0[r]];
            if (wb.cols() == 0) {
                continue;
            }
            const Mat x = mt * wb;
            score[ws.tab.rl1[r]].noalias() += x * x.adjoint();
        }
        improve_measurement(score, m1, polar_steps);
    }
}

/// sum_r (Pi0 (x) Pi1) iso b_r b_r^dagger for one s.
Mat gradient_for_s(const Workspace& ws, const Mat& phi, std::size_t si, const Measurement& m0,
                   const Measurement& m1) {
    std::vector<Mat> p0t(ws.tab.K);
    std::vector<Mat> p1(ws.tab.K);
    for (int e = 0; e < ws.tab.K; ++e) {
        p0t[e] = m0.projector(e).transpose();
        p1[e] = m1.projector(e);
    }
    Mat y(phi.rows(), phi.cols());
    for (Eigen::Index r = 0; r < ws.tab.R; ++r) {
        Eigen::Map<const Mat> mt(phi.col(r).data(), ws.dB1, ws.dB0);
        Eigen::Map<Mat> out(y.col(r).data(), ws.dB1, ws.dB0);
        out.noalias() = p1[ws.tab.rl1[r]] * mt * p0t[ws.tab.rl0[r]];
    }
    return ws.enc.apply_adjoint(si, y);
}

template <class F>
void for_each_s(std::int64_t S, Exec exec, F&& f) {
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t si = 0; si < S; ++si) {
            f(si);
        }
    } else {
        for (std::int64_t si = 0; si < S; ++si) {
            f(si);
        }
    }
}

} // namespace

SeesawResult seesaw_optimize(const dqacm::DqacmConfig& cfg, int l0, int l1, int ancilla_dim,
                             int iterations, std::uint64_t seed) {
    SeesawOptions opts;
    opts.l0 = l0;
    opts.l1 = l1;
    opts.ancilla_dim = ancilla_dim;
    opts.iterations = iterations;
    opts.seed = seed;
    return seesaw_optimize(cfg, opts);
}

SeesawResult seesaw_optimize(const dqacm::DqacmConfig& cfg, const SeesawOptions& opts) {
    if (opts.iterations < 0) {
        throw InputError("iterations must be non-negative");
    }
    Strategy strat = random_strategy(cfg, opts.l0, opts.l1, opts.ancilla_dim, opts.seed,
                                     balanced_b0(cfg, opts.ancilla_dim));
    const Tables tab(cfg, opts.l0, opts.l1);
    const EncodingCache enc(cfg, tab.tuples);
    const int dB0 = strat.split.dim_b0();
    const int dB1 = strat.split.dim_b1();
    const Workspace ws{cfg, tab, enc, dB0, dB1};
    const auto S = static_cast<std::int64_t>(tab.tuples.size());

    Mat iso = split_isometry(strat);
    auto evaluate = [&] {
        return detail::histogram_from_isometry(cfg, tab, enc, iso, strat.meas0, strat.meas1,
                                               dB0, dB1, opts.exec)
            .at(0, 0);
    };

    SeesawResult res;
    double p = evaluate();
    res.trace.push_back(p);
    if (opts.iterations == 0) {
        res.strategy = std::move(strat);
        res.p = p;
        return res;
    }
    int flat = 0;
    std::vector<Mat> grads(S);
    for (int it = 0; it < opts.iterations; ++it) {
        for_each_s(S, opts.exec, [&](std::int64_t si) {
            const Mat phi = enc.apply(static_cast<std::size_t>(si), iso);
            measurement_step(ws, phi, strat.meas0[si], strat.meas1[si], opts.polar_steps);
            grads[si] = gradient_for_s(ws, phi, static_cast<std::size_t>(si), strat.meas0[si],
                                       strat.meas1[si]);
        });
        Mat g = Mat::Zero(iso.rows(), iso.cols());
        for (const auto& gs : grads) {
            g += gs;
        }
        const Mat previous = iso;
        iso = qm::polar_factor(g);
        double p_next = evaluate();
        if (p_next < p) {
            // The measurement step never lowers p, so fall back to its isometry.
            iso = previous;
            p_next = evaluate();
        }
        res.trace.push_back(p_next);
        const double gain = p_next - p;
        p = p_next;
        flat = gain < opts.tol ? flat + 1 : 0;
        if (flat >= 3) {
            res.converged = true;
            break;
        }
    }
    qm::Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    strat.unitary = unitary_from_isometry(strat.split, strat.ancilla_state, iso, rng);
    res.strategy = std::move(strat);
    res.p = cheat_probability_exact(cfg, res.strategy, opts.exec);
    return res;
}

SeesawSearch seesaw_search(const dqacm::DqacmConfig& cfg, const SeesawOptions& opts) {
    if (opts.restarts < 1) {
        throw InputError("restarts must be at least 1");
    }
    check_capacity(cfg, opts.ancilla_dim);
    SeesawSearch out;
    for (int r = 0; r < opts.restarts; ++r) {
        SeesawOptions one = opts;
        one.seed = opts.seed + static_cast<std::uint64_t>(r);
        auto res = seesaw_optimize(cfg, one);
        out.restart_values.push_back(res.p);
        if (r == 0 || res.p > out.best.p) {
            out.best = std::move(res);
        }
    }
    return out;
}

} // namespace scot::adv
