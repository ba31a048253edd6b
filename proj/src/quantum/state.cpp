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
#include <numeric>

#include "scot/errors.hpp"
#include "scot/quantum.hpp"

namespace scot::qm {

namespace {

std::int64_t product(const std::vector<int>& dims) {
    std::int64_t p = 1;
    for (int d : dims) {
        p *= d;
    }
    return p;
}

void check_permutation(const std::vector<int>& perm, int m) {
    if (static_cast<int>(perm.size()) != m) {
        throw InputError("permutation has wrong length");
    }
    std::vector<char> seen(m, 0);
    for (int v : perm) {
        if (v < 0 || v >= m || seen[v]) {
            throw InputError("s^j is not a permutation of {0..m-1}");
        }
        seen[v] = 1;
    }
}

} // namespace

PureState::PureState(Vec amps, std::vector<int> subsystem_dims)
    : amplitudes(std::move(amps)), dims(std::move(subsystem_dims)) {
    if (product(dims) != amplitudes.size()) {
        throw InputError("state length does not match subsystem dimensions");
    }
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
        throw InputError("state is not normalised");
    }
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const Mat& basis,
                                                        std::vector<int> targets) {
    std::vector<int> labels(basis.cols());
    std::iota(labels.begin(), labels.end(), 0);
    return from_labelled_basis(basis, labels, static_cast<int>(basis.cols()), std::move(targets));
}

ProjectiveMeasurement ProjectiveMeasurement::from_labelled_basis(const Mat& basis,
                                                                 const std::vector<int>& labels,
                                                                 int outcomes,
                                                                 std::vector<int> targets) {
    if (basis.rows() != basis.cols() || static_cast<Eigen::Index>(labels.size()) != basis.cols()) {
        throw InputError("labelled basis must be square with one label per column");
    }
    ProjectiveMeasurement out;
    out.targets = std::move(targets);
    out.projectors.assign(outcomes, Mat::Zero(basis.rows(), basis.rows()));
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        const int e = labels[c];
        if (e < 0 || e >= outcomes) {
            throw InputError("basis label out of range");
        }
        out.projectors[e] += basis.col(c) * basis.col(c).adjoint();
    }
    return out;
}

void ProjectiveMeasurement::check(double tol) const {
    if (projectors.empty()) {
        throw InvariantError("measurement has no projectors");
    }
    const Eigen::Index d = projectors.front().rows();
    Mat sum = Mat::Zero(d, d);
    for (std::size_t a = 0; a < projectors.size(); ++a) {
        const Mat& p = projectors[a];
        if (p.rows() != d || p.cols() != d) {
            throw InvariantError("projector dimensions differ");
        }
        if ((p * p - p).cwiseAbs().maxCoeff() > tol) {
            throw InvariantError("projector is not idempotent");
        }
        if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol) {
            throw InvariantError("projector is not self-adjoint");
        }
        for (std::size_t b = a + 1; b < projectors.size(); ++b) {
            if ((p * projectors[b]).cwiseAbs().maxCoeff() > tol) {
                throw InvariantError("projectors are not mutually orthogonal");
            }
        }
        sum += p;
    }
    if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
        throw InvariantError("projectors do not sum to the identity");
    }
}

std::vector<Vec> product_factors(const BasisFamily& family,
                                 const std::vector<std::vector<int>>& r,
                                 const std::vector<std::vector<int>>& s) {
    const int m = family.m();
    if (static_cast<int>(r.size()) != m) {
        throw InputError("r must have m rows");
    }
    const int n = static_cast<int>(s.size());
    for (const auto& row : r) {
        if (static_cast<int>(row.size()) != n) {
            throw InputError("r rows must have length n");
        }
        for (int v : row) {
            if (v < 0 || v >= family.l()) {
                throw InputError("r entry outside the outcome alphabet");
            }
        }
    }
    std::vector<Vec> slots(static_cast<std::size_t>(m) * n);
    for (int j = 0; j < n; ++j) {
        check_permutation(s[j], m);
        for (int i = 0; i < m; ++i) {
            slots[static_cast<std::size_t>(j) * m + s[j][i]] = family.vec(i, r[i][j]);
        }
    }
    return slots;
}

PureState prepare_product_state(const BasisFamily& family, const std::vector<std::vector<int>>& r,
                                const std::vector<std::vector<int>>& s) {
    const auto slots = product_factors(family, r, s);
    if (slots.size() > 20) {
        throw CapacityError("dense product state limited to 20 qudits");
    }
    return PureState(kron_all(slots), std::vector<int>(slots.size(), family.l()));
}

Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vec kron_all(const std::vector<Vec>& factors) {
    Vec out = Vec::Ones(1);
    for (const auto& f : factors) {
        out = kron(out, f);
    }
    return out;
}

Vec apply_on_subsystems(const Vec& psi, const std::vector<int>& dims,
                        const std::vector<int>& targets, const Mat& op) {
    const int k = static_cast<int>(dims.size());
    if (product(dims) != psi.size()) {
        throw InputError("apply_on_subsystems: vector length does not match dims");
    }
    std::vector<std::int64_t> stride(k, 1);
    for (int q = k - 2; q >= 0; --q) {
        stride[q] = stride[q + 1] * dims[q + 1];
    }
    std::vector<char> is_target(k, 0);
    std::int64_t tdim = 1;
    for (int t : targets) {
        if (t < 0 || t >= k || is_target[t]) {
            throw InputError("apply_on_subsystems: bad target list");
        }
        is_target[t] = 1;
        tdim *= dims[t];
    }
    if (op.rows() != tdim || op.cols() != tdim) {
        throw InputError("apply_on_subsystems: operator dimension mismatch");
    }
    // Offsets of every target-digit combination, in target order.
    std::vector<std::int64_t> offsets(tdim, 0);
    for (std::int64_t c = 0; c < tdim; ++c) {
        std::int64_t rem = c;
        std::int64_t off = 0;
        for (int q = static_cast<int>(targets.size()) - 1; q >= 0; --q) {
            const int t = targets[q];
            off += (rem % dims[t]) * stride[t];
            rem /= dims[t];
        }
        offsets[c] = off;
    }
    std::vector<int> rest;
    for (int q = 0; q < k; ++q) {
        if (!is_target[q]) {
            rest.push_back(q);
        }
    }
    const std::int64_t rdim = psi.size() / tdim;
    Vec out(psi.size());
    Vec buf(tdim);
    for (std::int64_t c = 0; c < rdim; ++c) {
        std::int64_t rem = c;
        std::int64_t base = 0;
        for (int q = static_cast<int>(rest.size()) - 1; q >= 0; --q) {
            const int t = rest[q];
            base += (rem % dims[t]) * stride[t];
            rem /= dims[t];
        }
        for (std::int64_t a = 0; a < tdim; ++a) {
            buf(a) = psi(base + offsets[a]);
        }
        const Vec res = op * buf;
        for (std::int64_t a = 0; a < tdim; ++a) {
            out(base + offsets[a]) = res(a);
        }
    }
    return out;
}

std::vector<double> full_distribution(const PureState& state, const ProjectiveMeasurement& meas) {
    std::vector<double> probs;
    probs.reserve(meas.projectors.size());
    for (const auto& p : meas.projectors) {
        probs.push_back(apply_on_subsystems(state.amplitudes, state.dims, meas.targets, p)
                            .squaredNorm());
    }
    return probs;
}

MeasureResult measure(const PureState& state, const ProjectiveMeasurement& meas,
                      std::uint64_t seed) {
    const auto probs = full_distribution(state, meas);
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    const double u = unif(rng) * total;
    int outcome = -1;
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) {
            continue;
        }
        acc += probs[k];
        outcome = static_cast<int>(k);
        if (u < acc) {
            break;
        }
    }
    if (outcome < 0) {
        throw InvariantError("measurement has no outcome with positive weight");
    }
    Vec post = apply_on_subsystems(state.amplitudes, state.dims, meas.targets,
                                   meas.projectors[outcome]);
    const double nrm = post.norm();
    if (nrm < 1e-12) {
        throw InvariantError("post-measurement state has vanishing norm");
    }
    MeasureResult res;
    res.outcome = outcome;
    res.probability = probs[outcome];
    res.post = PureState(post / nrm, state.dims);
    return res;
}

} // namespace scot::qm
