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
#include <numbers>

#include "scot/errors.hpp"
#include "scot/quantum.hpp"

namespace scot::qm {

BasisFamily::BasisFamily(int l, std::vector<Mat> bases) : l_(l), bases_(std::move(bases)) {
    if (l_ < 2) {
        throw InputError("basis family needs qudit dimension l >= 2");
    }
    if (bases_.size() < 2) {
        throw InputError("basis family needs at least two bases");
    }
    for (std::size_t i = 0; i < bases_.size(); ++i) {
        const Mat& b = bases_[i];
        if (b.rows() != l_ || b.cols() != l_) {
            throw InputError("basis " + std::to_string(i) + " is not l x l");
        }
        const Mat gram = b.adjoint() * b;
        if ((gram - Mat::Identity(l_, l_)).cwiseAbs().maxCoeff() > 1e-10) {
            throw InputError("basis " + std::to_string(i) + " is not orthonormal");
        }
    }
    lambda_ = overlap_lambda(*this);
    if (!(lambda_ < 1.0 - 1e-12)) {
        throw InputError("basis family has lambda = 1; bases must be pairwise distinct");
    }
    const Vec ref = pairing_vector(*this, 0);
    for (int i = 1; i < m(); ++i) {
        const Vec v = pairing_vector(*this, i);
        const double fidelity = std::abs(ref.dot(v)) / (ref.norm() * v.norm());
        if (std::abs(1.0 - fidelity) > 1e-10) {
            throw InputError("basis " + std::to_string(i) +
                             " is incompatible with a common maximally entangled state");
        }
    }
}

double overlap_lambda(const BasisFamily& family) {
    double best = 0.0;
    for (int i = 0; i < family.m(); ++i) {
        for (int k = 0; k < family.m(); ++k) {
            if (i == k) {
                continue;
            }
            const Mat overlaps = family.basis(i).adjoint() * family.basis(k);
            best = std::max(best, overlaps.cwiseAbs2().maxCoeff());
        }
    }
    return best;
}

Vec pairing_vector(const BasisFamily& family, int i) {
    const int l = family.l();
    Vec out = Vec::Zero(static_cast<Eigen::Index>(l) * l);
    for (int r = 0; r < l; ++r) {
        const Vec a = family.vec(i, r);
        out += kron(a, a);
    }
    return out;
}

BasisFamily planar_basis_family(int m, const std::vector<double>& thetas) {
    if (m < 2) {
        throw InputError("planar family needs m >= 2");
    }
    if (static_cast<int>(thetas.size()) != m - 1) {
        throw InputError("planar family needs m-1 angles, got " + std::to_string(thetas.size()));
    }
    double prev = 0.0;
    for (double th : thetas) {
        if (!(th > prev) || !(th < std::numbers::pi)) {
            throw InputError("angles must be strictly increasing inside (0, pi)");
        }
        prev = th;
    }
    std::vector<Mat> bases;
    bases.push_back(Mat::Identity(2, 2));
    for (double th : thetas) {
        const double c = std::cos(th / 2.0);
        const double s = std::sin(th / 2.0);
        Mat b(2, 2);
        // column r: (-1)^r c |r> + s |1-r>
        b(0, 0) = c;
        b(1, 0) = s;
        b(0, 1) = s;
        b(1, 1) = -c;
        bases.push_back(b);
    }
    return BasisFamily(2, std::move(bases));
}

std::vector<double> equispaced_thetas(int m) {
    std::vector<double> out;
    for (int i = 1; i < m; ++i) {
        out.push_back(i * std::numbers::pi / m);
    }
    return out;
}

} // namespace scot::qm
