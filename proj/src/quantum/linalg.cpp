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
#include <lapacke.h>

#include "scot/errors.hpp"
#include "scot/quantum.hpp"

namespace scot::qm {

namespace {

Mat gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = cplx(re, im);
        }
    }
    return z;
}

} // namespace

double spectral_norm(const Mat& op) {
    if (op.rows() != op.cols()) {
        throw InputError("spectral_norm expects a square matrix");
    }
    if (op.size() == 0) {
        return 0.0;
    }
    if (!op.allFinite()) {
        throw InputError("spectral_norm: non-finite entries");
    }
    // BDCSVD in Eigen 3.4.0 misreports the top singular value on degenerate spectra.
    const double scale = op.cwiseAbs().maxCoeff();
    if ((op - op.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(scale, 1.0)) {
        const Eigen::SelfAdjointEigenSolver<Mat> es(op, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    const Mat h = op.adjoint() * op;
    const Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double spectral_norm_power(const Mat& op, double rel_tol, int max_iter) {
    if (op.rows() != op.cols()) {
        throw InputError("spectral_norm_power expects a square matrix");
    }
    if (op.size() == 0) {
        return 0.0;
    }
    Rng rng(0x5eed);
    Vec v = gaussian(op.cols(), 1, rng).col(0);
    v.normalize();
    const Mat h = op.adjoint() * op;
    double prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = h * v;
        const double nrm = w.norm();
        if (nrm == 0.0) {
            return 0.0;
        }
        v = w / nrm;
        if (std::abs(nrm - prev) <= rel_tol * nrm) {
            return std::sqrt(nrm);
        }
        prev = nrm;
    }
    return std::sqrt(prev);
}

Mat haar_unitary(int dim, Rng& rng) {
    if (dim < 1) {
        throw InputError("haar_unitary: dimension must be positive");
    }
    Eigen::HouseholderQR<Mat> qr(gaussian(dim, dim, rng));
    Mat q = qr.householderQ() * Mat::Identity(dim, dim);
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const double a = std::abs(r(i, i));
        if (a > 0.0) {
            q.col(i) *= r(i, i) / a;
        }
    }
    return q;
}

Vec random_state(int dim, Rng& rng) {
    Vec v = gaussian(dim, 1, rng).col(0);
    return v / v.norm();
}

Mat polar_factor(const Mat& a) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    if (k == 0) {
        return Mat::Zero(a.rows(), a.cols());
    }
    Mat work = a;
    Mat u(m, k);
    Mat vt(k, n);
    Eigen::VectorXd s(k);
    Eigen::VectorXd superb(k);
    const lapack_int info =
        LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n,
                       reinterpret_cast<lapack_complex_double*>(work.data()), m, s.data(),
                       reinterpret_cast<lapack_complex_double*>(u.data()), m,
                       reinterpret_cast<lapack_complex_double*>(vt.data()), k, superb.data());
    if (info != 0) {
        throw InvariantError("zgesvd failed with info " + std::to_string(info));
    }
    return u * vt;
}

Mat complete_basis(const Mat& cols, Rng& rng) {
    const Eigen::Index d = cols.rows();
    const Eigen::Index k = cols.cols();
    if (k > d) {
        throw InputError("complete_basis: more columns than rows");
    }
    Mat seed(d, d);
    seed.leftCols(k) = cols;
    if (d > k) {
        seed.rightCols(d - k) = gaussian(d, d - k, rng);
    }
    Eigen::HouseholderQR<Mat> qr(seed);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    q.leftCols(k) = cols;
    return q;
}

double unitarity_residual(const Mat& u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

} // namespace scot::qm
