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
 * Dense state-vector backend: qudit basis families, product states,
 * projective measurements and operator norms.
 *
 * Multi-qudit amplitudes use row-major (big-endian) tensor ordering: the
 * first subsystem is the most significant digit of the flat index.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace scot::qm {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// m orthonormal bases of C^l. Column r of bases[i] is |alpha_r^i>.
class BasisFamily {
  public:
    BasisFamily() = default;
    /// Validates orthonormality, lambda < 1 and the entangled-state condition.
    BasisFamily(int l, std::vector<Mat> bases);

    [[nodiscard]] int l() const { return l_; }
    [[nodiscard]] int m() const { return static_cast<int>(bases_.size()); }
    [[nodiscard]] const Mat& basis(int i) const { return bases_.at(i); }
    [[nodiscard]] Vec vec(int i, int r) const { return bases_.at(i).col(r); }
    [[nodiscard]] double lambda() const { return lambda_; }

  private:
    int l_ = 0;
    std::vector<Mat> bases_;
    double lambda_ = 0.0;
};

/// Qubit family with D_0 computational and
/// |alpha_r^i> = (-1)^r cos(theta_i/2)|r> + sin(theta_i/2)|1-r>.
/// Requires m-1 strictly increasing angles in (0, pi).
[[nodiscard]] BasisFamily planar_basis_family(int m, const std::vector<double>& thetas);

/// Angles theta_i = i*pi/m, i = 1..m-1.
[[nodiscard]] std::vector<double> equispaced_thetas(int m);

/// max_{i != i', r, r'} |<alpha_r^i | alpha_r'^i'>|^2.
[[nodiscard]] double overlap_lambda(const BasisFamily& family);

/// Sum_r |alpha_r^i>|alpha_r^i> for basis i.
[[nodiscard]] Vec pairing_vector(const BasisFamily& family, int i);

struct PureState {
    Vec amplitudes;
    std::vector<int> dims;

    PureState() = default;
    PureState(Vec amps, std::vector<int> subsystem_dims);

    [[nodiscard]] int subsystems() const { return static_cast<int>(dims.size()); }
    [[nodiscard]] Eigen::Index size() const { return amplitudes.size(); }
};

/// Projectors on the listed subsystems (in the listed order).
struct ProjectiveMeasurement {
    std::vector<Mat> projectors;
    std::vector<int> targets;

    /// Rank-1 projectors onto the columns of an orthonormal basis.
    static ProjectiveMeasurement from_basis(const Mat& basis, std::vector<int> targets);
    /// Groups basis columns by label into `outcomes` projectors.
    static ProjectiveMeasurement from_labelled_basis(const Mat& basis,
                                                     const std::vector<int>& labels,
                                                     int outcomes, std::vector<int> targets);

    [[nodiscard]] int outcomes() const { return static_cast<int>(projectors.size()); }
    /// Throws InvariantError when a projector property fails at tolerance tol.
    void check(double tol = 1e-9) const;
};

/// Per-slot factors of |Psi_r^s>: slot j*m + p holds |alpha_{r_i^j}^i> with p = s_i^j.
/// r is m rows of n entries; s holds n permutations of {0..m-1}.
[[nodiscard]] std::vector<Vec> product_factors(const BasisFamily& family,
                                               const std::vector<std::vector<int>>& r,
                                               const std::vector<std::vector<int>>& s);

/// Dense |Psi_r^s> on mn qudits (mn capped at 20).
[[nodiscard]] PureState prepare_product_state(const BasisFamily& family,
                                              const std::vector<std::vector<int>>& r,
                                              const std::vector<std::vector<int>>& s);

[[nodiscard]] Vec kron(const Vec& a, const Vec& b);
[[nodiscard]] Mat kron(const Mat& a, const Mat& b);
[[nodiscard]] Vec kron_all(const std::vector<Vec>& factors);

/// Applies op to the target subsystems of a flat vector with the given dims.
[[nodiscard]] Vec apply_on_subsystems(const Vec& psi, const std::vector<int>& dims,
                                      const std::vector<int>& targets, const Mat& op);

struct MeasureResult {
    int outcome = 0;
    PureState post;
    double probability = 0.0;
};

/// Born-rule sampling, deterministic given seed.
[[nodiscard]] MeasureResult measure(const PureState& state, const ProjectiveMeasurement& meas,
                                    std::uint64_t seed);

[[nodiscard]] std::vector<double> full_distribution(const PureState& state,
                                                    const ProjectiveMeasurement& meas);

/// Largest singular value, from a Hermitian eigensolve of op (or op^dagger op).
[[nodiscard]] double spectral_norm(const Mat& op);
/// Power iteration on op^dagger op; used to cross-check spectral_norm.
[[nodiscard]] double spectral_norm_power(const Mat& op, double rel_tol = 1e-12,
                                         int max_iter = 100000);

/// Haar-random unitary: QR of a complex Gaussian matrix with phase fix.
[[nodiscard]] Mat haar_unitary(int dim, Rng& rng);
[[nodiscard]] Vec random_state(int dim, Rng& rng);
/// Unitary (or isometry) factor of the polar decomposition.
[[nodiscard]] Mat polar_factor(const Mat& a);
/// Extends orthonormal columns to a full orthonormal basis.
[[nodiscard]] Mat complete_basis(const Mat& cols, Rng& rng);
[[nodiscard]] double unitarity_residual(const Mat& u);

} // namespace scot::qm
