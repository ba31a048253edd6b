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

// Shared helpers for the adversary sources.
#pragma once

#include <vector>

#include "scot/adversary.hpp"

namespace scot::adv::detail {

/// Per-configuration tables reused by every kernel.
struct Tables {
    int m = 0;
    int n = 0;
    int l = 0;
    int K = 0;
    Eigen::Index R = 0;
    std::vector<dqacm::PermTuple> tuples;
    /// rl0[r], rl1[r]: outcome index of r_{l0}, r_{l1} for column r.
    std::vector<int> rl0;
    std::vector<int> rl1;
    /// Hamming distance between outcome indices.
    std::vector<int> hd;

    Tables(const dqacm::DqacmConfig& cfg, int l0, int l1);
    [[nodiscard]] int dist(int a, int b) const { return hd[a * K + b]; }
};

/// Encoding matrices per s in factored form: enc_s = (B_{who[0]} (x) ... ) P_s, with P_s a
/// column permutation. Products with enc_s cost O(rows * l^{mn} * l * mn).
class EncodingCache {
  public:
    EncodingCache(const dqacm::DqacmConfig& cfg, const std::vector<dqacm::PermTuple>& tuples);

    /// x * enc_s
    [[nodiscard]] Mat apply(std::size_t si, const Mat& x) const;
    /// y * enc_s^dagger
    [[nodiscard]] Mat apply_adjoint(std::size_t si, const Mat& y) const;

  private:
    int l_ = 2;
    int slots_ = 0;
    std::vector<Mat> bases_;
    std::vector<Mat> bases_adj_;
    /// who_[si][slot]: basis index at that slot.
    std::vector<std::vector<int>> who_;
    /// perm_[si][r]: column of the Kronecker product that holds column r of enc_s.
    std::vector<std::vector<Eigen::Index>> perm_;
};

/// Histogram from a split isometry and branch measurements.
DistanceHistogram histogram_from_isometry(const dqacm::DqacmConfig& cfg, const Tables& tab,
                                          const EncodingCache& enc, const Mat& iso,
                                          const std::vector<Measurement>& meas0,
                                          const std::vector<Measurement>& meas1, int dB0,
                                          int dB1, Exec exec);

} // namespace scot::adv::detail
