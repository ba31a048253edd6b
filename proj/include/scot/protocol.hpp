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
 * Message-passing execution of the P_SR, P_QC and P_CC protocols on a
 * deterministic discrete-event scheduler.
 *
 * Every action is bound to the earliest event on the acting agent's
 * worldline that satisfies the step's causal requirement. Requirements are
 * attached to messages and local operations as placements so that a
 * transcript can be re-checked independently of the runner.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scot/dqacm.hpp"
#include "scot/minkowski.hpp"

namespace scot::proto {

enum class Mode { PSR, PQC, PCC };

[[nodiscard]] std::string to_string(Mode mode);
/// Accepts "psr", "pqc", "pcc".
[[nodiscard]] Mode parse_mode(const std::string& name);

struct QuantumHandle {
    int id = 0;
    friend bool operator==(const QuantumHandle&, const QuantumHandle&) = default;
};

using Bits = std::vector<int>;
using Value = std::variant<int, Bits, dqacm::Strings, QuantumHandle>;

struct Payload {
    std::string label;
    Value value;
};

struct Placement {
    enum class Kind { InG, PastOfQ, AtQ, InRegion, PastOfRegion };
    enum class Target { Emit, Deliver, At };
    Kind kind = Kind::InG;
    Target target = Target::At;
    int index = 0;
};

[[nodiscard]] std::string to_string(Placement::Kind kind);

struct Message {
    int seq = 0;
    std::string step;
    std::string sender;
    std::string receiver;
    geo::Event emit;
    geo::Event deliver;
    std::vector<Payload> payload;
    std::vector<Placement> placements;
};

struct LocalOp {
    std::string step;
    std::string agent;
    geo::Event at;
    std::string description;
    std::vector<Placement> placements;
};

struct Transcript {
    Mode mode = Mode::PSR;
    int m = 0;
    int n = 0;
    std::vector<Message> messages;
    std::vector<LocalOp> local_ops;
    /// Region index -> output string produced there.
    std::map<int, Bits> outputs;

    int b = 0;
    std::optional<int> b_prime;
    std::optional<int> c;
    dqacm::Strings x;
    /// P_SR / P_QC: one row (r). P_CC: m rows.
    dqacm::Strings r;
    /// P_SR / P_QC BB84 bases, one bit per round.
    Bits bases;
    /// P_CC permutations.
    dqacm::PermTuple s;
    /// P_QC / P_CC pads handed over at each Q_i.
    dqacm::Strings t;
    /// P_SR / P_QC: B_b's measured string.
    Bits r_prime;
    /// P_CC: r_c' recovered by each B_i.
    std::map<int, Bits> decoded;
};

struct ScotConfig {
    Mode mode = Mode::PCC;
    dqacm::DqacmConfig dqacm;
    geo::ValidatedLayout layout;

    [[nodiscard]] int m() const { return dqacm.m; }
    [[nodiscard]] int n() const { return dqacm.n; }
    /// m must match the layout and every protocol agent must have a worldline.
    void validate() const;
};

struct RunOptions {
    std::uint64_t seed = 0;
    /// Rate of i.i.d. flips on measurement records.
    double flip_rate = 0.0;
    /// Overrides Bob's random DQACM input (P_CC only).
    std::optional<int> force_c;
    /// Overrides Alice's random DQACM inputs (P_CC) or r and bases (P_SR/P_QC).
    std::optional<dqacm::AliceInputs> force_inputs;
    std::optional<Bits> force_bases;
};

[[nodiscard]] Transcript run_psr(const ScotConfig& cfg, const Bits& r, int b,
                                 const RunOptions& opts = {});
[[nodiscard]] Transcript run_pqc(const ScotConfig& cfg, const dqacm::Strings& x, int b,
                                 const RunOptions& opts = {});
[[nodiscard]] Transcript run_pcc(const ScotConfig& cfg, const dqacm::Strings& x, int b,
                                 const RunOptions& opts = {});

/// Dispatches on cfg.mode; P_SR uses x[0] as r.
[[nodiscard]] Transcript run(const ScotConfig& cfg, const dqacm::Strings& x, int b,
                             const RunOptions& opts = {});

struct TranscriptViolation {
    std::string kind;
    std::string message;
};

struct TranscriptCheck {
    bool ok = true;
    std::vector<TranscriptViolation> violations;
};

[[nodiscard]] TranscriptCheck verify_transcript(const Transcript& t, const ScotConfig& cfg);

/// Bob's output in R_b (x_b' for P_QC/P_CC, r' for P_SR) agrees with the
/// expected string within n*gamma.
[[nodiscard]] bool output_correct(const Transcript& t, double gamma = 0.0);

struct AuditResult {
    bool ok = true;
    int bob_to_alice = 0;
    int disallowed = 0;
    /// Per value of b: chi^2 statistic of b' against uniform.
    std::map<int, double> chi2;
    double critical = 0.0;
    std::vector<std::string> notes;
};

/// Bob->Alice traffic must be empty (P_SR/P_QC) or only b' (P_CC); for P_CC
/// b' must look uniform for every b at significance `alpha`.
[[nodiscard]] AuditResult obliviousness_audit(const std::vector<Transcript>& batch,
                                              double alpha = 1e-3);

/// Upper chi^2 quantile with `df` degrees of freedom.
[[nodiscard]] double chi2_critical(int df, double alpha);

} // namespace scot::proto
