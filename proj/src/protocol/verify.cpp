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

#include <boost/math/distributions/chi_squared.hpp>

#include "scot/bounds.hpp"
#include "scot/errors.hpp"
#include "sim.hpp"

namespace scot::proto {

namespace {

bool bob_side(const std::string& a) { return !a.empty() && a.front() == 'B'; }
bool alice_side(const std::string& a) { return !a.empty() && a.front() == 'A'; }

std::string fmt(const geo::Event& e) {
    std::string s = "(" + std::to_string(e.t);
    for (std::size_t k = 0; k < e.x.size(); ++k) {
        s += ", " + std::to_string(e.x[k]);
    }
    return s + ")";
}

int mod(int a, int m) { return ((a % m) + m) % m; }

} // namespace

TranscriptCheck verify_transcript(const Transcript& t, const ScotConfig& cfg) {
    TranscriptCheck out;
    auto flag = [&out](std::string kind, std::string msg) {
        out.ok = false;
        out.violations.push_back({std::move(kind), std::move(msg)});
    };
    const auto& layout = cfg.layout;
    const double eps = layout.eps();
    const auto& q = layout.layout().q_points;

    auto on_worldline = [&](const std::string& agent, const geo::Event& e, const std::string& what) {
        if (!layout.has_agent(agent)) {
            flag("worldline", what + ": agent " + agent + " has no worldline");
            return;
        }
        if (!layout.worldline(agent).passes_through(e)) {
            flag("worldline", what + ": event " + fmt(e) + " is not on the worldline of " + agent);
        }
    };
    auto check_placements = [&](const std::vector<Placement>& ps, const geo::Event* emit,
                                const geo::Event* deliver, const geo::Event* at,
                                const std::string& what) {
        for (const auto& p : ps) {
            const geo::Event* e = p.target == Placement::Target::Emit      ? emit
                                  : p.target == Placement::Target::Deliver ? deliver
                                                                           : at;
            if (e == nullptr) {
                flag("placement", what + ": placement " + detail::describe(p) +
                                      " has no matching event");
            } else if (!detail::placement_holds(p, *e, layout)) {
                flag("placement", what + ": event " + fmt(*e) + " violates " + detail::describe(p));
            }
        }
    };

    std::map<std::string, double> last_emit;
    for (const auto& msg : t.messages) {
        const std::string what = "message " + std::to_string(msg.seq) + " (" + msg.sender +
                                 " -> " + msg.receiver + ", step " + msg.step + ")";
        if (msg.emit.x.size() != msg.deliver.x.size() ||
            !geo::causally_precedes(msg.emit, msg.deliver, eps)) {
            flag("causality", what + ": delivery " + fmt(msg.deliver) +
                                  " is outside the causal future of emission " + fmt(msg.emit));
        }
        on_worldline(msg.sender, msg.emit, what + " emit");
        on_worldline(msg.receiver, msg.deliver, what + " deliver");
        check_placements(msg.placements, &msg.emit, &msg.deliver, nullptr, what);
        if (msg.sender == "A" || msg.sender == "B") {
            if (!geo::in_region_G(msg.emit, q, eps)) {
                flag("placement", what + ": " + msg.sender + " emits outside G");
            }
        }
        auto it = last_emit.find(msg.sender);
        if (it != last_emit.end() && msg.emit.t < it->second - 1e-12) {
            flag("order", what + ": emitted before an earlier message of " + msg.sender);
        }
        last_emit[msg.sender] = msg.emit.t;
    }

    std::map<std::string, double> last_op;
    for (const auto& op : t.local_ops) {
        const std::string what = "local op " + op.agent + " step " + op.step;
        on_worldline(op.agent, op.at, what);
        check_placements(op.placements, nullptr, nullptr, &op.at, what);
        if ((op.agent == "A" || op.agent == "B") && !geo::in_region_G(op.at, q, eps)) {
            flag("placement", what + ": " + op.agent + " acts outside G");
        }
        auto it = last_op.find(op.agent);
        if (it != last_op.end() && op.at.t < it->second - 1e-12) {
            flag("order", what + ": out of time order on the worldline");
        }
        last_op[op.agent] = op.at.t;
    }

    for (const auto& [i, bits] : t.outputs) {
        (void)bits;
        if (i < 0 || i >= layout.m()) {
            flag("output", "output recorded for unknown region " + std::to_string(i));
            continue;
        }
        const std::string who = "B" + std::to_string(i);
        bool inside = false;
        for (const auto& op : t.local_ops) {
            if (op.agent == who && layout.layout().regions[i].contains(op.at)) {
                inside = true;
            }
        }
        if (!inside) {
            flag("output", "output of region " + std::to_string(i) + " has no operation of " +
                               who + " inside R_" + std::to_string(i));
        }
    }

    const int m = t.m;
    if (t.mode == Mode::PCC) {
        if (!t.b_prime || !t.c) {
            flag("pad", "P_CC transcript lacks b' or c");
        } else {
            if (mod(*t.b_prime - t.b, m) != *t.c) {
                flag("pad", "(b' - b) mod m differs from c");
            }
            for (int i = 0; i < static_cast<int>(t.t.size()); ++i) {
                if (t.t[i].empty()) {
                    continue;
                }
                const int k = mod(*t.b_prime - i, m);
                if (i >= static_cast<int>(t.x.size()) || k >= static_cast<int>(t.r.size()) ||
                    t.x[i].size() != t.t[i].size() || t.r[k].size() != t.t[i].size()) {
                    flag("pad", "pad " + std::to_string(i) + " has the wrong shape");
                    continue;
                }
                for (std::size_t j = 0; j < t.t[i].size(); ++j) {
                    if ((t.t[i][j] ^ t.x[i][j]) != t.r[k][j]) {
                        flag("pad", "t_" + std::to_string(i) + " xor x_" + std::to_string(i) +
                                        " differs from r_" + std::to_string(k));
                        break;
                    }
                }
            }
        }
    } else if (t.mode == Mode::PQC) {
        for (int i = 0; i < static_cast<int>(t.t.size()); ++i) {
            if (t.t[i].empty()) {
                continue;
            }
            if (t.r.empty() || i >= static_cast<int>(t.x.size()) ||
                t.x[i].size() != t.t[i].size() || t.r[0].size() != t.t[i].size()) {
                flag("pad", "pad " + std::to_string(i) + " has the wrong shape");
                continue;
            }
            for (std::size_t j = 0; j < t.t[i].size(); ++j) {
                if ((t.t[i][j] ^ t.x[i][j]) != t.r[0][j]) {
                    flag("pad", "t_" + std::to_string(i) + " xor x_" + std::to_string(i) +
                                    " differs from r");
                    break;
                }
            }
        }
    }
    return out;
}

bool output_correct(const Transcript& t, double gamma) {
    auto it = t.outputs.find(t.b);
    if (it == t.outputs.end()) {
        return false;
    }
    const Bits* want = nullptr;
    if (t.mode == Mode::PSR) {
        if (t.r.empty()) {
            return false;
        }
        want = &t.r.front();
    } else {
        if (t.b < 0 || t.b >= static_cast<int>(t.x.size())) {
            return false;
        }
        want = &t.x[t.b];
    }
    if (want->size() != it->second.size()) {
        return false;
    }
    return dqacm::hamming_distance(*want, it->second) <= bounds::ball_radius(t.n, gamma);
}

double chi2_critical(int df, double alpha) {
    if (df < 1 || !(alpha > 0.0 && alpha < 1.0)) {
        throw InputError("chi2_critical needs df >= 1 and alpha in (0, 1)");
    }
    const boost::math::chi_squared dist(df);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

AuditResult obliviousness_audit(const std::vector<Transcript>& batch, double alpha) {
    AuditResult res;
    std::map<int, std::vector<long>> counts;
    int m = 0;
    for (const auto& t : batch) {
        for (const auto& msg : t.messages) {
            if (!bob_side(msg.sender) || !alice_side(msg.receiver)) {
                continue;
            }
            ++res.bob_to_alice;
            const bool only_bprime = t.mode == Mode::PCC && msg.sender == "B" &&
                                     msg.receiver == "A" && msg.payload.size() == 1 &&
                                     msg.payload.front().label == "b'";
            if (!only_bprime) {
                ++res.disallowed;
            }
        }
        if (t.mode == Mode::PCC) {
            if (!t.b_prime) {
                res.notes.push_back("P_CC transcript without b'");
                res.ok = false;
                continue;
            }
            m = std::max(m, t.m);
            auto& row = counts[t.b];
            row.resize(t.m, 0);
            ++row[*t.b_prime];
        }
    }
    if (res.disallowed > 0) {
        res.ok = false;
        res.notes.push_back(std::to_string(res.disallowed) + " disallowed Bob->Alice messages");
    }
    if (!counts.empty()) {
        res.critical = chi2_critical(m - 1, alpha);
        for (const auto& [b, row] : counts) {
            long total = 0;
            for (long v : row) {
                total += v;
            }
            const double expect = static_cast<double>(total) / m;
            double chi2 = 0.0;
            for (int k = 0; k < m; ++k) {
                const double v = k < static_cast<int>(row.size()) ? row[k] : 0.0;
                chi2 += (v - expect) * (v - expect) / expect;
            }
            res.chi2[b] = chi2;
            if (chi2 > res.critical) {
                res.ok = false;
                res.notes.push_back("b' is not uniform for b = " + std::to_string(b));
            }
        }
    }
    return res;
}

} // namespace scot::proto
