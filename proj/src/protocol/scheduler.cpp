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

#include <limits>
#include <sstream>

#include "scot/errors.hpp"
#include "sim.hpp"

namespace scot::proto {

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::PSR:
        return "psr";
    case Mode::PQC:
        return "pqc";
    case Mode::PCC:
        return "pcc";
    }
    return "?";
}

Mode parse_mode(const std::string& name) {
    if (name == "psr") {
        return Mode::PSR;
    }
    if (name == "pqc") {
        return Mode::PQC;
    }
    if (name == "pcc") {
        return Mode::PCC;
    }
    throw InputError("unknown protocol mode '" + name + "'");
}

std::string to_string(Placement::Kind kind) {
    switch (kind) {
    case Placement::Kind::InG:
        return "in_G";
    case Placement::Kind::PastOfQ:
        return "past_of_Q";
    case Placement::Kind::AtQ:
        return "at_Q";
    case Placement::Kind::InRegion:
        return "in_region";
    case Placement::Kind::PastOfRegion:
        return "past_of_region";
    }
    return "?";
}

void ScotConfig::validate() const {
    dqacm.validate();
    if (layout.m() != dqacm.m) {
        throw InputError("layout has " + std::to_string(layout.m()) + " regions but m = " +
                         std::to_string(dqacm.m));
    }
    std::vector<std::string> agents{"A", "B"};
    for (int i = 0; i < dqacm.m; ++i) {
        agents.push_back("A" + std::to_string(i));
        agents.push_back("B" + std::to_string(i));
    }
    for (const auto& a : agents) {
        if (!layout.has_agent(a)) {
            throw InputError("layout has no worldline for agent " + a);
        }
    }
}

namespace detail {

int QuantumRegistry::add(std::vector<qm::Vec> factors) {
    const int h = next_++;
    systems_.emplace(h, std::move(factors));
    return h;
}

std::vector<qm::Vec> QuantumRegistry::take(int handle) {
    auto it = systems_.find(handle);
    if (it == systems_.end()) {
        throw InvariantError("unknown or consumed quantum handle " + std::to_string(handle));
    }
    auto out = std::move(it->second);
    systems_.erase(it);
    return out;
}

bool placement_holds(const Placement& p, const geo::Event& e, const geo::ValidatedLayout& layout) {
    const auto& lay = layout.layout();
    const double eps = layout.eps();
    const int m = layout.m();
    if (p.kind != Placement::Kind::InG && (p.index < 0 || p.index >= m)) {
        return false;
    }
    switch (p.kind) {
    case Placement::Kind::InG:
        return geo::in_region_G(e, lay.q_points, eps);
    case Placement::Kind::PastOfQ:
        return geo::causally_precedes(e, lay.q_points[p.index], eps);
    case Placement::Kind::AtQ: {
        const auto& q = lay.q_points[p.index];
        return std::abs(q.t - e.t) <= 1e-9 && geo::spatial_distance(q, e) <= 1e-9;
    }
    case Placement::Kind::InRegion:
        return lay.regions[p.index].contains(e);
    case Placement::Kind::PastOfRegion:
        for (const auto& r : lay.regions[p.index].events()) {
            if (geo::causally_precedes(e, r, eps)) {
                return true;
            }
        }
        return false;
    }
    return false;
}

std::string describe(const Placement& p) {
    std::string s = to_string(p.kind);
    if (p.kind != Placement::Kind::InG) {
        s += "(" + std::to_string(p.index) + ")";
    }
    return s;
}

Sim::Sim(const ScotConfig& cfg, Transcript& transcript, std::uint64_t seed)
    : cfg_(cfg), transcript_(transcript), rng_(seed) {}

Agent& Sim::add(std::unique_ptr<Agent> agent) {
    Agent& ref = *agent;
    const auto& wl = cfg_.layout.worldline(ref.name());
    if (wl.empty()) {
        throw SchedulingError("agent " + ref.name() + " has an empty worldline");
    }
    clocks_[ref.name()] = wl.vertices().front();
    by_name_[ref.name()] = &ref;
    agents_.push_back(std::move(agent));
    return ref;
}

geo::Event Sim::clock(const std::string& agent) const {
    auto it = clocks_.find(agent);
    if (it == clocks_.end()) {
        throw InvariantError("unknown agent " + agent);
    }
    return it->second;
}

void Sim::advance(const std::string& agent, const geo::Event& e) {
    auto& c = clocks_.at(agent);
    if (e.t > c.t) {
        c = e;
    }
}

void Sim::require(const std::vector<Placement>& placements, const geo::Event& emit,
                  const geo::Event& deliver, const std::string& what) const {
    for (const auto& p : placements) {
        const geo::Event& e = p.target == Placement::Target::Emit ? emit : deliver;
        if (!placement_holds(p, e, cfg_.layout)) {
            throw SchedulingError(what + ": no admissible event satisfies " + describe(p));
        }
    }
}

geo::Event Sim::act(const std::string& agent, const std::string& step,
                    const std::string& description, std::vector<Placement> placements,
                    std::optional<int> in_region) {
    const auto& wl = cfg_.layout.worldline(agent);
    const geo::Event now = clock(agent);
    std::optional<geo::Event> at;
    if (in_region) {
        at = wl.earliest_in(cfg_.layout.layout().regions.at(*in_region), now.t);
    } else {
        at = wl.at_time(now.t);
    }
    if (!at) {
        throw SchedulingError("step " + step + ": agent " + agent +
                              " has no admissible worldline event for '" + description + "'");
    }
    require(placements, *at, *at, "step " + step + " (" + agent + ")");
    advance(agent, *at);
    transcript_.local_ops.push_back({step, agent, *at, description, std::move(placements)});
    return *at;
}

void Sim::send(const std::string& from, const std::string& to, const std::string& step,
               std::vector<Payload> payload, std::vector<Placement> placements) {
    const geo::Event emit = clock(from);
    const geo::Event start{-std::numeric_limits<double>::infinity(), {}};
    const auto deliver = cfg_.layout.worldline(to).earliest_after(
        std::span<const geo::Event>(&emit, 1), start.t, cfg_.layout.eps());
    if (!deliver) {
        throw SchedulingError("step " + step + ": " + to + " can never receive a signal from " +
                              from);
    }
    require(placements, emit, *deliver, "step " + step + " (" + from + " -> " + to + ")");
    Message msg;
    msg.step = step;
    msg.sender = from;
    msg.receiver = to;
    msg.emit = emit;
    msg.deliver = *deliver;
    msg.payload = std::move(payload);
    msg.placements = std::move(placements);
    enqueue(std::move(msg));
}

void Sim::hand_over(const std::string& from, const std::string& to, int i, const std::string& step,
                    std::vector<Payload> payload) {
    const auto& q = cfg_.layout.layout().q_points.at(i);
    if (!cfg_.layout.worldline(from).passes_through(q) ||
        !cfg_.layout.worldline(to).passes_through(q)) {
        throw SchedulingError("step " + step + ": worldlines of " + from + " and " + to +
                              " must pass through Q_" + std::to_string(i));
    }
    if (clock(from).t > q.t + 1e-12) {
        throw SchedulingError("step " + step + ": " + from + " is not ready before Q_" +
                              std::to_string(i));
    }
    advance(from, q);
    Message msg;
    msg.step = step;
    msg.sender = from;
    msg.receiver = to;
    msg.emit = q;
    msg.deliver = q;
    msg.payload = std::move(payload);
    msg.placements = {{Placement::Kind::AtQ, Placement::Target::Emit, i},
                      {Placement::Kind::AtQ, Placement::Target::Deliver, i}};
    enqueue(std::move(msg));
}

void Sim::enqueue(Message msg) {
    msg.seq = seq_++;
    queue_.push({msg.deliver.t, msg.seq});
    msg_index_[msg.seq] = transcript_.messages.size();
    transcript_.messages.push_back(std::move(msg));
}

void Sim::run() {
    for (auto& a : agents_) {
        a->start(*this);
    }
    while (!queue_.empty()) {
        const Pending next = queue_.top();
        queue_.pop();
        // Copy: handlers may append to the transcript and invalidate references.
        const Message msg = transcript_.messages[msg_index_.at(next.seq)];
        auto it = by_name_.find(msg.receiver);
        if (it == by_name_.end()) {
            throw InvariantError("message to unknown agent " + msg.receiver);
        }
        advance(msg.receiver, msg.deliver);
        it->second->receive(*this, msg);
    }
}

} // namespace detail
} // namespace scot::proto
