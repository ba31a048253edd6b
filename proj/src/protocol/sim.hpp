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

// Discrete-event engine shared by the protocol runners.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "scot/protocol.hpp"
#include "scot/quantum.hpp"

namespace scot::proto::detail {

class Sim;

class Agent {
  public:
    explicit Agent(std::string name) : name_(std::move(name)) {}
    virtual ~Agent() = default;
    Agent(const Agent&) = delete;
    Agent& operator=(const Agent&) = delete;

    [[nodiscard]] const std::string& name() const { return name_; }
    virtual void start(Sim& /*sim*/) {}
    virtual void receive(Sim& sim, const Message& msg) = 0;

  private:
    std::string name_;
};

/// Product-state quantum systems addressed by handle.
class QuantumRegistry {
  public:
    int add(std::vector<qm::Vec> factors);
    [[nodiscard]] std::vector<qm::Vec> take(int handle);

  private:
    std::map<int, std::vector<qm::Vec>> systems_;
    int next_ = 1;
};

bool placement_holds(const Placement& p, const geo::Event& e, const geo::ValidatedLayout& layout);
std::string describe(const Placement& p);

class Sim {
  public:
    Sim(const ScotConfig& cfg, Transcript& transcript, std::uint64_t seed);

    Agent& add(std::unique_ptr<Agent> agent);
    /// Starts every agent in insertion order, then drains the event queue.
    void run();

    /// Performs a local operation at the earliest admissible event on the
    /// agent's worldline (inside region `in_region` when given).
    geo::Event act(const std::string& agent, const std::string& step,
                   const std::string& description, std::vector<Placement> placements,
                   std::optional<int> in_region = std::nullopt);

    /// Sends from the agent's current event; delivery at the earliest event
    /// of the receiver's worldline in the causal future of emission.
    void send(const std::string& from, const std::string& to, const std::string& step,
              std::vector<Payload> payload, std::vector<Placement> placements);

    /// Emission and delivery at Q_i; both worldlines must pass through Q_i.
    void hand_over(const std::string& from, const std::string& to, int i, const std::string& step,
                   std::vector<Payload> payload);

    [[nodiscard]] QuantumRegistry& registry() { return registry_; }
    [[nodiscard]] qm::Rng& rng() { return rng_; }
    [[nodiscard]] Transcript& transcript() { return transcript_; }
    [[nodiscard]] const ScotConfig& config() const { return cfg_; }

  private:
    struct Pending {
        double t;
        int seq;
        bool operator>(const Pending& o) const { return t != o.t ? t > o.t : seq > o.seq; }
    };

    geo::Event clock(const std::string& agent) const;
    void advance(const std::string& agent, const geo::Event& e);
    void enqueue(Message msg);
    void require(const std::vector<Placement>& placements, const geo::Event& emit,
                 const geo::Event& deliver, const std::string& what) const;

    const ScotConfig& cfg_;
    Transcript& transcript_;
    qm::Rng rng_;
    QuantumRegistry registry_;
    std::vector<std::unique_ptr<Agent>> agents_;
    std::map<std::string, Agent*> by_name_;
    std::map<std::string, geo::Event> clocks_;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
    std::map<int, std::size_t> msg_index_;
    int seq_ = 0;
};

} // namespace scot::proto::detail
