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
 * @file
 * Causal geometry of flat spacetime in units where c = 1.
 *
 * Events carry one time coordinate and 1-3 spatial coordinates. The light
 * cone boundary counts as causal (inclusive), so an event causally precedes
 * itself. An optional tolerance widens the causal side of the inequality.
 */
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scot::geo {

struct Event {
    double t = 0.0;
    std::vector<double> x;

    [[nodiscard]] int dim() const { return static_cast<int>(x.size()); }
    friend bool operator==(const Event&, const Event&) = default;
};

/// Euclidean distance between the spatial parts of two events.
[[nodiscard]] double spatial_distance(const Event& a, const Event& b);

/// True iff b.t - a.t >= |b.x - a.x| - eps.
[[nodiscard]] bool causally_precedes(const Event& a, const Event& b, double eps = 0.0);

/// Neither event lies in the other's (closed) light cone.
[[nodiscard]] bool spacelike_separated(const Event& a, const Event& b, double eps = 0.0);

/// Membership in the intersection of the causal pasts of all q_points.
[[nodiscard]] bool in_region_G(const Event& e, std::span<const Event> q_points,
                               double eps = 0.0);

/// Axis-aligned box in (t, x...) coordinates.
struct Box {
    Event lo;
    Event hi;
};

/// A finite set of sample events, optionally backed by the box they sample.
class Region {
  public:
    explicit Region(std::vector<Event> events, std::optional<Box> box = std::nullopt);

    /// Corner events of the box plus the supplied interior samples.
    static Region from_box(const Box& box, std::vector<Event> interior = {});

    [[nodiscard]] const std::vector<Event>& events() const { return events_; }
    [[nodiscard]] const std::optional<Box>& box() const { return box_; }
    [[nodiscard]] int dim() const { return events_.front().dim(); }

    /// Inside the box (closed, with tolerance) or equal to a member event.
    [[nodiscard]] bool contains(const Event& e, double tol = 1e-9) const;
    [[nodiscard]] bool has_member(const Event& e, double tol = 1e-9) const;

  private:
    std::vector<Event> events_;
    std::optional<Box> box_;
};

/// Piecewise-linear timelike worldline, parametrised by coordinate time.
class Worldline {
  public:
    Worldline() = default;
    explicit Worldline(std::vector<Event> vertices);

    [[nodiscard]] const std::vector<Event>& vertices() const { return vertices_; }
    [[nodiscard]] bool empty() const { return vertices_.empty(); }
    [[nodiscard]] double start_time() const { return vertices_.front().t; }
    [[nodiscard]] double end_time() const { return vertices_.back().t; }

    /// Position at coordinate time t; nullopt outside [start, end].
    [[nodiscard]] std::optional<Event> at_time(double t) const;

    /// Earliest event at time >= t_min that lies in the causal future of
    /// every event in `after`.
    [[nodiscard]] std::optional<Event> earliest_after(std::span<const Event> after,
                                                      double t_min, double eps = 0.0) const;

    /// Earliest event at time >= t_min inside the region's box, or at one of
    /// its member events when the region has no box.
    [[nodiscard]] std::optional<Event> earliest_in(const Region& region, double t_min) const;

    /// True when e lies on the worldline within tol.
    [[nodiscard]] bool passes_through(const Event& e, double tol = 1e-9) const;

    /// Every segment satisfies causal precedence with strict time increase.
    [[nodiscard]] bool is_timelike(double eps = 0.0) const;

  private:
    std::vector<Event> vertices_;
};

struct Layout {
    int dim = 1;
    std::vector<Region> regions;
    std::vector<Event> q_points;
    std::map<std::string, Worldline> worldlines;
    /// Agent id -> agent whose laboratory (worldline) it shares.
    std::map<std::string, std::string> aliases;
};

struct Violation {
    std::string kind;
    std::string message;
    std::vector<int> indices;
};

struct LayoutValidation;

/// Checks every Layout invariant; throws InputError when m < 2.
LayoutValidation validate_layout(Layout layout, double eps = 0.0);

/// A layout whose invariants have been checked. Only validate_layout makes one.
class ValidatedLayout {
  public:
    [[nodiscard]] const Layout& layout() const { return layout_; }
    [[nodiscard]] int m() const { return static_cast<int>(layout_.regions.size()); }
    [[nodiscard]] double eps() const { return eps_; }

    /// Resolves aliases; throws InputError for an unknown agent.
    [[nodiscard]] const Worldline& worldline(const std::string& agent) const;
    [[nodiscard]] bool has_agent(const std::string& agent) const;

  private:
    friend LayoutValidation validate_layout(Layout layout, double eps);
    ValidatedLayout(Layout layout, double eps) : layout_(std::move(layout)), eps_(eps) {}

    Layout layout_;
    double eps_ = 0.0;
};

struct LayoutValidation {
    std::optional<ValidatedLayout> layout;
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return layout.has_value(); }
};

/// Symmetric 1+1D layout with Q_i on the t = 0 slice at spacing `spacing`,
/// box regions of half-width `half_width`, stationary agents A_i/B_i through
/// Q_i and central agents A/B that start deep inside G.
Layout default_layout(int m, double spacing = 10.0, double half_width = 0.1);

} // namespace scot::geo
