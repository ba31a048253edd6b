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

#include "scot/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "scot/errors.hpp"

namespace scot::geo {

namespace {

void require_same_dim(const Event& a, const Event& b) {
    if (a.dim() != b.dim()) {
        throw InputError("event dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
    }
}

// Monotone along a timelike segment: time elapsed since `e` minus the
// spatial distance to it.
double cone_margin(const Event& e, const Event& p, double eps) {
    return (p.t - e.t) - spatial_distance(e, p) + eps;
}

Event lerp(const Event& a, const Event& b, double t) {
    Event out;
    out.t = t;
    out.x.resize(a.x.size());
    const double span = b.t - a.t;
    const double u = span > 0.0 ? (t - a.t) / span : 0.0;
    for (std::size_t k = 0; k < a.x.size(); ++k) {
        out.x[k] = a.x[k] + u * (b.x[k] - a.x[k]);
    }
    return out;
}

std::string describe(const Event& e) {
    std::ostringstream os;
    os << "(" << e.t;
    for (double v : e.x) {
        os << ", " << v;
    }
    os << ")";
    return os.str();
}

} // namespace

double spatial_distance(const Event& a, const Event& b) {
    require_same_dim(a, b);
    double sum = 0.0;
    for (std::size_t k = 0; k < a.x.size(); ++k) {
        const double d = b.x[k] - a.x[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

bool causally_precedes(const Event& a, const Event& b, double eps) {
    return b.t - a.t >= spatial_distance(a, b) - eps;
}

bool spacelike_separated(const Event& a, const Event& b, double eps) {
    return !causally_precedes(a, b, eps) && !causally_precedes(b, a, eps);
}

bool in_region_G(const Event& e, std::span<const Event> q_points, double eps) {
    if (q_points.empty()) {
        throw InputError("in_region_G: empty list of designated points");
    }
    return std::all_of(q_points.begin(), q_points.end(),
                       [&](const Event& q) { return causally_precedes(e, q, eps); });
}

// ---------------------------------------------------------------------------
// Region

Region::Region(std::vector<Event> events, std::optional<Box> box)
    : events_(std::move(events)), box_(std::move(box)) {
    if (events_.empty()) {
        throw InputError("region must contain at least one event");
    }
    const int d = events_.front().dim();
    for (const auto& e : events_) {
        if (e.dim() != d) {
            throw InputError("region events must share spatial dimension");
        }
    }
    if (box_ && (box_->lo.dim() != d || box_->hi.dim() != d)) {
        throw InputError("region box dimension mismatch");
    }
}

Region Region::from_box(const Box& box, std::vector<Event> interior) {
    if (box.lo.dim() != box.hi.dim() || box.lo.dim() < 1 || box.lo.dim() > 3) {
        throw InputError("box corners must share a spatial dimension in [1, 3]");
    }
    if (box.lo.t > box.hi.t) {
        throw InputError("box lo.t exceeds hi.t");
    }
    for (int k = 0; k < box.lo.dim(); ++k) {
        if (box.lo.x[k] > box.hi.x[k]) {
            throw InputError("box lo exceeds hi in a spatial coordinate");
        }
    }
    const int d = box.lo.dim();
    const int corners = 1 << (d + 1);
    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(corners) + interior.size());
    for (int mask = 0; mask < corners; ++mask) {
        Event e;
        e.t = (mask & 1) ? box.hi.t : box.lo.t;
        e.x.resize(d);
        for (int k = 0; k < d; ++k) {
            e.x[k] = (mask >> (k + 1) & 1) ? box.hi.x[k] : box.lo.x[k];
        }
        events.push_back(std::move(e));
    }
    for (auto& e : interior) {
        events.push_back(std::move(e));
    }
    return Region(std::move(events), box);
}

bool Region::has_member(const Event& e, double tol) const {
    return std::any_of(events_.begin(), events_.end(), [&](const Event& m) {
        return m.dim() == e.dim() && std::abs(m.t - e.t) <= tol && spatial_distance(m, e) <= tol;
    });
}

bool Region::contains(const Event& e, double tol) const {
    if (e.dim() != dim()) {
        return false;
    }
    if (box_) {
        bool inside = e.t >= box_->lo.t - tol && e.t <= box_->hi.t + tol;
        for (int k = 0; inside && k < e.dim(); ++k) {
            inside = e.x[k] >= box_->lo.x[k] - tol && e.x[k] <= box_->hi.x[k] + tol;
        }
        if (inside) {
            return true;
        }
    }
    return has_member(e, tol);
}

// ---------------------------------------------------------------------------
// Worldline

Worldline::Worldline(std::vector<Event> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) {
        throw InputError("worldline needs at least one vertex");
    }
    const int d = vertices_.front().dim();
    for (const auto& v : vertices_) {
        if (v.dim() != d) {
            throw InputError("worldline vertices must share spatial dimension");
        }
    }
}

std::optional<Event> Worldline::at_time(double t) const {
    if (vertices_.empty() || t < start_time() || t > end_time()) {
        return std::nullopt;
    }
    if (vertices_.size() == 1) {
        return vertices_.front();
    }
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        if (t <= vertices_[k + 1].t) {
            return lerp(vertices_[k], vertices_[k + 1], t);
        }
    }
    return vertices_.back();
}

std::optional<Event> Worldline::earliest_after(std::span<const Event> after, double t_min,
                                               double eps) const {
    if (vertices_.empty()) {
        return std::nullopt;
    }
    for (const auto& e : after) {
        if (e.dim() != vertices_.front().dim()) {
            throw InputError("earliest_after: dimension mismatch");
        }
    }
    const double lo_bound = std::max(t_min, start_time());
    if (lo_bound > end_time()) {
        return std::nullopt;
    }
    auto satisfied = [&](const Event& p) {
        return std::all_of(after.begin(), after.end(),
                           [&](const Event& e) { return cone_margin(e, p, eps) >= 0.0; });
    };
    if (vertices_.size() == 1) {
        const Event& v = vertices_.front();
        return satisfied(v) ? std::optional<Event>(v) : std::nullopt;
    }
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        const Event& a = vertices_[k];
        const Event& b = vertices_[k + 1];
        if (b.t < lo_bound) {
            continue;
        }
        const double t0 = std::max(a.t, lo_bound);
        if (!satisfied(*at_time(b.t))) {
            continue;
        }
        double best = t0;
        for (const auto& e : after) {
            if (cone_margin(e, lerp(a, b, t0), eps) >= 0.0) {
                continue;
            }
            double lo = t0;
            double hi = b.t;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) {
                    break;
                }
                if (cone_margin(e, lerp(a, b, mid), eps) >= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            best = std::max(best, hi);
        }
        // The per-constraint roots are each feasible; their max satisfies all.
        const Event p = lerp(a, b, best);
        if (satisfied(p)) {
            return p;
        }
        return lerp(a, b, b.t);
    }
    return std::nullopt;
}

std::optional<Event> Worldline::earliest_in(const Region& region, double t_min) const {
    if (vertices_.empty()) {
        return std::nullopt;
    }
    if (!region.box()) {
        std::optional<Event> best;
        for (const auto& e : region.events()) {
            if (e.t >= t_min && passes_through(e) && (!best || e.t < best->t)) {
                best = e;
            }
        }
        return best;
    }
    const Box& box = *region.box();
    const double lo_bound = std::max(t_min, start_time());
    auto clip = [&](const Event& a, const Event& b) -> std::optional<double> {
        double lo = std::max({a.t, lo_bound, box.lo.t});
        double hi = std::min(b.t, box.hi.t);
        const double span = b.t - a.t;
        for (int k = 0; k < a.dim(); ++k) {
            const double slope = span > 0.0 ? (b.x[k] - a.x[k]) / span : 0.0;
            const double x0 = a.x[k] - slope * a.t;
            if (slope == 0.0) {
                if (x0 < box.lo.x[k] || x0 > box.hi.x[k]) {
                    return std::nullopt;
                }
                continue;
            }
            double ta = (box.lo.x[k] - x0) / slope;
            double tb = (box.hi.x[k] - x0) / slope;
            if (ta > tb) {
                std::swap(ta, tb);
            }
            lo = std::max(lo, ta);
            hi = std::min(hi, tb);
        }
        if (lo > hi) {
            return std::nullopt;
        }
        return lo;
    };
    if (vertices_.size() == 1) {
        const Event& v = vertices_.front();
        return (v.t >= t_min && region.contains(v)) ? std::optional<Event>(v) : std::nullopt;
    }
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        if (vertices_[k + 1].t < lo_bound) {
            continue;
        }
        if (auto t = clip(vertices_[k], vertices_[k + 1])) {
            return lerp(vertices_[k], vertices_[k + 1], *t);
        }
    }
    return std::nullopt;
}

bool Worldline::passes_through(const Event& e, double tol) const {
    if (vertices_.empty() || e.dim() != vertices_.front().dim()) {
        return false;
    }
    const auto p = at_time(std::clamp(e.t, start_time(), end_time()));
    return p && std::abs(p->t - e.t) <= tol && spatial_distance(*p, e) <= tol;
}

bool Worldline::is_timelike(double eps) const {
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        if (!(vertices_[k + 1].t > vertices_[k].t) ||
            !causally_precedes(vertices_[k], vertices_[k + 1], eps)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Layout

const Worldline& ValidatedLayout::worldline(const std::string& agent) const {
    std::string name = agent;
    for (int hop = 0; hop < 8; ++hop) {
        if (auto it = layout_.aliases.find(name); it != layout_.aliases.end()) {
            name = it->second;
            continue;
        }
        break;
    }
    auto it = layout_.worldlines.find(name);
    if (it == layout_.worldlines.end()) {
        throw InputError("layout has no worldline for agent '" + agent + "'");
    }
    return it->second;
}

bool ValidatedLayout::has_agent(const std::string& agent) const {
    try {
        (void)worldline(agent);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

LayoutValidation validate_layout(Layout layout, double eps) {
    const int m = static_cast<int>(layout.regions.size());
    if (m < 2) {
        throw InputError("layout needs at least two output regions");
    }
    if (layout.dim < 1 || layout.dim > 3) {
        throw InputError("spatial dimension must be 1, 2 or 3");
    }
    std::vector<Violation> violations;
    auto dim_violation = [&](const std::string& what, std::vector<int> idx) {
        violations.push_back({"dimension", what + " has spatial dimension != " +
                                               std::to_string(layout.dim),
                              std::move(idx)});
    };
    for (int i = 0; i < m; ++i) {
        if (layout.regions[i].dim() != layout.dim) {
            dim_violation("region " + std::to_string(i), {i});
        }
    }
    if (static_cast<int>(layout.q_points.size()) != m) {
        violations.push_back({"q_points", "expected " + std::to_string(m) + " designated points, got " +
                                              std::to_string(layout.q_points.size()),
                              {}});
    }
    for (int i = 0; i < static_cast<int>(layout.q_points.size()); ++i) {
        const Event& q = layout.q_points[i];
        if (q.dim() != layout.dim) {
            dim_violation("q_point " + std::to_string(i), {i});
            continue;
        }
        if (i < m && !layout.regions[i].contains(q)) {
            violations.push_back({"membership",
                                  "q_point " + std::to_string(i) + " " + describe(q) +
                                      " is not a member of region " + std::to_string(i),
                                  {i}});
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int k = i + 1; k < m; ++k) {
            const auto& ri = layout.regions[i];
            const auto& rk = layout.regions[k];
            if (ri.dim() != rk.dim()) {
                continue;
            }
            bool separated = true;
            for (const auto& a : ri.events()) {
                for (const auto& b : rk.events()) {
                    if (!spacelike_separated(a, b, eps)) {
                        separated = false;
                        break;
                    }
                }
                if (!separated) {
                    break;
                }
            }
            if (!separated) {
                violations.push_back({"spacelike",
                                      "regions " + std::to_string(i) + "," + std::to_string(k) +
                                          " not spacelike",
                                      {i, k}});
            }
        }
    }
    for (const auto& [agent, wl] : layout.worldlines) {
        if (wl.empty()) {
            violations.push_back({"worldline", "agent " + agent + " has an empty worldline", {}});
            continue;
        }
        if (wl.vertices().front().dim() != layout.dim) {
            dim_violation("worldline of " + agent, {});
            continue;
        }
        if (!wl.is_timelike(eps)) {
            violations.push_back({"worldline", "worldline of " + agent + " is not timelike", {}});
        }
    }
    for (const auto& [agent, target] : layout.aliases) {
        if (!layout.worldlines.contains(target)) {
            violations.push_back(
                {"alias", "agent " + agent + " aliases unknown agent " + target, {}});
        }
    }
    LayoutValidation out;
    out.violations = std::move(violations);
    if (out.violations.empty()) {
        out.layout = ValidatedLayout(std::move(layout), eps);
    }
    return out;
}

Layout default_layout(int m, double spacing, double half_width) {
    if (m < 2) {
        throw InputError("default_layout: m must be at least 2");
    }
    if (!(spacing > 4.0 * half_width) || half_width <= 0.0) {
        throw InputError("default_layout: spacing must exceed four box half-widths");
    }
    Layout layout;
    layout.dim = 1;
    const double extent = 0.5 * (m - 1) * spacing;
    const double t_start = -(extent + spacing);
    const double t_end = 1.0 + half_width;
    for (int i = 0; i < m; ++i) {
        const double xi = -extent + i * spacing;
        Event q{0.0, {xi}};
        Box box{{-half_width, {xi - half_width}}, {half_width, {xi + half_width}}};
        layout.regions.push_back(Region::from_box(box, {q}));
        layout.q_points.push_back(q);
        Worldline wl({Event{t_start, {xi}}, Event{t_end, {xi}}});
        layout.worldlines.emplace("A" + std::to_string(i), wl);
        layout.worldlines.emplace("B" + std::to_string(i), wl);
    }
    Worldline central({Event{t_start, {0.0}}, Event{t_end, {0.0}}});
    layout.worldlines.emplace("A", central);
    layout.worldlines.emplace("B", central);
    return layout;
}

} // namespace scot::geo
