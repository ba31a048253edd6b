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
#include <random>

#include <gtest/gtest.h>

#include "scot/errors.hpp"
#include "scot/minkowski.hpp"

namespace scot::geo {
namespace {

Event ev(double t, double x) { return Event{t, {x}}; }

Event boost(const Event& e, double v) {
    const double g = 1.0 / std::sqrt(1.0 - v * v);
    Event out = e;
    out.t = g * (e.t - v * e.x[0]);
    out.x[0] = g * (e.x[0] - v * e.t);
    return out;
}

Event random_event(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    Event e{u(rng), {}};
    for (int k = 0; k < dim; ++k) {
        e.x.push_back(u(rng));
    }
    return e;
}

bool has_kind(const LayoutValidation& v, const std::string& kind) {
    for (const auto& viol : v.violations) {
        if (viol.kind == kind) {
            return true;
        }
    }
    return false;
}

TEST(Causal, Examples) {
    EXPECT_TRUE(causally_precedes(ev(0, 0), ev(1, 0)));
    EXPECT_TRUE(causally_precedes(ev(0, 0), ev(0, 0)));
    EXPECT_FALSE(causally_precedes(ev(0, 0), ev(1, 2)));

    EXPECT_TRUE(spacelike_separated(ev(0, 0), ev(0, 1)));
    EXPECT_FALSE(spacelike_separated(ev(0, 0), ev(2, 1)));
    EXPECT_TRUE(spacelike_separated(ev(0, 0), ev(0.9, 1)));

    // light cone boundary is causal
    EXPECT_TRUE(causally_precedes(ev(0, 0), ev(1, 1)));
    EXPECT_FALSE(spacelike_separated(ev(0, 0), ev(1, -1)));
}

TEST(Causal, DimensionMismatchThrows) {
    EXPECT_THROW((void)causally_precedes(ev(0, 0), Event{1, {0, 0}}), InputError);
    EXPECT_THROW((void)spacelike_separated(ev(0, 0), Event{1, {0, 0}}), InputError);
}

TEST(Causal, HigherDimensions) {
    EXPECT_TRUE(causally_precedes(Event{0, {0, 0, 0}}, Event{5, {3, 4, 0}}));
    EXPECT_FALSE(causally_precedes(Event{0, {0, 0, 0}}, Event{4.9, {3, 4, 0}}));
}

TEST(Causal, Epsilon) {
    EXPECT_FALSE(causally_precedes(ev(0, 0), ev(1, 1.0 + 1e-6)));
    EXPECT_TRUE(causally_precedes(ev(0, 0), ev(1, 1.0 + 1e-6), 1e-5));
}

TEST(RegionG, Examples) {
    const std::vector<Event> q2{ev(0, -1), ev(0, 1)};
    EXPECT_TRUE(in_region_G(ev(-10, 0), q2));
    EXPECT_FALSE(in_region_G(ev(0, -1), q2));
    const std::vector<Event> q1{ev(0, 0)};
    EXPECT_TRUE(in_region_G(ev(-1, 0), q1));
    EXPECT_THROW((void)in_region_G(ev(-1, 0), std::vector<Event>{}), InputError);
}

TEST(CausalProperty, Antisymmetry) {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int k = 0; k < 10000; ++k) {
        const Event a = random_event(rng, 1 + k % 3);
        Event b = random_event(rng, a.dim());
        if (k % 4 == 0) {
            b = a;
        }
        if (causally_precedes(a, b) && causally_precedes(b, a)) {
            EXPECT_EQ(a, b);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(CausalProperty, Transitivity) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 10000; ++k) {
        const Event a = random_event(rng, 1);
        // bias towards chains so the premise holds often
        const Event b = ev(a.t + 3.0 * u(rng), a.x[0] + 3.0 * (u(rng) - 0.5));
        const Event c = ev(b.t + 3.0 * u(rng), b.x[0] + 3.0 * (u(rng) - 0.5));
        if (causally_precedes(a, b) && causally_precedes(b, c)) {
            ASSERT_TRUE(causally_precedes(a, c)) << k;
        }
    }
}

TEST(CausalProperty, Trichotomy) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 10000; ++k) {
        const Event a = random_event(rng, 1 + k % 3);
        const Event b = random_event(rng, a.dim());
        if (a == b) {
            continue;
        }
        const int count = int(causally_precedes(a, b)) + int(causally_precedes(b, a)) +
                          int(spacelike_separated(a, b));
        ASSERT_EQ(count, 1) << k;
    }
}

TEST(CausalProperty, BoostInvariance) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> uv(-0.9, 0.9);
    int used = 0;
    for (int k = 0; k < 1000; ++k) {
        const Event a = random_event(rng, 1);
        const Event b = random_event(rng, 1);
        const double interval = (b.t - a.t) * (b.t - a.t) - (b.x[0] - a.x[0]) * (b.x[0] - a.x[0]);
        if (std::abs(interval) < 1e-9) {
            continue;
        }
        ++used;
        const double v = uv(rng);
        const Event ba = boost(a, v);
        const Event bb = boost(b, v);
        ASSERT_EQ(causally_precedes(a, b), causally_precedes(ba, bb)) << k;
        ASSERT_EQ(causally_precedes(b, a), causally_precedes(bb, ba)) << k;
        ASSERT_EQ(spacelike_separated(a, b), spacelike_separated(ba, bb)) << k;
    }
    EXPECT_GT(used, 990);
}

TEST(Worldline, AtTimeAndEarliest) {
    const Worldline wl({ev(0, 0), ev(2, 1), ev(4, 1)});
    EXPECT_TRUE(wl.is_timelike());
    const auto mid = wl.at_time(1.0);
    ASSERT_TRUE(mid.has_value());
    EXPECT_NEAR(mid->x[0], 0.5, 1e-12);
    EXPECT_FALSE(wl.at_time(5.0).has_value());

    // earliest point in the future of (0, 3): needs t >= 3 - |x|... x = 1 at t >= 2, so t = 2
    const std::vector<Event> after{ev(0, 3)};
    const auto e = wl.earliest_after(after, 0.0);
    ASSERT_TRUE(e.has_value());
    EXPECT_TRUE(causally_precedes(after[0], *e, 1e-9));
    EXPECT_NEAR(e->t, 2.0, 1e-9);
    EXPECT_TRUE(wl.passes_through(*e));

    const std::vector<Event> too_late{ev(10, 1)};
    EXPECT_FALSE(wl.earliest_after(too_late, 0.0).has_value());
}

TEST(Worldline, Superluminal) {
    EXPECT_FALSE(Worldline({ev(0, 0), ev(1, 2)}).is_timelike());
}

TEST(Layout, DefaultIsValid) {
    for (int m : {2, 3, 4}) {
        const auto v = validate_layout(default_layout(m));
        EXPECT_TRUE(v.ok()) << m;
        EXPECT_TRUE(v.violations.empty());
    }
}

TEST(Layout, TwoBoxesValid) {
    Layout layout;
    layout.dim = 1;
    for (double x : {-5.0, 5.0}) {
        layout.regions.push_back(Region::from_box({ev(-0.1, x - 0.1), ev(0.1, x + 0.1)}));
        layout.q_points.push_back(ev(0, x));
    }
    EXPECT_TRUE(validate_layout(layout).ok());
}

TEST(Layout, IdenticalRegionsInvalid) {
    Layout layout = default_layout(2);
    layout.regions[1] = layout.regions[0];
    layout.q_points[1] = layout.q_points[0];
    const auto v = validate_layout(layout);
    EXPECT_FALSE(v.ok());
    EXPECT_TRUE(has_kind(v, "spacelike"));
}

TEST(Layout, QPointOutsideRegion) {
    Layout layout = default_layout(2);
    layout.q_points[0] = ev(0, 2.0);
    const auto v = validate_layout(layout);
    EXPECT_FALSE(v.ok());
    EXPECT_TRUE(has_kind(v, "membership"));
}

TEST(Layout, TooFewRegionsThrows) {
    Layout layout = default_layout(2);
    layout.regions.pop_back();
    layout.q_points.pop_back();
    EXPECT_THROW((void)validate_layout(layout), InputError);
}

TEST(Layout, AliasResolves) {
    Layout layout = default_layout(2);
    layout.aliases["A0x"] = "A0";
    const auto v = validate_layout(layout);
    ASSERT_TRUE(v.ok());
    EXPECT_EQ(v.layout->worldline("A0x").vertices(), v.layout->worldline("A0").vertices());
    EXPECT_THROW((void)v.layout->worldline("nobody"), InputError);
}

} // namespace
} // namespace scot::geo
