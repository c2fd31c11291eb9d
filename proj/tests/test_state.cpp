#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "kepfam/error.hpp"
#include "kepfam/propagator.hpp"
#include "kepfam/sampling.hpp"
#include "kepfam/state.hpp"
#include "test_support.hpp"

using namespace kepfam;
namespace s1 = kepfam::test::s1;

namespace {

const PhysParams kUnit{};

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no kepfam::Error thrown";
    return ErrorCode::Io;
}

} // namespace

TEST(ParamsFromMasses, Examples) {
    const PhysParams eq = params_from_masses(1, 1, 1);
    EXPECT_DOUBLE_EQ(eq.mu, 0.5);
    EXPECT_DOUBLE_EQ(eq.k, 1.0);

    const PhysParams light = params_from_masses(1, 1e-9, 1);
    EXPECT_NEAR(light.mu, 1e-9, 1e-17);
    EXPECT_DOUBLE_EQ(light.k, 1e-9);

    const PhysParams p = params_from_masses(2, 3, 6);
    EXPECT_DOUBLE_EQ(p.mu, 2.0);
    EXPECT_DOUBLE_EQ(p.k, 36.0);

    EXPECT_EQ(code_of([] { params_from_masses(0, 1, 1); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { params_from_masses(1, -1, 1); }), ErrorCode::InvalidArgument);
}

TEST(ConservedQuantities, ScenarioS1) {
    const ConservedSet c = conserved_quantities(test::scenario_s1(), kUnit);
    EXPECT_NEAR(c.L.z, 1.2, 1e-15);
    EXPECT_EQ(c.L.x, 0.0);
    EXPECT_NEAR(c.H, s1::H, 1e-15);
    EXPECT_NEAR(c.K.x, s1::K, 1e-15);
    EXPECT_EQ(c.K.y, 0.0);
}

TEST(ConservedQuantities, CircularAndRadial) {
    const ConservedSet circ = conserved_quantities(test::circular_setup(), kUnit);
    EXPECT_DOUBLE_EQ(circ.H, -0.5);
    EXPECT_EQ(norm(circ.K), 0.0);

    const ConservedSet radial = conserved_quantities({{1, 0, 0}, {0.5, 0, 0}}, kUnit);
    EXPECT_EQ(norm(radial.L), 0.0);
    EXPECT_DOUBLE_EQ(radial.H, -0.875);
    EXPECT_EQ(radial.K, (Vec3{-1, 0, 0}));
}

TEST(ConservedQuantities, OriginIsDomainError) {
    EXPECT_EQ(code_of([] { conserved_quantities({{0, 0, 0}, {1, 0, 0}}, kUnit); }),
              ErrorCode::Domain);
}

TEST(ConservedQuantities, InvariantsOnRandomStates) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const RandomBoundState rs = random_bound_state(rng, 0.95);
        const ConservedSet c = conserved_quantities(rs.state, rs.params);
        const double mu = rs.params.mu;
        const double k = rs.params.k;
        ASSERT_LE(std::abs(dot(c.L, c.K)), 1e-12 * std::max(norm(c.L) * norm(c.K), 1e-300) + 1e-15);
        const double rhs = 2 * mu * c.H * norm2(c.L) + k * k * mu * mu;
        ASSERT_LE(std::abs(norm2(c.K) - rhs), 1e-12 * k * k * mu * mu);
    }
}

TEST(FallPoint, Examples) {
    const Vec3 s = fall_point(test::scenario_s1(), kUnit);
    EXPECT_NEAR(s.x, s1::s, 1e-14);
    EXPECT_EQ(s.y, 0.0);

    EXPECT_NEAR(fall_point(test::circular_setup(), kUnit).x, 2.0, 1e-15);

    // At rest on the fall circle: |r| = -k/H, so s = r.
    const PhaseState rest{{0, 3, 0}, {0, 0, 0}};
    const Vec3 s_rest = fall_point(rest, kUnit);
    EXPECT_NEAR(distance(s_rest, rest.r), 0.0, 1e-15);

    EXPECT_EQ(code_of([] { fall_point({{1, 0, 0}, {0, 2, 0}}, kUnit); }), ErrorCode::UnboundOrbit);
    EXPECT_EQ(code_of([] { fall_point({{1, 0, 0}, {0, std::sqrt(2.0), 0}}, kUnit); }),
              ErrorCode::UnboundOrbit);
}

TEST(SecondFocus, ScenarioS1AndCircle) {
    const SecondFocus t = geometric_second_focus(test::scenario_s1(), kUnit);
    EXPECT_FALSE(t.on_fall_circle);
    EXPECT_NEAR(t.point.x, s1::t, 1e-14);
    EXPECT_NEAR(t.point.y, 0.0, 1e-15);

    const SecondFocus tc = geometric_second_focus(test::circular_setup(), kUnit);
    EXPECT_LE(norm(tc.point), 1e-15);
}

TEST(SecondFocus, BoundaryAndDegenerate) {
    const PhaseState rest{{2, 0, 0}, {0, 0, 0}};
    const SecondFocus t = geometric_second_focus(rest, kUnit);
    EXPECT_TRUE(t.on_fall_circle);
    EXPECT_NEAR(distance(t.point, rest.r), 0.0, 1e-15);

    EXPECT_EQ(code_of([] { geometric_second_focus({{1, 0, 0}, {0.5, 0, 0}}, kUnit); }),
              ErrorCode::DegenerateOrbit);
}

TEST(SecondFocus, ReflectionEqualsLenzOverMuHProperty) {
    std::mt19937_64 rng(31415);
    for (int i = 0; i < 1000; ++i) {
        const RandomBoundState rs = random_bound_state(rng, 0.95);
        const ConservedSet c = conserved_quantities(rs.state, rs.params);
        const Vec3 lenz_route = c.K / (rs.params.mu * c.H);
        const Vec3 reflection = geometric_second_focus(rs.state, rs.params).point;
        const double fall_radius = -rs.params.k / c.H;
        // Relative to the orbit's length scale, see README.
        ASSERT_LE(norm(reflection - lenz_route), 1e-12 * fall_radius) << "state " << i;
        // Focal sum for the state itself.
        ASSERT_NEAR(norm(reflection - rs.state.r) + norm(rs.state.r), fall_radius,
                    1e-12 * fall_radius);
    }
}

TEST(OrbitGeometry, ScenarioS1) {
    const OrbitGeometry g = orbit_geometry(test::scenario_s1(), kUnit);
    EXPECT_NEAR(g.a, s1::a, 1e-14);
    EXPECT_NEAR(g.b, s1::b, 1e-14);
    EXPECT_NEAR(g.c, s1::c, 1e-14);
    EXPECT_NEAR(g.e, s1::e, 1e-14);
    EXPECT_NEAR(g.period, s1::T, 1e-12);
    EXPECT_NEAR(g.fall_radius, 2 * s1::a, 1e-14);
    EXPECT_EQ(g.plane_normal, (Vec3{0, 0, 1}));
    EXPECT_NEAR(g.period, period_for_semi_major_axis(g.a, kUnit), 1e-12);
    EXPECT_NEAR(test::rel_diff(g.a * g.a * g.a / (g.period * g.period),
                               1.0 / (4 * std::numbers::pi * std::numbers::pi)),
                0.0, 1e-12);
}

TEST(OrbitGeometry, Circular) {
    const OrbitGeometry g = orbit_geometry(test::circular_setup(), kUnit);
    EXPECT_DOUBLE_EQ(g.a, 1.0);
    EXPECT_DOUBLE_EQ(g.b, 1.0);
    EXPECT_LE(g.c, 1e-15);
    EXPECT_LE(g.e, 1e-15);
    EXPECT_NEAR(g.period, 2 * std::numbers::pi, 1e-14);
}

TEST(OrbitGeometry, Errors) {
    EXPECT_EQ(code_of([] { orbit_geometry({{1, 0, 0}, {0, 2, 0}}, kUnit); }), ErrorCode::UnboundOrbit);
    EXPECT_EQ(code_of([] { orbit_geometry({{1, 0, 0}, {0.5, 0, 0}}, kUnit); }),
              ErrorCode::DegenerateOrbit);
}

TEST(OrbitGeometry, ConsistencyProperty) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const RandomBoundState rs = random_bound_state(rng, 0.95);
        const OrbitGeometry g = orbit_geometry(rs.state, rs.params);
        const ConservedSet c = conserved_quantities(rs.state, rs.params);
        const double mu = rs.params.mu;
        const double k = rs.params.k;
        ASSERT_NEAR(g.a, rs.a, 1e-12 * rs.a);
        ASSERT_NEAR(g.e, rs.e, 1e-12);
        ASSERT_NEAR(g.a * g.a, g.b * g.b + g.c * g.c, 1e-12 * g.a * g.a);
        // e = c/a = |K|/(k mu) = |t| (-H)/k
        ASSERT_NEAR(g.c / g.a, g.e, 1e-12);
        ASSERT_NEAR(norm(g.focus_t) * (-c.H) / k, g.e, 1e-12);
        ASSERT_NEAR(norm(g.focus_t), 2 * g.c, 1e-12 * g.a);
        const double harmonic = g.a * g.a * g.a / (g.period * g.period);
        ASSERT_LE(test::rel_diff(harmonic, k / (4 * std::numbers::pi * std::numbers::pi * mu)),
                  1e-12);
    }
}

TEST(OrbitGeometry, FocusSumOnAnalyticOrbit) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const RandomBoundState rs = random_bound_state(rng, 0.9);
        const OrbitGeometry g = orbit_geometry(rs.state, rs.params);
        for (int j = 0; j < 40; ++j) {
            const PhaseState q = propagate_analytic(rs.state, rs.params, g.period * j / 40.0);
            ASSERT_NEAR(norm(q.r) + distance(q.r, g.focus_t), g.fall_radius, 1e-10);
        }
    }
}

TEST(Directrix, ScenarioS1) {
    const Line d = directrix(test::scenario_s1(), kUnit);
    EXPECT_NEAR(d.base.x, s1::directrix_base, 1e-14);
    EXPECT_EQ(d.normal, (Vec3{1, 0, 0}));
    EXPECT_NEAR(point_line_distance({1, 0, 0}, d), s1::r_over_e, 1e-12);
}

TEST(Directrix, RadialFallAndCircularError) {
    const Line d = directrix({{1, 0, 0}, {0.5, 0, 0}}, kUnit);
    EXPECT_EQ(norm(d.base), 0.0);
    EXPECT_EQ(d.normal, (Vec3{-1, 0, 0}));
    EXPECT_EQ(code_of([] { directrix(test::circular_setup(), kUnit); }), ErrorCode::CircularOrbit);
}

TEST(Directrix, DistanceIsROverEProperty) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const RandomBoundState rs = random_bound_state(rng, 0.95);
        if (rs.e < 1e-3) {
            continue;
        }
        const Line d = directrix(rs.state, rs.params);
        const double e = orbit_geometry(rs.state, rs.params).e;
        const double expected = norm(rs.state.r) / e;
        ASSERT_NEAR(point_line_distance(rs.state.r, d), expected, 1e-12 * expected);
    }
}
