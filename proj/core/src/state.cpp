#include "kepfam/state.hpp"

#include <cmath>
#include <numbers>

#include "kepfam/error.hpp"

namespace kepfam {

void PhysParams::validate() const {
    if (!(std::isfinite(mu) && mu > 0.0) || !(std::isfinite(k) && k > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mu and k must be finite and positive");
    }
}

PhysParams params_from_masses(double G, double m, double M) {
    if (!(G > 0.0) || !(m > 0.0) || !(M > 0.0) || !std::isfinite(G) || !std::isfinite(m) ||
        !std::isfinite(M)) {
        throw Error(ErrorCode::InvalidArgument, "G, m and M must be finite and positive");
    }
    return PhysParams{m * M / (m + M), G * m * M};
}

bool angular_momentum_is_zero(const PhaseState& state) {
    const Vec3 L = cross(state.r, state.p);
    const double scale = norm(state.r) * norm(state.p);
    return norm2(L) < kAngularMomentumZeroRel2 * scale * scale || norm2(L) == 0.0;
}

bool lenz_is_zero(const Vec3& K, const PhysParams& params) {
    return norm(K) < kLenzZeroRel * params.k * params.mu;
}

bool momentum_is_zero(const PhaseState& state, const PhysParams& params) {
    const double scale = std::sqrt(2.0 * params.mu * params.k / norm(state.r));
    return norm(state.p) < kMomentumZeroRel * scale;
}

ConservedSet conserved_quantities(const PhaseState& state, const PhysParams& params) {
    params.validate();
    if (!is_finite(state.r) || !is_finite(state.p)) {
        throw Error(ErrorCode::InvalidArgument, "state has non-finite components");
    }
    const double r = norm(state.r);
    if (r == 0.0) {
        throw Error(ErrorCode::Domain, "position at the force centre");
    }
    ConservedSet c;
    c.L = cross(state.r, state.p);
    c.H = norm2(state.p) / (2.0 * params.mu) - params.k / r;
    c.K = cross(state.p, c.L) - (params.k * params.mu / r) * state.r;
    return c;
}

Vec3 fall_point(const PhaseState& state, const PhysParams& params) {
    const ConservedSet c = conserved_quantities(state, params);
    if (!(c.H < 0.0)) {
        throw Error(ErrorCode::UnboundOrbit, "fall circle requires H < 0");
    }
    return (-params.k / (norm(state.r) * c.H)) * state.r;
}

SecondFocus geometric_second_focus(const PhaseState& state, const PhysParams& params) {
    const ConservedSet c = conserved_quantities(state, params);
    if (!(c.H < 0.0)) {
        throw Error(ErrorCode::UnboundOrbit, "second focus requires H < 0");
    }
    const Vec3 s = (-params.k / (norm(state.r) * c.H)) * state.r;
    if (momentum_is_zero(state, params)) {
        return {s, true};
    }
    if (angular_momentum_is_zero(state)) {
        throw Error(ErrorCode::DegenerateOrbit, "collinear motion: angular momentum vanishes");
    }
    // Tangent line through r along p; its normal n = p x L lies in the plane.
    const Line tangent = Line::with_normal(state.r, cross(state.p, c.L));
    return {reflect_point_in_line(s, tangent), false};
}

double period_for_semi_major_axis(double a, const PhysParams& params) {
    return 2.0 * std::numbers::pi * std::sqrt(params.mu * a * a * a / params.k);
}

OrbitGeometry orbit_geometry(const PhaseState& state, const PhysParams& params) {
    const ConservedSet c = conserved_quantities(state, params);
    if (!(c.H < 0.0)) {
        throw Error(ErrorCode::UnboundOrbit, "orbit geometry requires H < 0");
    }
    if (angular_momentum_is_zero(state)) {
        throw Error(ErrorCode::DegenerateOrbit, "collinear motion: angular momentum vanishes");
    }
    const SecondFocus t = geometric_second_focus(state, params);
    const double L = norm(c.L);

    OrbitGeometry g;
    g.fall_radius = -params.k / c.H;
    g.a = 0.5 * g.fall_radius;
    g.b = std::sqrt(-L * L / (2.0 * params.mu * c.H));
    g.c = 0.5 * norm(t.point);
    g.e = norm(c.K) / (params.k * params.mu);
    g.focus_origin = Vec3{};
    g.focus_t = t.point;
    g.period = 2.0 * std::numbers::pi * params.mu * g.a * g.b / L;
    g.plane_normal = c.L / L;
    return g;
}

Line directrix(const PhaseState& state, const PhysParams& params) {
    const ConservedSet c = conserved_quantities(state, params);
    if (lenz_is_zero(c.K, params)) {
        throw Error(ErrorCode::CircularOrbit, "circular orbit (K = 0) has no directrix");
    }
    const double K2 = norm2(c.K);
    return Line::with_normal((norm2(c.L) / K2) * c.K, c.K);
}

} // namespace kepfam
