#pragma once

#include "kepfam/geometry.hpp"
#include "kepfam/vec3.hpp"

namespace kepfam {

/// Reduced mass and coupling constant of the inverse-square field
/// F = -k r / |r|^3. The default is the normalized system mu = k = 1.
struct PhysParams {
    double mu = 1.0;
    double k = 1.0;

    /// Throws InvalidArgument unless both are finite and positive.
    void validate() const;
};

/// mu = mM/(m+M), k = GmM.
PhysParams params_from_masses(double G, double m, double M);

/// Position and momentum of the reduced body.
struct PhaseState {
    Vec3 r;
    Vec3 p;
};

/// Angular momentum, energy and Lenz vector of a state.
struct ConservedSet {
    Vec3 L;
    double H = 0.0;
    Vec3 K;
};

/// Ellipse elements read off a bound state. focus_origin is always 0.
struct OrbitGeometry {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double e = 0.0;
    Vec3 focus_origin;
    Vec3 focus_t;
    double period = 0.0;
    double fall_radius = 0.0;
    Vec3 plane_normal;
};

/// The second focus together with a flag for the p = 0 boundary, where the
/// state sits at rest on the fall circle and t coincides with s.
struct SecondFocus {
    Vec3 point;
    bool on_fall_circle = false;
};

// Degeneracy thresholds.
inline constexpr double kAngularMomentumZeroRel2 = 1e-24;  // |L|^2 < this * (|r||p|)^2
inline constexpr double kLenzZeroRel = 1e-12;              // |K| < this * k mu
inline constexpr double kMomentumZeroRel = 1e-12;          // |p| < this * sqrt(2 mu k / |r|)

bool angular_momentum_is_zero(const PhaseState& state);
bool lenz_is_zero(const Vec3& K, const PhysParams& params);
bool momentum_is_zero(const PhaseState& state, const PhysParams& params);

/// L = r x p, H = p^2/(2 mu) - k/|r|, K = p x L - k mu r/|r|.
/// Throws ErrorCode::Domain when r is the origin.
ConservedSet conserved_quantities(const PhaseState& state, const PhysParams& params);

/// Central projection of r onto the fall circle of radius -k/H.
/// Throws ErrorCode::UnboundOrbit when H >= 0.
Vec3 fall_point(const PhaseState& state, const PhysParams& params);

/// Reflects the fall point s in the tangent line through r along p.
///
/// The result equals K/(mu H); that identity is what the tests check, so it
/// is never used here. At p = 0 the tangent line is undefined and s itself is
/// returned with on_fall_circle set. Throws UnboundOrbit for H >= 0 and
/// DegenerateOrbit for L = 0 with p != 0.
SecondFocus geometric_second_focus(const PhaseState& state, const PhysParams& params);

/// Semi-axes, eccentricity, second focus and period of a bound orbit.
/// Throws UnboundOrbit for H >= 0 and DegenerateOrbit for L = 0.
OrbitGeometry orbit_geometry(const PhaseState& state, const PhysParams& params);

/// Directrix with respect to the origin focus: base L^2 K/K^2, normal K/|K|.
/// Defined for radial (L = 0) states too. Throws CircularOrbit when K = 0.
Line directrix(const PhaseState& state, const PhysParams& params);

/// Period of any bound orbit with semi-major axis a: 2 pi sqrt(mu a^3 / k).
double period_for_semi_major_axis(double a, const PhysParams& params);

} // namespace kepfam
