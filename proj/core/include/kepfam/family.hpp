#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kepfam/geometry.hpp"
#include "kepfam/state.hpp"

namespace kepfam {

/// Tolerance for treating psi as a radial (0 or pi) direction.
inline constexpr double kRadialPsiTolerance = 1e-9;
/// Relative band around r = a classified as the parabolic envelope.
inline constexpr double kParabolicBand = 1e-9;
/// Relative offsets r = a(1 -+ delta) used to fit the parabolic directrix.
inline constexpr double kParabolaFitOffset = 1e-6;

/// All Kepler ellipses of energy H through the fixed point r_fixed, lying in
/// the plane through the origin with normal plane_normal.
class FamilySpec {
public:
    /// Throws InvalidArgument unless H < 0, 0 < |r_fixed| < 2a and r_fixed is
    /// orthogonal to plane_normal within 1e-12 (relative to |r_fixed|).
    /// plane_normal need not be unit but must be nonzero.
    static FamilySpec make(const PhysParams& params, double H, const Vec3& r_fixed,
                           const Vec3& plane_normal);

    const PhysParams& params() const noexcept { return params_; }
    double H() const noexcept { return H_; }
    const Vec3& r_fixed() const noexcept { return r_fixed_; }
    const Vec3& plane_normal() const noexcept { return normal_; }

    double a() const noexcept { return a_; }
    double r() const noexcept { return r_; }
    double p_mag() const noexcept { return p_mag_; }
    Vec3 r_hat() const noexcept { return r_fixed_ / r_; }
    /// In-plane unit vector with (r_hat, w_hat, normal) right-handed.
    Vec3 w_hat() const noexcept { return cross(normal_, r_hat()); }
    /// Common period 2 pi sqrt(mu a^3 / k) of every member.
    double period() const noexcept;

private:
    FamilySpec() = default;

    PhysParams params_;
    double H_ = 0.0;
    Vec3 r_fixed_;
    Vec3 normal_;
    double a_ = 0.0;
    double r_ = 0.0;
    double p_mag_ = 0.0;
};

struct FamilyMember {
    double psi = 0.0;
    PhaseState state;
    ConservedSet conserved;
    OrbitGeometry geometry;
};

enum class HyperbolaBranch { None, NearFixedPoint, NearU };

struct MemberTangency {
    double psi = 0.0;
    double residual = 0.0;
    Vec3 touch_point;
    HyperbolaBranch branch = HyperbolaBranch::None;
};

struct EnvelopeReport {
    ConicSpec envelope;
    /// Second focus u = a r/(a - r); empty for the parabolic case, whose
    /// directrix is stored in envelope.directrix instead.
    std::optional<Vec3> u_focus;
    std::vector<MemberTangency> per_member;
    std::vector<std::string> notes;
    /// True when the envelope parameters come from the numerical fit.
    bool numerically_fitted = false;
};

/// Psi grid of n points offset from the radial directions: (i + 1/2) steps
/// for even n, (i + 1/4) steps for odd n.
std::vector<double> psi_grid(int n);

/// Member with momentum p_mag (cos psi r_hat + sin psi w_hat) at r_fixed.
/// Throws RadialDegenerate when psi is within 1e-9 of 0 or pi (mod 2 pi).
FamilyMember family_member(const FamilySpec& spec, double psi);

/// Second foci of the members on psi_grid(n).
std::vector<Vec3> focus_locus(const FamilySpec& spec, int n);

/// (eMin, eSup) = (|1 + 2Hr/k|, 1).
std::pair<double, double> eccentricity_extremes(const FamilySpec& spec);

/// Ellipse with foci 0 and r_fixed and major axis 4a - r.
ConicSpec bounding_envelope(const FamilySpec& spec);

/// Second focus u = a r_fixed/(a - r) of the directrix envelope.
/// Throws ParabolicEnvelope for r = a.
Vec3 envelope_u_focus(const FamilySpec& spec);

/// Closed form v = (a r_fixed - r t)/(a - r) of the mirror image of u in the
/// member's directrix. Throws ParabolicEnvelope for r = a and CircularOrbit
/// for a member with K = 0.
Vec3 reflected_focus_v(const FamilySpec& spec, const FamilyMember& member);

/// Envelope of the origin directrices of the members on psi_grid(n), with
/// the tangency residual of every member's directrix against it.
EnvelopeReport directrix_envelope(const FamilySpec& spec, int n);

/// Directrix of the elliptic envelope with respect to the focus r_fixed:
/// base -(2a - r) r_hat, normal r_hat. Throws OutOfRange for r >= a.
Line envelope_directrix_of_E(const FamilySpec& spec);

/// Largest distance from r_fixed after propagating n members analytically
/// by the common period.
double simultaneous_return_check(const FamilySpec& spec, int n);

} // namespace kepfam
