#include "kepfam/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kepfam/error.hpp"
#include "kepfam/propagator.hpp"

namespace kepfam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class EnvelopeCase { Ellipse, Parabola, Hyperbola };

EnvelopeCase classify(double r, double a) {
    if (std::abs(r - a) <= kParabolicBand * a) {
        return EnvelopeCase::Parabola;
    }
    return r < a ? EnvelopeCase::Ellipse : EnvelopeCase::Hyperbola;
}

// Envelope conic for a fixed point at distance r != a along r_hat.
ConicSpec central_envelope(double a, double r, const Vec3& r_hat, const Vec3& normal) {
    const Vec3 r_fixed = r * r_hat;
    const Vec3 u = (a / (a - r)) * r_fixed;
    const double axis = std::abs((2.0 * a - r) * r / (a - r));
    return r < a ? make_ellipse(r_fixed, u, axis, normal) : make_hyperbola(r_fixed, u, axis, normal);
}

void require_samples(int n, int minimum) {
    if (n < minimum) {
        std::ostringstream os;
        os << "need at least " << minimum << " samples (got " << n << ")";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

} // namespace

FamilySpec FamilySpec::make(const PhysParams& params, double H, const Vec3& r_fixed,
                            const Vec3& plane_normal) {
    params.validate();
    if (!(H < 0.0) || !std::isfinite(H)) {
        throw Error(ErrorCode::UnboundOrbit, "family energy must satisfy H < 0");
    }
    if (!is_finite(r_fixed) || !is_finite(plane_normal) || norm(plane_normal) == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "fixed point and plane normal must be finite, normal nonzero");
    }
    FamilySpec spec;
    spec.params_ = params;
    spec.H_ = H;
    spec.r_fixed_ = r_fixed;
    spec.normal_ = normalized(plane_normal);
    spec.a_ = -params.k / (2.0 * H);
    spec.r_ = norm(r_fixed);

    if (!(spec.r_ > 0.0) || !(spec.r_ < 2.0 * spec.a_)) {
        std::ostringstream os;
        os.precision(17);
        os << "fixed point must satisfy 0 < r < 2a = " << 2.0 * spec.a_ << " (got r = " << spec.r_
           << ")";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    if (std::abs(dot(r_fixed, spec.normal_)) > 1e-12 * spec.r_) {
        throw Error(ErrorCode::InvalidArgument, "fixed point does not lie in the family plane");
    }
    spec.p_mag_ = std::sqrt(2.0 * params.mu * (H + params.k / spec.r_));
    return spec;
}

double FamilySpec::period() const noexcept {
    return period_for_semi_major_axis(a_, params_);
}

std::vector<double> psi_grid(int n) {
    require_samples(n, 1);
    const double offset = n % 2 == 0 ? 0.5 : 0.25;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid.push_back(kTwoPi * (i + offset) / n);
    }
    return grid;
}

FamilyMember family_member(const FamilySpec& spec, double psi) {
    if (!std::isfinite(psi)) {
        throw Error(ErrorCode::InvalidArgument, "psi must be finite");
    }
    const double wrapped = psi - kTwoPi * std::floor(psi / kTwoPi);
    const double from_radial = std::min({wrapped, std::abs(wrapped - std::numbers::pi),
                                         kTwoPi - wrapped});
    if (from_radial <= kRadialPsiTolerance) {
        throw Error(ErrorCode::RadialDegenerate,
                    "psi along the radial direction gives zero angular momentum");
    }
    FamilyMember m;
    m.psi = psi;
    m.state.r = spec.r_fixed();
    m.state.p = spec.p_mag() * (std::cos(psi) * spec.r_hat() + std::sin(psi) * spec.w_hat());
    m.conserved = conserved_quantities(m.state, spec.params());
    m.geometry = orbit_geometry(m.state, spec.params());
    return m;
}

std::vector<Vec3> focus_locus(const FamilySpec& spec, int n) {
    require_samples(n, 3);
    std::vector<Vec3> foci;
    foci.reserve(static_cast<std::size_t>(n));
    for (double psi : psi_grid(n)) {
        foci.push_back(family_member(spec, psi).geometry.focus_t);
    }
    return foci;
}

std::pair<double, double> eccentricity_extremes(const FamilySpec& spec) {
    const double e_min = std::abs(1.0 + 2.0 * spec.H() * spec.r() / spec.params().k);
    return {e_min, 1.0};
}

ConicSpec bounding_envelope(const FamilySpec& spec) {
    return make_ellipse(Vec3{}, spec.r_fixed(), 4.0 * spec.a() - spec.r(), spec.plane_normal());
}

Vec3 envelope_u_focus(const FamilySpec& spec) {
    if (classify(spec.r(), spec.a()) == EnvelopeCase::Parabola) {
        throw Error(ErrorCode::ParabolicEnvelope,
                    "r = a: the envelope is a parabola with no second focus; use directrix_envelope");
    }
    return (spec.a() / (spec.a() - spec.r())) * spec.r_fixed();
}

Vec3 reflected_focus_v(const FamilySpec& spec, const FamilyMember& member) {
    if (classify(spec.r(), spec.a()) == EnvelopeCase::Parabola) {
        throw Error(ErrorCode::ParabolicEnvelope,
                    "r = a: the envelope is a parabola; use directrix_envelope");
    }
    if (lenz_is_zero(member.conserved.K, spec.params())) {
        throw Error(ErrorCode::CircularOrbit, "circular member has no directrix");
    }
    const double a = spec.a();
    const double r = spec.r();
    return (a * spec.r_fixed() - r * member.geometry.focus_t) / (a - r);
}

EnvelopeReport directrix_envelope(const FamilySpec& spec, int n) {
    require_samples(n, 3);
    const double a = spec.a();
    const double r = spec.r();
    const Vec3 r_hat = spec.r_hat();
    const Vec3& normal = spec.plane_normal();

    EnvelopeReport report;
    switch (classify(r, a)) {
    case EnvelopeCase::Ellipse:
    case EnvelopeCase::Hyperbola:
        report.envelope = central_envelope(a, r, r_hat, normal);
        report.u_focus = report.envelope.focus2;
        report.notes.push_back(r < a ? "closed-form ellipse envelope"
                                     : "hyperbola envelope (foci r and u = a r/(a - r), u on the far side of the origin)");
        break;
    case EnvelopeCase::Parabola: {
        // Directrix of the envelope with respect to the focus r_fixed, taken
        // as the midpoint of the two neighbouring central-conic envelopes.
        const Line below = focus1_directrix(
            central_envelope(a, a * (1.0 - kParabolaFitOffset), r_hat, normal));
        const Line above = focus1_directrix(
            central_envelope(a, a * (1.0 + kParabolaFitOffset), r_hat, normal));
        const Vec3 base = 0.5 * (below.base + above.base);
        // Align the normal signs before averaging.
        const Vec3 above_normal = dot(below.normal, above.normal) < 0.0 ? -above.normal : above.normal;
        const Vec3 dir = 0.5 * (below.normal + above_normal);
        // Project the base onto the axis through r_fixed.
        const Vec3 axis_base = dot(base, r_hat) * r_hat;
        report.envelope = make_parabola(spec.r_fixed(), Line::with_normal(axis_base, dir), normal);
        report.numerically_fitted = true;
        report.notes.push_back("parabola envelope: directrix fitted from r = a(1 -+ 1e-6)");
        break;
    }
    }

    for (double psi : psi_grid(n)) {
        FamilyMember m;
        try {
            m = family_member(spec, psi);
        } catch (const Error& err) {
            std::ostringstream os;
            os.precision(17);
            os << "skipped psi = " << psi << ": " << err.what();
            report.notes.push_back(os.str());
            continue;
        }
        if (lenz_is_zero(m.conserved.K, spec.params())) {
            std::ostringstream os;
            os.precision(17);
            os << "skipped psi = " << psi << ": circular member has no directrix";
            report.notes.push_back(os.str());
            continue;
        }
        const Line d = directrix(m.state, spec.params());
        MemberTangency mt;
        mt.psi = psi;
        mt.residual = conic_tangency_residual(d, report.envelope);
        mt.touch_point = tangency_point(d, report.envelope);
        if (report.envelope.kind == ConicKind::Hyperbola) {
            mt.branch = distance(mt.touch_point, report.envelope.focus1) <
                                distance(mt.touch_point, report.envelope.focus2)
                            ? HyperbolaBranch::NearFixedPoint
                            : HyperbolaBranch::NearU;
        }
        report.per_member.push_back(mt);
    }
    return report;
}

Line envelope_directrix_of_E(const FamilySpec& spec) {
    if (classify(spec.r(), spec.a()) != EnvelopeCase::Ellipse) {
        throw Error(ErrorCode::OutOfRange, "the elliptic envelope exists only for r < a");
    }
    return Line{-(2.0 * spec.a() - spec.r()) * spec.r_hat(), spec.r_hat()};
}

double simultaneous_return_check(const FamilySpec& spec, int n) {
    require_samples(n, 2);
    const double T = spec.period();
    double worst = 0.0;
    for (double psi : psi_grid(n)) {
        const FamilyMember m = family_member(spec, psi);
        const PhaseState back = propagate_analytic(m.state, spec.params(), T);
        worst = std::max(worst, distance(back.r, spec.r_fixed()));
    }
    return worst;
}

} // namespace kepfam
