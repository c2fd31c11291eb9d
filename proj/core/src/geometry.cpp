#include "kepfam/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kepfam/error.hpp"

namespace kepfam {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::UnboundOrbit: return "unbound-orbit";
    case ErrorCode::DegenerateOrbit: return "degenerate-orbit";
    case ErrorCode::CircularOrbit: return "circular-orbit";
    case ErrorCode::RadialDegenerate: return "radial-degenerate";
    case ErrorCode::ParabolicEnvelope: return "parabolic-envelope";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::UnsupportedKind: return "unsupported-kind";
    case ErrorCode::Numeric: return "numeric";
    case ErrorCode::Singularity: return "singularity";
    case ErrorCode::InsufficientCoverage: return "insufficient-coverage";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

std::string_view to_string(ConicKind kind) noexcept {
    switch (kind) {
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Circle: return "circle";
    case ConicKind::Segment: return "segment";
    }
    return "unknown";
}

namespace {

Vec3 unit_or_throw(const Vec3& v, const char* what) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a nonzero finite vector");
    }
    return v / n;
}

// Some unit vector orthogonal to n.
Vec3 any_perpendicular(const Vec3& n) {
    const Vec3 axis = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    return normalized(cross(n, axis));
}

Vec3 nan_vec() {
    constexpr double q = std::numeric_limits<double>::quiet_NaN();
    return {q, q, q};
}

// Intersection of the line through `origin` along `dir` with `line`.
Vec3 intersect(const Vec3& origin, const Vec3& dir, const Line& line) {
    const double den = dot(dir, line.normal);
    if (den == 0.0) {
        return nan_vec();
    }
    const double lambda = dot(line.base - origin, line.normal) / den;
    return origin + lambda * dir;
}

} // namespace

Line Line::with_normal(const Vec3& base, const Vec3& normal_direction) {
    return Line{base, unit_or_throw(normal_direction, "line normal")};
}

void validate(const Line& line) {
    if (!is_finite(line.base) || !is_finite(line.normal)) {
        throw Error(ErrorCode::InvalidArgument, "line has non-finite components");
    }
    const double n = norm(line.normal);
    if (std::abs(n - 1.0) > kUnitNormalTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "line normal is not unit: |n| = " << n;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

Vec3 reflect_point_in_line(const Vec3& p, const Line& line) {
    validate(line);
    return p - 2.0 * dot(p - line.base, line.normal) * line.normal;
}

double point_line_distance(const Vec3& p, const Line& line) {
    validate(line);
    return std::abs(dot(p - line.base, line.normal));
}

ConicSpec make_ellipse(const Vec3& focus1, const Vec3& focus2, double major_axis,
                       const Vec3& plane_normal) {
    const double focal = distance(focus1, focus2);
    if (!(major_axis > 0.0) || !(focal < major_axis)) {
        throw Error(ErrorCode::InvalidArgument,
                    "ellipse needs 0 <= focal distance < major axis");
    }
    ConicSpec c;
    c.kind = focal == 0.0 ? ConicKind::Circle : ConicKind::Ellipse;
    c.focus1 = focus1;
    c.focus2 = focus2;
    c.major_axis = major_axis;
    c.eccentricity = focal / major_axis;
    c.plane_normal = unit_or_throw(plane_normal, "plane normal");
    return c;
}

ConicSpec make_circle(const Vec3& center, double radius, const Vec3& plane_normal) {
    if (!(radius > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
    }
    ConicSpec c;
    c.kind = ConicKind::Circle;
    c.focus1 = center;
    c.focus2 = center;
    c.major_axis = 2.0 * radius;
    c.eccentricity = 0.0;
    c.plane_normal = unit_or_throw(plane_normal, "plane normal");
    return c;
}

ConicSpec make_hyperbola(const Vec3& focus1, const Vec3& focus2, double major_axis,
                         const Vec3& plane_normal) {
    const double focal = distance(focus1, focus2);
    if (!(major_axis > 0.0) || !(focal > major_axis)) {
        throw Error(ErrorCode::InvalidArgument, "hyperbola needs focal distance > major axis > 0");
    }
    ConicSpec c;
    c.kind = ConicKind::Hyperbola;
    c.focus1 = focus1;
    c.focus2 = focus2;
    c.major_axis = major_axis;
    c.eccentricity = focal / major_axis;
    c.plane_normal = unit_or_throw(plane_normal, "plane normal");
    return c;
}

ConicSpec make_parabola(const Vec3& focus, const Line& directrix, const Vec3& plane_normal) {
    validate(directrix);
    if (point_line_distance(focus, directrix) == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "parabola focus lies on its directrix");
    }
    ConicSpec c;
    c.kind = ConicKind::Parabola;
    c.focus1 = focus;
    c.focus2 = focus;
    c.major_axis = 0.0;
    c.eccentricity = 1.0;
    c.plane_normal = unit_or_throw(plane_normal, "plane normal");
    c.directrix = directrix;
    return c;
}

ConicSpec make_segment(const Vec3& end1, const Vec3& end2, const Vec3& plane_normal) {
    ConicSpec c;
    c.kind = ConicKind::Segment;
    c.focus1 = end1;
    c.focus2 = end2;
    c.major_axis = distance(end1, end2);
    c.eccentricity = 1.0;
    c.plane_normal = unit_or_throw(plane_normal, "plane normal");
    return c;
}

double conic_tangency_residual(const Line& line, const ConicSpec& conic) {
    switch (conic.kind) {
    case ConicKind::Ellipse:
    case ConicKind::Circle:
    case ConicKind::Hyperbola: {
        const Vec3 image = reflect_point_in_line(conic.focus2, line);
        return std::abs(distance(image, conic.focus1) - conic.major_axis);
    }
    case ConicKind::Parabola: {
        if (!conic.directrix) {
            throw Error(ErrorCode::InvalidArgument, "parabola without directrix");
        }
        const Vec3 image = reflect_point_in_line(conic.focus1, line);
        return point_line_distance(image, *conic.directrix);
    }
    case ConicKind::Segment:
        break;
    }
    throw Error(ErrorCode::UnsupportedKind, "tangency is undefined for a degenerate segment");
}

Vec3 tangency_point(const Line& line, const ConicSpec& conic) {
    validate(line);
    switch (conic.kind) {
    case ConicKind::Ellipse:
    case ConicKind::Circle:
    case ConicKind::Hyperbola: {
        const Vec3 image = reflect_point_in_line(conic.focus2, line);
        return intersect(conic.focus1, image - conic.focus1, line);
    }
    case ConicKind::Parabola: {
        if (!conic.directrix) {
            throw Error(ErrorCode::InvalidArgument, "parabola without directrix");
        }
        const Vec3 image = reflect_point_in_line(conic.focus1, line);
        return intersect(image, conic.directrix->normal, line);
    }
    case ConicKind::Segment:
        break;
    }
    throw Error(ErrorCode::UnsupportedKind, "tangency is undefined for a degenerate segment");
}

Line focus1_directrix(const ConicSpec& conic) {
    switch (conic.kind) {
    case ConicKind::Ellipse:
    case ConicKind::Hyperbola: {
        const Vec3 center = 0.5 * (conic.focus1 + conic.focus2);
        const Vec3 axis = normalized(conic.focus1 - conic.focus2);
        const double semi = 0.5 * conic.major_axis;
        return Line{center + (semi / conic.eccentricity) * axis, axis};
    }
    case ConicKind::Parabola:
        if (conic.directrix) {
            return *conic.directrix;
        }
        throw Error(ErrorCode::InvalidArgument, "parabola without directrix");
    case ConicKind::Circle:
    case ConicKind::Segment:
        break;
    }
    throw Error(ErrorCode::UnsupportedKind, "circles and segments have no directrix");
}

std::vector<Vec3> sample_conic(const ConicSpec& conic, int n, double param_extent) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    }
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const Vec3& nrm = conic.plane_normal;

    switch (conic.kind) {
    case ConicKind::Ellipse:
    case ConicKind::Circle: {
        const Vec3 center = 0.5 * (conic.focus1 + conic.focus2);
        const double focal_half = 0.5 * distance(conic.focus1, conic.focus2);
        const Vec3 major = focal_half > 0.0 ? normalized(conic.focus1 - conic.focus2)
                                            : any_perpendicular(nrm);
        const Vec3 minor = cross(nrm, major);
        const double semi_major = 0.5 * conic.major_axis;
        const double semi_minor = std::sqrt(semi_major * semi_major - focal_half * focal_half);
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * std::numbers::pi * i / n;
            pts.push_back(center + semi_major * std::cos(th) * major +
                          semi_minor * std::sin(th) * minor);
        }
        break;
    }
    case ConicKind::Hyperbola: {
        const Vec3 center = 0.5 * (conic.focus1 + conic.focus2);
        const double focal_half = 0.5 * distance(conic.focus1, conic.focus2);
        const Vec3 major = normalized(conic.focus1 - conic.focus2);
        const Vec3 minor = cross(nrm, major);
        const double semi_major = 0.5 * conic.major_axis;
        const double semi_minor = std::sqrt(focal_half * focal_half - semi_major * semi_major);
        const int per_branch = n / 2;
        for (int branch = 0; branch < 2; ++branch) {
            const double sign = branch == 0 ? 1.0 : -1.0;
            const int count = branch == 0 ? per_branch : n - per_branch;
            for (int i = 0; i < count; ++i) {
                const double tau = count > 1 ? -param_extent + 2.0 * param_extent * i / (count - 1) : 0.0;
                pts.push_back(center + sign * semi_major * std::cosh(tau) * major +
                              semi_minor * std::sinh(tau) * minor);
            }
        }
        break;
    }
    case ConicKind::Parabola: {
        const Line d = focus1_directrix(conic);
        const double h = dot(conic.focus1 - d.base, d.normal);
        const Vec3 axis = h > 0.0 ? d.normal : -d.normal;
        const double focal_len = 0.5 * std::abs(h);
        const Vec3 vertex = conic.focus1 - focal_len * axis;
        const Vec3 across = cross(nrm, axis);
        const double extent = param_extent * focal_len;
        for (int i = 0; i < n; ++i) {
            const double s = -extent + 2.0 * extent * i / (n - 1);
            pts.push_back(vertex + (s * s / (4.0 * focal_len)) * axis + s * across);
        }
        break;
    }
    case ConicKind::Segment:
        for (int i = 0; i < n; ++i) {
            const double w = static_cast<double>(i) / (n - 1);
            pts.push_back((1.0 - w) * conic.focus1 + w * conic.focus2);
        }
        break;
    }
    return pts;
}

} // namespace kepfam
