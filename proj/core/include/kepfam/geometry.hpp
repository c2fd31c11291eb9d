#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "kepfam/vec3.hpp"

namespace kepfam {

/// Tolerance on |normal| - 1 accepted by every operation that takes a Line.
inline constexpr double kUnitNormalTolerance = 1e-12;

/// The affine set base + normal^perp. Inside an orbit plane this is a line;
/// in full 3-space the same data describes a mirror plane, which is how the
/// reflection below treats it.
struct Line {
    Vec3 base;
    Vec3 normal;  // unit

    /// Builds a line from any nonzero normal direction.
    static Line with_normal(const Vec3& base, const Vec3& normal_direction);
};

/// Throws ErrorCode::InvalidArgument when the normal is not unit within
/// kUnitNormalTolerance or any component is non-finite.
void validate(const Line& line);

/// Orthogonal reflection p - 2((p - base).n)n.
Vec3 reflect_point_in_line(const Vec3& p, const Line& line);

/// |(p - base).n|
double point_line_distance(const Vec3& p, const Line& line);

enum class ConicKind { Ellipse, Parabola, Hyperbola, Circle, Segment };

std::string_view to_string(ConicKind kind) noexcept;

/// Focal description of a planar conic.
///
/// Ellipse/Circle: sum of focal distances equals major_axis.
/// Hyperbola: absolute difference of focal distances equals major_axis.
/// Parabola: focus1 plus `directrix`; focus2 and major_axis are unused.
/// Segment: the e = 1 degenerate ellipse between the two foci.
struct ConicSpec {
    ConicKind kind = ConicKind::Ellipse;
    Vec3 focus1;
    Vec3 focus2;
    double major_axis = 0.0;
    double eccentricity = 0.0;
    Vec3 plane_normal{0.0, 0.0, 1.0};
    std::optional<Line> directrix;
};

ConicSpec make_ellipse(const Vec3& focus1, const Vec3& focus2, double major_axis,
                       const Vec3& plane_normal);
ConicSpec make_circle(const Vec3& center, double radius, const Vec3& plane_normal);
ConicSpec make_hyperbola(const Vec3& focus1, const Vec3& focus2, double major_axis,
                         const Vec3& plane_normal);
ConicSpec make_parabola(const Vec3& focus, const Line& directrix,
                        const Vec3& plane_normal);
ConicSpec make_segment(const Vec3& end1, const Vec3& end2, const Vec3& plane_normal);

/// Zero iff `line` is tangent to `conic`.
///
/// Central conics use the focal-reflection test: the mirror image of focus2
/// in a tangent line lies at distance major_axis from focus1. Parabolas use
/// the analogous test: the mirror image of the focus lies on the directrix.
/// Throws ErrorCode::UnsupportedKind for Segment.
double conic_tangency_residual(const Line& line, const ConicSpec& conic);

/// Point where a tangent line touches the conic (foot of the focal-reflection
/// construction). Meaningful only when the residual is small.
Vec3 tangency_point(const Line& line, const ConicSpec& conic);

/// Directrix of an ellipse or hyperbola associated with focus1, or the stored
/// directrix of a parabola. Throws for circles and segments.
Line focus1_directrix(const ConicSpec& conic);

/// Points along the conic. Ellipses and circles are sampled uniformly in the
/// eccentric angle; hyperbolas on both branches for |tau| <= param_extent;
/// parabolas for |s| <= param_extent * focal length.
std::vector<Vec3> sample_conic(const ConicSpec& conic, int n, double param_extent = 2.0);

} // namespace kepfam
