#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kepfam/geometry.hpp"
#include "kepfam_cli/cli.hpp"

namespace kepfam::cli {

/// Points per sampled curve (orbits, circles, envelope conics).
inline constexpr int kCurvePoints = 256;
/// Members drawn in the family and directrix figures.
inline constexpr int kFigureMembers = 16;

/// One CSV row: psi is the member's momentum angle where the point belongs to
/// a member, t is the time along an orbit or the sample parameter otherwise.
struct PointRow {
    std::string set;
    std::optional<double> psi;
    std::optional<double> t;
    Vec3 point;
};

struct NamedConic {
    std::string name;
    ConicSpec conic;
};

struct Dataset {
    std::string name;
    std::vector<PointRow> rows;
    std::vector<NamedConic> conics;
};

/// Member at config.psi: orbit, fall circle, s, t, the tangent line at r and
/// the directrix.
Dataset orbit_dataset(const RunConfig& config);

/// `members` family orbits, their second foci, the focus circle and the
/// bounding ellipse.
Dataset family_dataset(const RunConfig& config, int members);

/// `members` directrices with their touch points and the envelope conic.
Dataset envelope_dataset(const RunConfig& config, int members);

std::string dataset_csv(const Dataset& data);
/// Conic sidecar: {"name","conics":[...]}.
std::string conics_json(const Dataset& data);
/// Point sets and conics in one document.
std::string dataset_json(const Dataset& data);

} // namespace kepfam::cli
