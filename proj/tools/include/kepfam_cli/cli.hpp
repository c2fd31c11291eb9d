#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kepfam/family.hpp"
#include "kepfam/state.hpp"
#include "kepfam/vec3.hpp"

namespace kepfam::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

enum class Command { Verify, Orbit, Family, Envelope, Figures };
enum class Format { Json, Csv };

struct RunConfig {
    Command command = Command::Verify;
    double mu = 1.0;
    double k = 1.0;
    double H = -0.28;
    /// Fixed point; the family plane normal is default_plane_normal(r).
    Vec3 r{1.0, 0.0, 0.0};
    double psi = 1.5707963267948966;
    int samples = 256;
    double dt_fraction = 1e-5;
    std::optional<double> tol_override;
    std::optional<std::string> out_path;
    Format format = Format::Json;
    std::uint64_t seed = 1;

    /// Throws kepfam::Error(InvalidArgument) on samples < 3,
    /// dt_fraction outside (0, 1e-2] or a non-positive tolerance scale.
    void validate() const;
    double tolerance_scale() const { return tol_override.value_or(1.0); }
};

/// z when r has no z component, otherwise r crossed with the coordinate axis
/// least aligned with r.
Vec3 default_plane_normal(const Vec3& r);

/// Family and the member at config.psi described by a configuration.
struct Scenario {
    FamilySpec spec;
    FamilyMember member;
};

/// Throws kepfam::Error for configurations that do not describe a family
/// (unbound energy, r outside (0, 2a), radial psi).
Scenario resolve(const RunConfig& config);

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool overall = false;
};

/// Runs the full invariant suite for the configured family and member.
VerifyReport run_verify(const RunConfig& config);

/// {"checks":[{"name","residual","tolerance","pass"}],"overall"} with a
/// trailing newline.
std::string report_json(const VerifyReport& report);
/// name,residual,tolerance,pass rows under a header line.
std::string report_csv(const VerifyReport& report);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

/// Parses and executes a command line (without the program name).
/// Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kepfam::cli
