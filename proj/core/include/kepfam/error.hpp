#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kepfam {

enum class ErrorCode {
    InvalidArgument,
    Domain,                // position at the origin
    UnboundOrbit,          // H >= 0
    DegenerateOrbit,       // L = 0, or eccentricity too close to 1
    CircularOrbit,         // K = 0, no directrix
    RadialDegenerate,      // family member with momentum along r
    ParabolicEnvelope,     // r = a, the directrix envelope has no second focus
    OutOfRange,
    UnsupportedKind,
    Numeric,
    Singularity,
    InsufficientCoverage,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the numerical integrator when the trajectory gets too close to
/// the force centre.
class SingularityError : public Error {
public:
    SingularityError(double time, double distance, const std::string& what)
        : Error(ErrorCode::Singularity, what), time_(time), distance_(distance) {}

    double time() const noexcept { return time_; }
    double distance() const noexcept { return distance_; }

private:
    double time_;
    double distance_;
};

} // namespace kepfam
