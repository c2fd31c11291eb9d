#pragma once

#include <vector>

#include "kepfam/state.hpp"

namespace kepfam {

struct TrajectorySample {
    double time = 0.0;
    PhaseState state;
};

/// Largest relative deviation of the conserved quantities along a trajectory,
/// measured against the initial state. The Lenz drift is relative to |K(0)|,
/// or to k mu when the initial orbit is circular.
struct DriftReport {
    double energy = 0.0;
    double angular_momentum = 0.0;
    double lenz = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // strictly increasing times
    PhysParams params;
    DriftReport drift;

    double start_time() const { return samples.front().time; }
    double end_time() const { return samples.back().time; }
};

struct AreaSweep {
    double t0 = 0.0;
    double t1 = 0.0;
    double area = 0.0;
};

/// Closest approach to the origin tolerated by integrate_numeric.
inline constexpr double kSingularityRadius = 1e-6;

/// State at time t on the Kepler orbit through state0, via the eccentric
/// anomaly in the perifocal frame. Conserves L, H and K to round-off.
/// Throws UnboundOrbit, DegenerateOrbit (L = 0 or e > 1 - 1e-9) or Numeric.
PhaseState propagate_analytic(const PhaseState& state0, const PhysParams& params, double t);

/// Orbit positions at n eccentric anomalies 2 pi j/n, starting at periapsis.
/// Same admission rules as propagate_analytic; throws InvalidArgument for n < 1.
std::vector<Vec3> sample_orbit(const PhaseState& state0, const PhysParams& params, int n);

/// Fixed-step classical RK4 for mu r'' = -k r/|r|^3, storing every step.
/// Throws InvalidArgument for dt <= 0 or steps < 1, DegenerateOrbit for
/// e > 1 - 1e-9, and SingularityError if |r| drops below kSingularityRadius.
Trajectory integrate_numeric(const PhaseState& state0, const PhysParams& params, double dt,
                             int steps);

/// Trapezoidal quadrature of |r x r'|/2 over [t0, t1]; endpoints between
/// samples are linearly interpolated.
AreaSweep swept_area(const Trajectory& traj, double t0, double t1);

/// First return time to the initial position.
///
/// Watches g(t) = (r(t) - r(0)).p(0)/|p(0)| for its first upward zero
/// crossing close to r(0) and refines it on the cubic Hermite interpolant
/// built from g and its derivative p.p(0)/(mu |p(0)|).
/// Throws InsufficientCoverage when no return is found.
double detect_period(const Trajectory& traj);

} // namespace kepfam
