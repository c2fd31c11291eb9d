#pragma once

#include <random>

#include "kepfam/state.hpp"

namespace kepfam {

/// Orbit plane orientation: periapsis direction and plane normal (both unit,
/// mutually orthogonal).
struct OrbitFrame {
    Vec3 periapsis{1.0, 0.0, 0.0};
    Vec3 normal{0.0, 0.0, 1.0};
};

/// State at true anomaly nu on the ellipse with semi-major axis a and
/// eccentricity e in [0, 1).
PhaseState state_from_elements(const PhysParams& params, double a, double e, double nu,
                               const OrbitFrame& frame = {});

struct RandomBoundState {
    PhysParams params;
    PhaseState state;
    double a = 0.0;
    double e = 0.0;
};

/// Uniform draws: mu, k in [0.5, 2], a in [0.5, 2], e in [0, e_max],
/// true anomaly in [0, 2 pi), isotropic plane orientation.
RandomBoundState random_bound_state(std::mt19937_64& rng, double e_max);

} // namespace kepfam
