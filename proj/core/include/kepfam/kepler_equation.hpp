#pragma once

namespace kepfam {

inline constexpr double kKeplerTolerance = 1e-13;
inline constexpr int kKeplerMaxIterations = 50;
/// Orbits with eccentricity above this are refused by both dynamics engines.
inline constexpr double kMaxEccentricity = 1.0 - 1e-9;

struct KeplerSolution {
    double eccentric_anomaly = 0.0;
    double residual = 0.0;  // |E - e sin E - M|, M reduced to [-pi, pi]
    int iterations = 0;
};

/// Solves M = E - e sin E for E.
///
/// Newton from E0 = M + e sin M, safeguarded by bisection on the bracket
/// [M - e, M + e]. The mean anomaly is first reduced to [-pi, pi] and the
/// returned E is shifted back by the same multiple of 2 pi.
/// Throws InvalidArgument for e outside [0, kMaxEccentricity] and Numeric if
/// the residual does not reach kKeplerTolerance.
KeplerSolution solve_kepler(double mean_anomaly, double e);

} // namespace kepfam
