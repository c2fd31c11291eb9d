#include "kepfam/kepler_equation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kepfam/error.hpp"

namespace kepfam {

KeplerSolution solve_kepler(double mean_anomaly, double e) {
    if (!std::isfinite(mean_anomaly) || !(e >= 0.0) || e > kMaxEccentricity) {
        std::ostringstream os;
        os << "Kepler equation needs finite M and 0 <= e <= 1 - 1e-9 (got e = " << e << ")";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double turns = std::round(mean_anomaly / two_pi);
    const double M = mean_anomaly - turns * two_pi;

    const auto f = [&](double E) { return E - e * std::sin(E) - M; };

    double lo = M - e;
    double hi = M + e;
    double E = M + e * std::sin(M);
    KeplerSolution sol;
    for (int it = 1; it <= kKeplerMaxIterations; ++it) {
        const double fE = f(E);
        sol.iterations = it;
        if (std::abs(fE) <= kKeplerTolerance) {
            // One polishing Newton step; kept only if it does not get worse.
            const double polished = E - fE / (1.0 - e * std::cos(E));
            const double fp = f(polished);
            if (std::abs(fp) < std::abs(fE)) {
                E = polished;
            }
            sol.eccentric_anomaly = E + turns * two_pi;
            sol.residual = std::min(std::abs(fE), std::abs(fp));
            return sol;
        }
        // f is increasing, so the sign of f(E) tells which side the root is on.
        if (fE > 0.0) {
            hi = E;
        } else {
            lo = E;
        }
        const double step = fE / (1.0 - e * std::cos(E));
        double next = E - step;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == E) {
            break;
        }
        E = next;
    }
    const double fE = std::abs(f(E));
    if (fE <= kKeplerTolerance) {
        return {E + turns * two_pi, fE, sol.iterations};
    }
    std::ostringstream os;
    os.precision(17);
    os << "Kepler equation did not converge: M = " << M << ", e = " << e
       << ", residual = " << fE;
    throw Error(ErrorCode::Numeric, os.str());
}

} // namespace kepfam
