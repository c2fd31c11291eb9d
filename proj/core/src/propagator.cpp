#include "kepfam/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kepfam/error.hpp"
#include "kepfam/kepler_equation.hpp"

namespace kepfam {

namespace {

struct BoundOrbit {
    ConservedSet conserved;
    double e = 0.0;
};

// Shared admission check of both engines.
BoundOrbit admit(const PhaseState& state0, const PhysParams& params) {
    BoundOrbit o;
    o.conserved = conserved_quantities(state0, params);
    if (!(o.conserved.H < 0.0)) {
        throw Error(ErrorCode::UnboundOrbit, "propagation requires a bound orbit (H < 0)");
    }
    if (angular_momentum_is_zero(state0)) {
        throw Error(ErrorCode::DegenerateOrbit, "collinear motion is not propagated");
    }
    o.e = norm(o.conserved.K) / (params.k * params.mu);
    if (o.e > kMaxEccentricity) {
        std::ostringstream os;
        os.precision(17);
        os << "eccentricity " << o.e << " exceeds 1 - 1e-9";
        throw Error(ErrorCode::DegenerateOrbit, os.str());
    }
    return o;
}

struct Perifocal {
    Vec3 P;
    Vec3 Q;
    double a = 0.0;
    double b = 0.0;
};

// Periapsis direction K/|K|, or the in-plane part of r0 for a circle.
Perifocal perifocal(const PhaseState& state0, const PhysParams& params, const ConservedSet& c) {
    const double L = norm(c.L);
    const Vec3 w = c.L / L;
    Perifocal f;
    f.P = lenz_is_zero(c.K, params) ? normalized(state0.r - dot(state0.r, w) * w) : c.K / norm(c.K);
    f.Q = cross(w, f.P);
    f.a = -params.k / (2.0 * c.H);
    f.b = std::sqrt(-L * L / (2.0 * params.mu * c.H));
    return f;
}

struct Derivative {
    Vec3 dr;
    Vec3 dp;
};

double relative(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

} // namespace

PhaseState propagate_analytic(const PhaseState& state0, const PhysParams& params, double t) {
    const BoundOrbit orbit = admit(state0, params);
    const double e = orbit.e;
    const Perifocal f = perifocal(state0, params, orbit.conserved);
    const double a = f.a;
    const double b = f.b;
    const Vec3& P = f.P;
    const Vec3& Q = f.Q;
    const double mean_motion = std::sqrt(params.k / (params.mu * a * a * a));

    const double E0 = std::atan2(dot(state0.r, Q) / b, dot(state0.r, P) / a + e);
    const double M = E0 - e * std::sin(E0) + mean_motion * t;
    const double E = solve_kepler(M, e).eccentric_anomaly;

    const double cosE = std::cos(E);
    const double sinE = std::sin(E);
    const double rate = mean_motion / (1.0 - e * cosE);
    PhaseState out;
    out.r = a * (cosE - e) * P + b * sinE * Q;
    out.p = (params.mu * rate) * (-a * sinE * P + b * cosE * Q);
    return out;
}

std::vector<Vec3> sample_orbit(const PhaseState& state0, const PhysParams& params, int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "need at least one orbit sample");
    }
    const BoundOrbit orbit = admit(state0, params);
    const Perifocal f = perifocal(state0, params, orbit.conserved);
    std::vector<Vec3> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double E = 2.0 * std::numbers::pi * j / n;
        points.push_back(f.a * (std::cos(E) - orbit.e) * f.P + f.b * std::sin(E) * f.Q);
    }
    return points;
}

Trajectory integrate_numeric(const PhaseState& state0, const PhysParams& params, double dt,
                             int steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::InvalidArgument, "time step must be positive and finite");
    }
    if (steps < 1) {
        throw Error(ErrorCode::InvalidArgument, "need at least one step");
    }
    const BoundOrbit orbit = admit(state0, params);
    const ConservedSet& c0 = orbit.conserved;
    const double L0 = norm(c0.L);
    const double K0 = lenz_is_zero(c0.K, params) ? params.k * params.mu : norm(c0.K);

    const auto rhs = [&](double time, const Vec3& r, const Vec3& p) -> Derivative {
        const double dist = norm(r);
        if (dist < kSingularityRadius) {
            std::ostringstream os;
            os.precision(17);
            os << "trajectory reached |r| = " << dist << " at t = " << time;
            throw SingularityError(time, dist, os.str());
        }
        return {p / params.mu, (-params.k / (dist * dist * dist)) * r};
    };

    Trajectory traj;
    traj.params = params;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
    traj.samples.push_back({0.0, state0});

    Vec3 r = state0.r;
    Vec3 p = state0.p;
    for (int i = 0; i < steps; ++i) {
        const double t = i * dt;
        const Derivative k1 = rhs(t, r, p);
        const Derivative k2 = rhs(t + 0.5 * dt, r + (0.5 * dt) * k1.dr, p + (0.5 * dt) * k1.dp);
        const Derivative k3 = rhs(t + 0.5 * dt, r + (0.5 * dt) * k2.dr, p + (0.5 * dt) * k2.dp);
        const Derivative k4 = rhs(t + dt, r + dt * k3.dr, p + dt * k3.dp);
        r += (dt / 6.0) * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
        p += (dt / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);

        const double t_next = (i + 1) * dt;
        if (norm(r) < kSingularityRadius) {
            std::ostringstream os;
            os.precision(17);
            os << "trajectory reached |r| = " << norm(r) << " at t = " << t_next;
            throw SingularityError(t_next, norm(r), os.str());
        }
        const PhaseState s{r, p};
        const ConservedSet c = conserved_quantities(s, params);
        traj.drift.energy = std::max(traj.drift.energy, relative(c.H, c0.H));
        traj.drift.angular_momentum = std::max(traj.drift.angular_momentum, relative(norm(c.L), L0));
        traj.drift.lenz = std::max(traj.drift.lenz, norm(c.K - c0.K) / K0);
        traj.samples.push_back({t_next, s});
    }
    return traj;
}

AreaSweep swept_area(const Trajectory& traj, double t0, double t1) {
    if (traj.samples.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "trajectory needs at least two samples");
    }
    if (!(t1 > t0) || t0 < traj.start_time() || t1 > traj.end_time()) {
        std::ostringstream os;
        os.precision(17);
        os << "area interval [" << t0 << ", " << t1 << "] outside trajectory range ["
           << traj.start_time() << ", " << traj.end_time() << "]";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    const auto& s = traj.samples;
    const auto rate = [&](std::size_t i) {
        return 0.5 * norm(cross(s[i].state.r, s[i].state.p)) / traj.params.mu;
    };
    const auto by_time = [](const TrajectorySample& a, double t) { return a.time < t; };
    // Index of the first sample strictly inside (t0, t1], and of the last one before t1.
    const auto upper_index = [&](double t) {
        return static_cast<std::size_t>(
            std::lower_bound(s.begin(), s.end(), t, by_time) - s.begin());
    };
    const auto interp = [&](double t) {
        std::size_t j = upper_index(t);
        if (j == 0) {
            return rate(0);
        }
        if (j >= s.size()) {
            return rate(s.size() - 1);
        }
        const double w = (t - s[j - 1].time) / (s[j].time - s[j - 1].time);
        return (1.0 - w) * rate(j - 1) + w * rate(j);
    };

    double area = 0.0;
    double prev_t = t0;
    double prev_f = interp(t0);
    for (std::size_t j = upper_index(t0); j < s.size() && s[j].time < t1; ++j) {
        if (s[j].time <= t0) {
            continue;
        }
        const double f = rate(j);
        area += 0.5 * (prev_f + f) * (s[j].time - prev_t);
        prev_t = s[j].time;
        prev_f = f;
    }
    area += 0.5 * (prev_f + interp(t1)) * (t1 - prev_t);
    return {t0, t1, area};
}

double detect_period(const Trajectory& traj) {
    const auto& s = traj.samples;
    if (s.size() < 3) {
        throw Error(ErrorCode::InsufficientCoverage, "trajectory too short to detect a period");
    }
    const Vec3 r0 = s.front().state.r;
    const double p0 = norm(s.front().state.p);
    if (p0 == 0.0) {
        throw Error(ErrorCode::DegenerateOrbit, "initial momentum vanishes");
    }
    const Vec3 u = s.front().state.p / p0;
    const double mu = traj.params.mu;
    const auto g = [&](std::size_t i) { return dot(s[i].state.r - r0, u); };
    const auto dg = [&](std::size_t i) { return dot(s[i].state.p, u) / mu; };

    for (std::size_t i = 1; i < s.size(); ++i) {
        const double g0 = g(i - 1);
        const double g1 = g(i);
        if (!(g0 < 0.0 && g1 >= 0.0)) {
            continue;
        }
        const double chord = distance(s[i].state.r, s[i - 1].state.r);
        if (distance(s[i].state.r, r0) > 4.0 * chord) {
            continue;
        }
        const double h = s[i].time - s[i - 1].time;
        const double m0 = h * dg(i - 1);
        const double m1 = h * dg(i);
        const auto hermite = [&](double x) {
            const double x2 = x * x;
            const double x3 = x2 * x;
            return (2 * x3 - 3 * x2 + 1) * g0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * g1 +
                   (x3 - x2) * m1;
        };
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (hermite(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return s[i - 1].time + 0.5 * (lo + hi) * h - s.front().time;
    }
    throw Error(ErrorCode::InsufficientCoverage, "no return to the initial position detected");
}

} // namespace kepfam
