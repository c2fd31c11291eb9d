#include "kepfam/sampling.hpp"

#include <cmath>
#include <numbers>

#include "kepfam/error.hpp"

namespace kepfam {

PhaseState state_from_elements(const PhysParams& params, double a, double e, double nu,
                               const OrbitFrame& frame) {
    params.validate();
    if (!(a > 0.0) || !(e >= 0.0 && e < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "need a > 0 and 0 <= e < 1");
    }
    const Vec3 P = normalized(frame.periapsis);
    const Vec3 Q = cross(normalized(frame.normal), P);
    const double gm = params.k / params.mu;
    const double semi_latus = a * (1.0 - e * e);
    const double radius = semi_latus / (1.0 + e * std::cos(nu));
    const double speed_scale = std::sqrt(gm / semi_latus);

    PhaseState s;
    s.r = radius * (std::cos(nu) * P + std::sin(nu) * Q);
    s.p = (params.mu * speed_scale) * (-std::sin(nu) * P + (e + std::cos(nu)) * Q);
    return s;
}

RandomBoundState random_bound_state(std::mt19937_64& rng, double e_max) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    RandomBoundState out;
    out.params.mu = 0.5 + 1.5 * unit(rng);
    out.params.k = 0.5 + 1.5 * unit(rng);
    out.a = 0.5 + 1.5 * unit(rng);
    out.e = e_max * unit(rng);
    const double nu = 2.0 * std::numbers::pi * unit(rng);

    Vec3 n;
    do {
        n = {gauss(rng), gauss(rng), gauss(rng)};
    } while (norm(n) < 1e-6);
    n = normalized(n);
    Vec3 trial;
    Vec3 P;
    do {
        trial = {gauss(rng), gauss(rng), gauss(rng)};
        P = trial - dot(trial, n) * n;
    } while (norm(P) < 1e-6);

    out.state = state_from_elements(out.params, out.a, out.e, nu, {normalized(P), n});
    return out;
}

} // namespace kepfam
