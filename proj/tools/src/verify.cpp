#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"
#include "kepfam/error.hpp"
#include "kepfam/family.hpp"
#include "kepfam/propagator.hpp"
#include "kepfam/sampling.hpp"
#include "kepfam_cli/cli.hpp"

namespace kepfam::cli {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kRandomStates = 1000;
constexpr double kRandomMaxEccentricity = 0.95;
constexpr int kOracleStates = 8;
constexpr double kOracleMaxEccentricity = 0.9;
constexpr int kOracleStride = 997;
constexpr int kReturnMembers = 32;
constexpr int kEccentricityGrid = 4097;
constexpr double kAreaInterval = 0.185;

constexpr double kTolSecondFocus = 1e-12;
constexpr double kTolLenzIdentity = 1e-12;
constexpr double kTolDrift = 1e-8;
constexpr double kTolFocalSumNumeric = 1e-8;
constexpr double kTolFocalSumAnalytic = 1e-12;
constexpr double kTolPeriod = 1e-6;
constexpr double kTolHarmonic = 1e-12;
constexpr double kTolArea = 1e-6;
constexpr double kTolFocusLocus = 1e-12;
constexpr double kTolBoundingUpper = 1e-9;
constexpr double kTolBoundingAttained = 1e-6;
constexpr double kTolTangencyEllipse = 1e-10;
constexpr double kTolTangencyOther = 1e-8;
constexpr double kTolReflectedFocus = 1e-10;
constexpr double kTolReturn = 1e-9;
constexpr double kTolEccentricity = 1e-6;
constexpr double kTolOracle = 1e-6;

class Suite {
public:
    explicit Suite(double scale) : scale_(scale) {}

    void add(std::string name, double residual, double tolerance) {
        const double tol = tolerance * scale_;
        report_.checks.push_back({std::move(name), residual, tol, residual <= tol});
    }

    VerifyReport finish() {
        report_.overall = std::all_of(report_.checks.begin(), report_.checks.end(),
                                      [](const Check& c) { return c.pass; });
        return report_;
    }

private:
    double scale_;
    VerifyReport report_;
};

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

int steps_for(double periods, double dt_fraction) {
    return static_cast<int>(std::ceil(periods / dt_fraction - 1e-9));
}

void random_state_checks(Suite& suite, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double focus_worst = 0.0;
    double identity_worst = 0.0;
    for (int i = 0; i < kRandomStates; ++i) {
        const RandomBoundState rs = random_bound_state(rng, kRandomMaxEccentricity);
        const double mu = rs.params.mu;
        const double k = rs.params.k;
        const ConservedSet c = conserved_quantities(rs.state, rs.params);
        const Vec3 reflection = geometric_second_focus(rs.state, rs.params).point;
        focus_worst = std::max(focus_worst, norm(reflection - c.K / (mu * c.H)) / (-k / c.H));
        const double rhs = 2.0 * mu * c.H * norm2(c.L) + k * k * mu * mu;
        identity_worst = std::max(identity_worst, std::abs(norm2(c.K) - rhs) / (k * k * mu * mu));
    }
    suite.add("second_focus_equivalence", focus_worst, kTolSecondFocus);
    suite.add("lenz_identity", identity_worst, kTolLenzIdentity);
}

void trajectory_checks(Suite& suite, const FamilyMember& m, const PhysParams& params,
                       double dt_fraction) {
    const OrbitGeometry& g = m.geometry;
    const double T = g.period;
    const Trajectory traj =
        integrate_numeric(m.state, params, T * dt_fraction, steps_for(1.5, dt_fraction));

    const ConservedSet& c0 = m.conserved;
    const double K0 = lenz_is_zero(c0.K, params) ? params.k * params.mu : norm(c0.K);
    double drift_h = 0.0;
    double drift_l = 0.0;
    double drift_k = 0.0;
    double focal_numeric = 0.0;
    for (const TrajectorySample& s : traj.samples) {
        if (s.time > T) {
            break;
        }
        const ConservedSet c = conserved_quantities(s.state, params);
        drift_h = std::max(drift_h, rel(c.H, c0.H));
        drift_l = std::max(drift_l, rel(norm(c.L), norm(c0.L)));
        drift_k = std::max(drift_k, norm(c.K - c0.K) / K0);
        const double sum = norm(s.state.r) + distance(s.state.r, g.focus_t);
        focal_numeric = std::max(focal_numeric, std::abs(sum - g.fall_radius));
    }
    suite.add("drift_lenz", drift_k, kTolDrift);
    suite.add("drift_energy", drift_h, kTolDrift);
    suite.add("drift_angular_momentum", drift_l, kTolDrift);
    suite.add("focal_sum_numeric", focal_numeric, kTolFocalSumNumeric);

    double focal_analytic = 0.0;
    const int analytic_samples = 1000;
    for (int j = 0; j < analytic_samples; ++j) {
        const Vec3 q = propagate_analytic(m.state, params, T * j / analytic_samples).r;
        focal_analytic = std::max(focal_analytic,
                                  std::abs(norm(q) + distance(q, g.focus_t) - g.fall_radius));
    }
    suite.add("focal_sum_analytic", focal_analytic, kTolFocalSumAnalytic);

    const double kepler_period = 2.0 * kPi * params.mu * g.a * g.b / norm(c0.L);
    suite.add("period_detect", rel(detect_period(traj), kepler_period), kTolPeriod);
    suite.add("harmonic_law",
              rel(g.a * g.a * g.a / (T * T), params.k / (4.0 * kPi * kPi * params.mu)), kTolHarmonic);

    const double tau = kAreaInterval * T;
    const double area_first = swept_area(traj, 0.0, tau).area;
    const double area_second = swept_area(traj, 0.5 * T, 0.5 * T + tau).area;
    const double area_third = swept_area(traj, tau, 2.0 * tau).area;
    suite.add("area_equal_intervals",
              std::max(std::abs(area_first - area_second), std::abs(area_first - area_third)),
              kTolArea);
    suite.add("area_full_period", std::abs(swept_area(traj, 0.0, T).area - kPi * g.a * g.b),
              kTolArea);
}

void family_checks(Suite& suite, const FamilySpec& spec, int samples) {
    const double a = spec.a();
    const double r = spec.r();

    double locus = 0.0;
    for (const Vec3& t : focus_locus(spec, samples)) {
        locus = std::max(locus, std::abs(distance(t, spec.r_fixed()) - (2.0 * a - r)));
    }
    suite.add("focus_locus_radius", locus, kTolFocusLocus);

    const double bound = bounding_envelope(spec).major_axis;
    double sup = 0.0;
    for (double psi : psi_grid(samples)) {
        const FamilyMember m = family_member(spec, psi);
        for (const Vec3& q : sample_orbit(m.state, spec.params(), samples)) {
            sup = std::max(sup, norm(q) + distance(q, spec.r_fixed()));
        }
    }
    suite.add("bounding_upper", std::max(0.0, sup - bound), kTolBoundingUpper);
    suite.add("bounding_attained", std::max(0.0, bound - sup), kTolBoundingAttained);

    const EnvelopeReport env = directrix_envelope(spec, samples);
    double tangency = 0.0;
    for (const MemberTangency& mt : env.per_member) {
        tangency = std::max(tangency, mt.residual);
    }
    const bool ellipse = env.envelope.kind == ConicKind::Ellipse;
    suite.add("envelope_tangency", tangency, ellipse ? kTolTangencyEllipse : kTolTangencyOther);

    if (env.u_focus) {
        double worst = 0.0;
        for (const MemberTangency& mt : env.per_member) {
            const FamilyMember m = family_member(spec, mt.psi);
            const Vec3 geometric = reflect_point_in_line(*env.u_focus, directrix(m.state, spec.params()));
            worst = std::max(worst, distance(reflected_focus_v(spec, m), geometric));
        }
        suite.add("reflected_focus_v", worst, kTolReflectedFocus);
    }

    suite.add("simultaneous_return", simultaneous_return_check(spec, kReturnMembers), kTolReturn);

    double lowest = 1.0;
    for (double psi : psi_grid(kEccentricityGrid)) {
        lowest = std::min(lowest, family_member(spec, psi).geometry.e);
    }
    suite.add("eccentricity_minimum", std::abs(lowest - eccentricity_extremes(spec).first),
              kTolEccentricity);
}

void oracle_checks(Suite& suite, std::uint64_t seed, double dt_fraction) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < kOracleStates; ++i) {
        const RandomBoundState rs = random_bound_state(rng, kOracleMaxEccentricity);
        const double T = orbit_geometry(rs.state, rs.params).period;
        const Trajectory traj =
            integrate_numeric(rs.state, rs.params, T * dt_fraction, steps_for(1.0, dt_fraction));
        const auto compare = [&](const TrajectorySample& s) {
            worst = std::max(worst, distance(s.state.r, propagate_analytic(rs.state, rs.params, s.time).r));
        };
        for (std::size_t j = 0; j < traj.samples.size(); j += kOracleStride) {
            compare(traj.samples[j]);
        }
        compare(traj.samples.back());
    }
    suite.add("oracle_equivalence", worst, kTolOracle);
}

} // namespace

VerifyReport run_verify(const RunConfig& config) {
    config.validate();
    const Scenario sc = resolve(config);
    Suite suite(config.tolerance_scale());
    random_state_checks(suite, config.seed);
    trajectory_checks(suite, sc.member, sc.spec.params(), config.dt_fraction);
    family_checks(suite, sc.spec, config.samples);
    oracle_checks(suite, config.seed + 1, config.dt_fraction);
    return suite.finish();
}

std::string report_json(const VerifyReport& report) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const Check& c : report.checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        checks.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["checks"] = std::move(checks);
    doc["overall"] = report.overall;
    return doc.dump(2) + "\n";
}

std::string report_csv(const VerifyReport& report) {
    std::ostringstream os;
    os << "name,residual,tolerance,pass\n";
    for (const Check& c : report.checks) {
        os << c.name << ',' << format_number(c.residual) << ',' << format_number(c.tolerance) << ','
           << (c.pass ? "true" : "false") << '\n';
    }
    os << "overall,,," << (report.overall ? "true" : "false") << '\n';
    return os.str();
}

} // namespace kepfam::cli
