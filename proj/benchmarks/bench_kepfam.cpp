#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kepfam/family.hpp"
#include "kepfam/kepler_equation.hpp"
#include "kepfam/propagator.hpp"
#include "kepfam/sampling.hpp"
#include "kepfam/state.hpp"

namespace {

using namespace kepfam;

const PhaseState kS1{{1.0, 0.0, 0.0}, {0.0, 1.2, 0.0}};

void BM_SolveKepler(benchmark::State& state) {
    const double e = static_cast<double>(state.range(0)) / 100.0;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> mean(-10.0, 10.0);
    std::vector<double> anomalies(1024);
    for (double& m : anomalies) {
        m = mean(rng);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_kepler(anomalies[i++ & 1023], e));
    }
}
BENCHMARK(BM_SolveKepler)->Arg(0)->Arg(44)->Arg(90)->Arg(99);

void BM_PropagateAnalytic(benchmark::State& state) {
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_analytic(kS1, PhysParams{}, t));
        t += 0.37;
    }
}
BENCHMARK(BM_PropagateAnalytic);

void BM_Rk4OnePeriod(benchmark::State& state) {
    const double T = orbit_geometry(kS1, PhysParams{}).period;
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_numeric(kS1, PhysParams{}, T / steps, steps));
    }
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Rk4OnePeriod)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SecondFocusEquivalence(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::vector<RandomBoundState> states;
    for (int i = 0; i < 1000; ++i) {
        states.push_back(random_bound_state(rng, 0.95));
    }
    for (auto _ : state) {
        double worst = 0.0;
        for (const RandomBoundState& rs : states) {
            const ConservedSet c = conserved_quantities(rs.state, rs.params);
            const Vec3 gap = geometric_second_focus(rs.state, rs.params).point - c.K / (rs.params.mu * c.H);
            worst = std::max(worst, norm(gap));
        }
        benchmark::DoNotOptimize(worst);
    }
}
BENCHMARK(BM_SecondFocusEquivalence)->Unit(benchmark::kMicrosecond);

void BM_DirectrixEnvelope(benchmark::State& state) {
    const double a = 1.0 / 0.56;
    const double ratio = static_cast<double>(state.range(1)) / 100.0;
    const FamilySpec spec =
        FamilySpec::make(PhysParams{}, -0.28, {ratio * a, 0.0, 0.0}, {0.0, 0.0, 1.0});
    const int members = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(directrix_envelope(spec, members));
    }
}
BENCHMARK(BM_DirectrixEnvelope)
    ->Args({256, 56})
    ->Args({256, 100})
    ->Args({256, 150})
    ->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
