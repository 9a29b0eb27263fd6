#include <benchmark/benchmark.h>

#include <complex>
#include <map>
#include <vector>

#include "heatback/error_analysis.hpp"
#include "heatback/experiment.hpp"
#include "heatback/forward_solver.hpp"
#include "heatback/tikhonov_solver.hpp"
#include "heatback/volterra_operator.hpp"

namespace {

using namespace heatback;

ProblemConfig config_for(int m) {
    ProblemConfig cfg;
    cfg.m = m;
    cfg.n_modes = forward::default_mode_count(TimeGrid(cfg.t0, m));
    return cfg;
}

// Assembled once per problem size and shared across iterations; assembly
// cost is measured separately by BM_AssembleOperator.
const experiment::Instance& shared_instance(int m) {
    static std::map<int, experiment::Instance> cache;
    auto it = cache.find(m);
    if (it == cache.end()) {
        experiment::TruthProfile profile;
        it = cache.emplace(m, experiment::make_instance(config_for(m), profile)).first;
    }
    return it->second;
}

void BM_AssembleOperator(benchmark::State& state) {
    const ProblemConfig cfg = config_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        volterra::OperatorMatrix a = volterra::assemble_operator(cfg);
        benchmark::DoNotOptimize(a.a.data());
    }
}
BENCHMARK(BM_AssembleOperator)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ForwardSolve(benchmark::State& state) {
    const ProblemConfig cfg = config_for(static_cast<int>(state.range(0)));
    const SampledFunction h = experiment::generate_truth({}, cfg);
    for (auto _ : state) {
        SampledFunction u = forward::solve_forward(h, cfg.x0, cfg);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(BM_ForwardSolve)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_FdOracle(benchmark::State& state) {
    const ProblemConfig cfg = config_for(400);
    const SampledFunction h = experiment::generate_truth({}, cfg);
    for (auto _ : state) {
        forward::TemperatureField field =
            forward::fd_oracle_solve(h, static_cast<int>(state.range(0)), cfg);
        benchmark::DoNotOptimize(field.values.data());
    }
}
BENCHMARK(BM_FdOracle)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveRegularized(benchmark::State& state) {
    const experiment::Instance& inst = shared_instance(static_cast<int>(state.range(0)));
    const SampledFunction f = experiment::add_noise(inst.f0, 1e-3 * l2_norm(inst.f0), 7);
    for (auto _ : state) {
        SampledFunction h = inst.solver.solve(f, 1e-6);
        benchmark::DoNotOptimize(h.values.data());
    }
}
BENCHMARK(BM_SolveRegularized)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SelectAlpha(benchmark::State& state) {
    const experiment::Instance& inst = shared_instance(static_cast<int>(state.range(0)));
    const double delta = 1e-3 * l2_norm(inst.f0);
    const SampledFunction f = experiment::add_noise(inst.f0, delta, 7);
    for (auto _ : state) {
        tikhonov::RegularizedSolution sol = inst.solver.select_alpha(f, delta);
        benchmark::DoNotOptimize(sol.alpha);
    }
}
BENCHMARK(BM_SelectAlpha)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Multiplier(benchmark::State& state) {
    const std::vector<double> grid = analysis::default_tau_grid();
    for (auto _ : state) {
        double acc = 0.0;
        for (double tau : grid) acc += analysis::spectral_multiplier(tau, 0.5).magnitude;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_Multiplier)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
