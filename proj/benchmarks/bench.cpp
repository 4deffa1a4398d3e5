#include <benchmark/benchmark.h>

#include <random>

#include "solarplan/mc_sim.hpp"
#include "solarplan/plant_solver.hpp"
#include "test_instances.hpp"

using namespace solarplan;
using solarplan::testing::make_table1_problem;
using solarplan::testing::random_problem;

static void BM_SolvePlan(benchmark::State& state) {
    const PlanProblem problem = make_table1_problem();
    for (auto _ : state) benchmark::DoNotOptimize(solve_plan(problem));
}
BENCHMARK(BM_SolvePlan);

static void BM_EnumerateOracle(benchmark::State& state) {
    const PlanProblem problem = make_table1_problem();
    const int grid_steps = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_oracle(problem, grid_steps));
}
BENCHMARK(BM_EnumerateOracle)->Arg(100)->Arg(1000);

static void BM_SolveRandom(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<PlanProblem> problems;
    for (int i = 0; i < 32; ++i) problems.push_back(random_problem(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(solve_plan(problems[i++ % problems.size()]));
        } catch (const InfeasibleProblem&) {
        }
    }
}
BENCHMARK(BM_SolveRandom);

static void BM_RunSimulation(benchmark::State& state) {
    const McConfig cfg =
        make_mc_config(make_table1_problem(), 0.1, static_cast<int>(state.range(0)), 42);
    for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
}
BENCHMARK(BM_RunSimulation)->Arg(100)->Arg(1000);

static void BM_RunSimulationParallel(benchmark::State& state) {
    const McConfig cfg = make_mc_config(make_table1_problem(), 0.1, 1000, 42);
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg, workers));
}
BENCHMARK(BM_RunSimulationParallel)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
