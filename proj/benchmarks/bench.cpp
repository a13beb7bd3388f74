// Microbenchmarks for the hot paths: pricing, master solves, and the full
// solver on a mid-size instance. Instance setup stays outside the timed loop.

#include <benchmark/benchmark.h>

#include <vector>

#include "cachesched/colgen.hpp"
#include "cachesched/exact.hpp"
#include "cachesched/greedy.hpp"
#include "cachesched/instance.hpp"
#include "cachesched/rounding.hpp"

namespace {

using namespace cachesched;

Instance bench_instance(int num_slots, int num_users, int num_contents) {
    GenParams params;
    params.num_slots = num_slots;
    params.num_users = num_users;
    params.num_contents = num_contents;
    params.seed = 7;
    return generate_instance(params);
}

std::vector<double> mid_duals(int num_slots) {
    return std::vector<double>(static_cast<std::size_t>(num_slots), -0.5);
}

void bm_pricing_graph(benchmark::State& state) {
    const int num_slots = static_cast<int>(state.range(0));
    const Instance inst = bench_instance(num_slots, 200, 50);
    const std::vector<double> pi = mid_duals(num_slots);
    for (auto _ : state) {
        for (int f = 0; f < inst.num_contents; ++f)
            benchmark::DoNotOptimize(solve_subproblem_graph(f, pi, inst));
    }
    state.SetItemsProcessed(state.iterations() * inst.num_contents);
}
BENCHMARK(bm_pricing_graph)->Arg(8)->Arg(16)->Arg(24)->Arg(48);

void bm_pricing_bruteforce(benchmark::State& state) {
    const int num_slots = static_cast<int>(state.range(0));
    const Instance inst = bench_instance(num_slots, 200, 50);
    const std::vector<double> pi = mid_duals(num_slots);
    for (auto _ : state) {
        for (int f = 0; f < inst.num_contents; ++f)
            benchmark::DoNotOptimize(solve_subproblem_bruteforce(f, pi, inst));
    }
    state.SetItemsProcessed(state.iterations() * inst.num_contents);
}
BENCHMARK(bm_pricing_bruteforce)->Arg(8)->Arg(12)->Arg(16);

void bm_master_solve(benchmark::State& state) {
    const Instance inst = bench_instance(24, 200, 50);
    ColumnPool pool(inst);
    run_cga(inst, pool); // converged pool sizes the master realistically
    for (auto _ : state) benchmark::DoNotOptimize(solve_rmp(pool, inst));
}
BENCHMARK(bm_master_solve);

void bm_generation_pass(benchmark::State& state) {
    const Instance inst = bench_instance(24, 200, 50);
    for (auto _ : state) {
        ColumnPool pool(inst);
        benchmark::DoNotOptimize(run_cga(inst, pool));
    }
}
BENCHMARK(bm_generation_pass);

void bm_full_solver(benchmark::State& state) {
    const Instance inst = bench_instance(12, 100, 30);
    for (auto _ : state) benchmark::DoNotOptimize(run_rcga(inst));
}
BENCHMARK(bm_full_solver);

void bm_popularity_greedy(benchmark::State& state) {
    const Instance inst = bench_instance(24, 600, 200);
    for (auto _ : state) benchmark::DoNotOptimize(run_pbc(inst));
}
BENCHMARK(bm_popularity_greedy);

void bm_generate_instance(benchmark::State& state) {
    GenParams params;
    params.num_slots = 24;
    params.num_users = 600;
    params.num_contents = 200;
    params.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(generate_instance(params));
}
BENCHMARK(bm_generate_instance);

} // namespace

BENCHMARK_MAIN();
