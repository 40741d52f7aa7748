#include "indopt/constructors.hpp"
#include "indopt/continuous.hpp"
#include "indopt/geometry.hpp"
#include "indopt/model.hpp"
#include "indopt/oracle.hpp"
#include "indopt/principal.hpp"

#include <benchmark/benchmark.h>

#include <memory>

namespace {

indopt::ModelInstance bench_instance() {
    indopt::ModelInstance m;
    m.outcomes = {{"x1", 0.0}, {"x2", 1.0}, {"x3", 2.0}};
    m.efforts = {{"e1", 0.0}, {"e2", 0.1}, {"e3", 0.3}};
    m.f = {{0.35, 0.50, 0.15}, {0.05, 0.50, 0.45}, {0.10, 0.15, 0.75}};
    return m;
}

indopt::ContinuousModel bench_continuous() {
    indopt::ContinuousModel cm;
    cm.family = std::make_shared<indopt::PowerFamily>(3.0);
    cm.cost = {0.5, 2.0};
    cm.payoff = {};
    return cm;
}

void BM_min_wage(benchmark::State& state) {
    const auto m = bench_instance();
    const auto d = indopt::induce_signal_distribution(m, indopt::full_revelation(m));
    for (auto _ : state) benchmark::DoNotOptimize(indopt::min_wage(m, d, 2));
}
BENCHMARK(BM_min_wage);

void BM_best_effort(benchmark::State& state) {
    const auto m = bench_instance();
    const auto pi = indopt::full_revelation(m);
    for (auto _ : state) benchmark::DoNotOptimize(indopt::best_effort(m, pi));
}
BENCHMARK(BM_best_effort);

void BM_min_cost_over_hull(benchmark::State& state) {
    const auto m = bench_instance();
    const auto hull = indopt::hull_of_f(m, 2);
    const indopt::Vec costs = {0.0, 0.1, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(indopt::min_cost_over_hull(hull, 2, costs));
}
BENCHMARK(BM_min_cost_over_hull);

void BM_full_extraction(benchmark::State& state) {
    const auto m = bench_instance();
    for (auto _ : state) benchmark::DoNotOptimize(indopt::full_extraction(m));
}
BENCHMARK(BM_full_extraction);

void BM_principal_foc(benchmark::State& state) {
    const auto cm = bench_continuous();
    const indopt::ThresholdStructure t{indopt::ThresholdStructure::Kind::Single, 0.45, 1.0};
    double e = 0.27;
    for (auto _ : state) {
        benchmark::DoNotOptimize(indopt::principal_foc(cm, t, e));
    }
}
BENCHMARK(BM_principal_foc);

void BM_oracle_grid(benchmark::State& state) {
    const auto m = bench_instance();
    for (auto _ : state) benchmark::DoNotOptimize(indopt::grid_search_binary(m, 0.1, 10'000'000, 1));
}
BENCHMARK(BM_oracle_grid);

} // namespace

BENCHMARK_MAIN();
