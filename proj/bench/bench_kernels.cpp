// Serial reference against the OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "mdd/constructions.hpp"
#include "mdd/kernels.hpp"
#include "mdd/oracle.hpp"
#include "mdd/rng.hpp"

namespace {

using namespace mdd;

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_WorstBox(benchmark::State& state) {
    const Distortion d = ordered_pair_distortion(Copula::parse("clayton1"));
    const std::size_t n_boxes = 20000;
    Rng rng(7, 0);
    std::vector<double> lo(2 * n_boxes), hi(2 * n_boxes);
    for (std::size_t i = 0; i < lo.size(); ++i) {
        double a = rng.uniform(), b = rng.uniform();
        lo[i] = std::min(a, b);
        hi[i] = std::max(a, b);
    }
    for (auto _ : state) benchmark::DoNotOptimize(kernels::worst_box_volume(d, lo, hi, exec_of(state)));
}
BENCHMARK(BM_WorstBox)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CountBelow(benchmark::State& state) {
    const Sample s = oracle::sample_copula(Copula::parse("fgm:n=2,theta=0.5"), 100000, 1);
    std::vector<double> q;
    for (int i = 0; i < 25; ++i) q.insert(q.end(), {(i % 5 + 0.5) / 5, (i / 5 + 0.5) / 5});
    for (auto _ : state) benchmark::DoNotOptimize(kernels::count_below(s, q, exec_of(state)));
}
BENCHMARK(BM_CountBelow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SampleCopula(benchmark::State& state) {
    const Copula c = Copula::parse("clayton1");
    for (auto _ : state) benchmark::DoNotOptimize(oracle::sample_copula(c, 100000, 3, exec_of(state)));
}
BENCHMARK(BM_SampleCopula)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
