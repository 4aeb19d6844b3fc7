#include "nighedge/hedging.hpp"
#include "nighedge/mmm.hpp"
#include "nighedge/quad.hpp"
#include "nighedge/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace nighedge;

namespace {

const NigParams paper = NigParams::spx_2016();

void BM_WTransform(benchmark::State& state) {
    double v = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(w_transform(v, 1.75, paper));
        v = v < 1e4 ? v + 0.25 : 0.0;
    }
}
BENCHMARK(BM_WTransform);

void BM_EngineBuild(benchmark::State& state) {
    const MmmScalars s = mmm_scalars(paper);
    QuadConfig cfg;
    cfg.n_points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(FourierEngine(paper, s, cfg));
}
BENCHMARK(BM_EngineBuild)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_ComputeI(benchmark::State& state) {
    const FourierEngine engine(paper, mmm_scalars(paper), QuadConfig{});
    for (auto _ : state) benchmark::DoNotOptimize(engine.compute_I(2300.0, 0.5, 2350.0));
}
BENCHMARK(BM_ComputeI)->Unit(benchmark::kMicrosecond);

void BM_EvaluateThreeStrikes(benchmark::State& state) {
    const FourierEngine engine(paper, mmm_scalars(paper), QuadConfig{});
    const double strikes[] = {2300.0, 2350.0, 2400.0};
    for (auto _ : state) benchmark::DoNotOptimize(engine.evaluate(2300.0, 0.5, strikes));
}
BENCHMARK(BM_EvaluateThreeStrikes)->Unit(benchmark::kMicrosecond);

void BM_BatchFft(benchmark::State& state) {
    const FourierEngine engine(paper, mmm_scalars(paper), QuadConfig{});
    for (auto _ : state) benchmark::DoNotOptimize(engine.batch_fft(2300.0, 0.5, 2350.0));
}
BENCHMARK(BM_BatchFft)->Unit(benchmark::kMillisecond);

void BM_HedgeYear(benchmark::State& state) {
    const FourierEngine engine(paper, mmm_scalars(paper), QuadConfig{});
    const PricePath path = simulate_path({});
    const double strikes[] = {2300.0, 2350.0, 2400.0};
    for (auto _ : state) benchmark::DoNotOptimize(hedge_series(path, strikes, engine));
}
BENCHMARK(BM_HedgeYear)->Unit(benchmark::kMillisecond);

void BM_SimulatePath(benchmark::State& state) {
    SimConfig c;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(c));
        ++c.seed;
    }
}
BENCHMARK(BM_SimulatePath)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
