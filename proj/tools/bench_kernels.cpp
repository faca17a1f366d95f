// Serial-vs-OpenMP comparison for the three data-parallel kernels: the TW
// table build, Monte Carlo trial sweeps, and error-exponent curve
// tabulation. Thread counts: 1 = serial reference path, 0 = all cores.

#include <benchmark/benchmark.h>

#include "spikedetect/ldp.hpp"
#include "spikedetect/simulate.hpp"
#include "spikedetect/tracy_widom.hpp"

using namespace spikedetect;

static void BM_TwTableBuild(benchmark::State& state) {
    TwCdf::BuildOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        TwCdf table = TwCdf::build(opts);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_TwTableBuild)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_McPairedSweep(benchmark::State& state) {
    sim::SimConfig cfg;
    cfg.sensors = 32;
    cfg.snapshots = 128;
    cfg.rho = 4.0;
    cfg.trials = 100;
    cfg.seed = 7;
    cfg.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto stats = sim::paired_statistics(cfg);
        benchmark::DoNotOptimize(stats);
    }
}
BENCHMARK(BM_McPairedSweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_CurveTabulationU(benchmark::State& state) {
    const ldp::LdpContext ctx(0.2, 10.0);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto curve = ldp::ee_curve_U(ctx, 64, threads);
        benchmark::DoNotOptimize(curve);
    }
}
BENCHMARK(BM_CurveTabulationU)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
