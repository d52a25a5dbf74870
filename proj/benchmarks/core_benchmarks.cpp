#include <benchmark/benchmark.h>

#include "ddomp/channel_sim.hpp"
#include "ddomp/dictionary.hpp"
#include "ddomp/seed.hpp"
#include "ddomp/solver.hpp"
#include "ddomp/window.hpp"

namespace {

using namespace ddomp;

struct Fixture {
    FrameSpec frame{128, 64, 4};
    DDGridSpec grid{4, 16, 2};
    WindowVector window = build_window(frame);
    PilotSequence pilot = gen_pilot(128, 7);
    WindowedDictionary dict = build_dictionary(pilot.x, frame, grid, window);
    VecC y;

    Fixture() {
        ChannelDrawConfig chan;
        chan.seed = derive_seed(5, SeedStream::channel, 0);
        const PathSet paths = draw_channel(chan, grid);
        const VecC r = propagate(pilot, frame, paths, NoiseConfig{20.0},
                                 derive_seed(5, SeedStream::noise, 0));
        y = receiver_front_end(r, frame, window);
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

void BM_build_dictionary(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        WindowedDictionary d = build_dictionary(f.pilot.x, f.frame, f.grid, f.window);
        benchmark::DoNotOptimize(d.psi.data());
    }
}
BENCHMARK(BM_build_dictionary)->Unit(benchmark::kMicrosecond);

void BM_correlate(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        VecR c = correlate(f.dict, f.y);
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(BM_correlate)->Unit(benchmark::kMicrosecond);

void BM_propagate_front_end(benchmark::State& state) {
    const Fixture& f = fixture();
    ChannelDrawConfig chan;
    chan.seed = derive_seed(5, SeedStream::channel, 1);
    const PathSet paths = draw_channel(chan, f.grid);
    for (auto _ : state) {
        const VecC r = propagate(f.pilot, f.frame, paths, NoiseConfig{20.0}, 3);
        VecC y = receiver_front_end(r, f.frame, f.window);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_propagate_front_end)->Unit(benchmark::kMicrosecond);

void BM_da_omp_solve(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        SparseEstimate est = da_omp(f.dict, f.y);
        benchmark::DoNotOptimize(est.support.data());
    }
}
BENCHMARK(BM_da_omp_solve)->Unit(benchmark::kMicrosecond);

void BM_omp_baseline_solve(benchmark::State& state) {
    const Fixture& f = fixture();
    const double sigma2 = NoiseConfig{20.0}.sigma2();
    for (auto _ : state) {
        SparseEstimate est =
            omp_baseline(f.dict, f.y, StoppingRule::residual_threshold(), sigma2);
        benchmark::DoNotOptimize(est.support.data());
    }
}
BENCHMARK(BM_omp_baseline_solve)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
