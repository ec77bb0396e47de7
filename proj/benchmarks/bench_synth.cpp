#include <benchmark/benchmark.h>

#include "gmid/device.hpp"
#include "gmid/synth.hpp"
#include "gmid/verify.hpp"

namespace {

using namespace gmid;

struct Tables {
    DeviceLUT n = generate_lut(DeviceParams::default_nmos(), SweepGrid{});
    DeviceLUT p = generate_lut(DeviceParams::default_pmos(), SweepGrid{});
};

const Tables& tables() {
    static const Tables t;
    return t;
}

void BM_Synthesize(benchmark::State& state) {
    const auto& t = tables();
    const auto spec = AmpSpec::reference();
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(spec, t.n, t.p));
}
BENCHMARK(BM_Synthesize);

void BM_Report(benchmark::State& state) {
    const auto& t = tables();
    const auto spec = AmpSpec::reference();
    const auto d = synthesize(spec, t.n, t.p);
    for (auto _ : state) benchmark::DoNotOptimize(report(d, t.n, t.p, spec));
}
BENCHMARK(BM_Report);

void BM_Bode(benchmark::State& state) {
    const auto& t = tables();
    const auto spec = AmpSpec::reference();
    const auto r = report(synthesize(spec, t.n, t.p), t.n, t.p, spec);
    const int ppd = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bode(r, 1e3, 1e9, ppd));
}
BENCHMARK(BM_Bode)->Arg(10)->Arg(50)->Arg(500);

void BM_SolveAlpha(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_alpha(61.3, 0.0931, 1.0, 4.368e-12, 1e-12));
    }
}
BENCHMARK(BM_SolveAlpha);

} // namespace

BENCHMARK_MAIN();
