#include <benchmark/benchmark.h>

#include "gmid/device.hpp"
#include "gmid/lut.hpp"

namespace {

using namespace gmid;

void BM_GenerateLut(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SweepGrid grid{65e-9, 180e-9, n, 0.1, 0.9, n};
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_lut(DeviceParams::default_nmos(), grid));
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n) * n);
}
BENCHMARK(BM_GenerateLut)->RangeMultiplier(4)->Range(10, 160)->Complexity();

const DeviceLUT& table() {
    static const DeviceLUT lut = generate_lut(DeviceParams::default_pmos(), SweepGrid{});
    return lut;
}

void BM_Interp(benchmark::State& state) {
    const auto& lut = table();
    double vgs = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(interp(lut, 100e-9, vgs, Quantity::GmOverGds));
        vgs = vgs > 0.89 ? 0.1 : vgs + 0.013;
    }
}
BENCHMARK(BM_Interp);

void BM_InvertGmId(benchmark::State& state) {
    const auto& lut = table();
    double target = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_gmid(lut, 100e-9, target));
        target = target > 25.0 ? 5.0 : target + 0.7;
    }
}
BENCHMARK(BM_InvertGmId);

void BM_FormatParseLut(benchmark::State& state) {
    const auto& lut = table();
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_lut(format_lut(lut)));
    }
}
BENCHMARK(BM_FormatParseLut);

} // namespace

BENCHMARK_MAIN();
