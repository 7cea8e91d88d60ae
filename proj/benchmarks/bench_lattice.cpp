#include <benchmark/benchmark.h>

#include <numbers>

#include "tcqed/lattice.hpp"
#include "tcqed/units.hpp"

using namespace tcqed;

static void BM_Eigensystem(benchmark::State& state) {
    const auto params =
        ArrayParams::uniform(static_cast<int>(state.range(0)), units::ghz(6.0),
                             units::mhz(100.0), 0.2 * std::numbers::pi);
    for (auto _ : state) {
        auto modes = eigensystem(params);
        benchmark::DoNotOptimize(modes);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigensystem)->Arg(6)->Arg(18)->Arg(78)->Complexity();

static void BM_BulkMomenta(benchmark::State& state) {
    const auto params =
        ArrayParams::uniform(static_cast<int>(state.range(0)), units::ghz(6.0),
                             units::mhz(100.0), 0.2 * std::numbers::pi);
    for (auto _ : state) {
        auto momenta = bulk_momenta(params);
        benchmark::DoNotOptimize(momenta);
    }
}
BENCHMARK(BM_BulkMomenta)->Arg(10)->Arg(78);
