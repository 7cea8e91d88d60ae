#include <benchmark/benchmark.h>

#include <numbers>

#include "tcqed/numerics.hpp"
#include "tcqed/spectroscopy.hpp"
#include "tcqed/units.hpp"

using namespace tcqed;

static void BM_SteadyStateReflection(benchmark::State& state) {
    const int n_cells = static_cast<int>(state.range(0));
    const auto array = ArrayParams::uniform(n_cells, units::ghz(6.0),
                                            units::mhz(100.0),
                                            0.2 * std::numbers::pi,
                                            units::mhz(0.02));
    auto cavity = CavityParams::homogeneous(n_cells, units::ghz(6.0),
                                            units::mhz(10.0), units::mhz(5.0));
    cavity.drive_freq = units::ghz(6.0) + units::mhz(3.0);
    for (auto _ : state) {
        auto point = steady_state_reflection(array, cavity);
        benchmark::DoNotOptimize(point);
    }
    state.SetComplexityN(n_cells);
}
BENCHMARK(BM_SteadyStateReflection)->Arg(4)->Arg(18)->Arg(78)->Complexity();

static void BM_ReflectionMap(benchmark::State& state) {
    const auto array = ArrayParams::uniform(4, units::ghz(6.0), units::mhz(100.0),
                                            0.25 * std::numbers::pi,
                                            units::mhz(0.02));
    CavityParams cavity;
    cavity.cavity_freq = units::ghz(6.0);
    cavity.kappa = units::mhz(10.0);
    cavity.coupling_vector = units::mhz(5.0) * coupling_pattern_alternating_sign_8();
    const auto phis = linspace(0.0, std::numbers::pi, 21);
    const auto drives = linspace(units::ghz(6.0) - units::mhz(250.0),
                                 units::ghz(6.0) + units::mhz(250.0), 51);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto map = reflection_map(array, cavity, phis, drives, jobs);
        benchmark::DoNotOptimize(map);
    }
}
BENCHMARK(BM_ReflectionMap)->Arg(1)->Arg(4);
