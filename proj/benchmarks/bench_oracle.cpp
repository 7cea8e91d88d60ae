#include <benchmark/benchmark.h>

#include <numbers>

#include "tcqed/oracle.hpp"
#include "tcqed/units.hpp"

using namespace tcqed;

static void BM_LindbladSteadyState(benchmark::State& state) {
    TruncatedSystem sys;
    sys.array = ArrayParams::uniform(1, units::ghz(6.0), units::mhz(100.0),
                                     0.25 * std::numbers::pi, units::mhz(0.02));
    sys.cavity = CavityParams::homogeneous(1, units::ghz(6.0), units::mhz(10.0),
                                           units::mhz(5.0), units::ghz(6.0),
                                           units::mhz(0.1));
    sys.photon_cutoff = static_cast<int>(state.range(0));
    const bool check_cutoff = false;
    for (auto _ : state) {
        auto result = lindblad_steady_state(sys, check_cutoff);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_LindbladSteadyState)->Arg(1)->Arg(2)->Arg(4);
