// Serial vs OpenMP assembly of the transport matrix, for both the
// quadrature and the closed-form route. The parallel path must stay
// bit-identical to the serial one, so this benchmark is the only place
// where the two are allowed to differ: in wall time.

#include <benchmark/benchmark.h>

#include "sfd/lagrangian.hpp"
#include "sfd/wasserstein.hpp"

namespace {

sfd::LagrangianGrid grid_of(int n_cells) {
    const auto [grid, g] = sfd::build_initial(sfd::preset_datum("cos2", n_cells));
    (void)g;
    return grid;
}

template <sfd::Assembly Mode>
void bm_quadrature(benchmark::State& state) {
    const auto grid = grid_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfd::assemble_quadrature(grid, Mode));
    }
}

template <sfd::Assembly Mode>
void bm_closed_form(benchmark::State& state) {
    const auto grid = grid_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfd::assemble_closed_form(grid, Mode));
    }
}

}  // namespace

BENCHMARK(bm_quadrature<sfd::Assembly::serial>)->Arg(50)->Arg(100)->Arg(200)->Arg(400);
BENCHMARK(bm_quadrature<sfd::Assembly::parallel>)->Arg(50)->Arg(100)->Arg(200)->Arg(400);
BENCHMARK(bm_closed_form<sfd::Assembly::serial>)->Arg(50)->Arg(100)->Arg(200)->Arg(400);
BENCHMARK(bm_closed_form<sfd::Assembly::parallel>)->Arg(50)->Arg(100)->Arg(200)->Arg(400);

BENCHMARK_MAIN();
