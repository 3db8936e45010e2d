#include <benchmark/benchmark.h>

#include "syncnet/syncnet.hpp"

using namespace syncnet;

namespace {

NetworkSystem ring_network(std::size_t n) {
    return NetworkSystem(build_regular(RegularKind::Ring, n), lorenz_field(LorenzParams::classic()),
                         CouplingMatrix::identity(3), 1.0);
}

}  // namespace

static void BM_Rhs(benchmark::State& state) {
    const NetworkSystem sys = ring_network(static_cast<std::size_t>(state.range(0)));
    const State x = spread_initial_condition(State{-7, 10, 5}, sys.vertex_count(), 0.01);
    State out(x.size());
    RhsWorkspace ws;
    for (auto _ : state) {
        sys.rhs(0.0, x, out, ws);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rhs)->Arg(3)->Arg(32)->Arg(512);

static void BM_Rk4Step(benchmark::State& state) {
    const NetworkSystem sys = ring_network(static_cast<std::size_t>(state.range(0)));
    const State x0 = spread_initial_condition(State{-7, 10, 5}, sys.vertex_count(), 0.01);
    for (auto _ : state) {
        State end = rk4_run(sys, x0, IntegrationOptions{1e-3, 1, 1, 0.0}, nullptr);
        benchmark::DoNotOptimize(end.data());
    }
}
BENCHMARK(BM_Rk4Step)->Arg(3)->Arg(32)->Arg(512);

static void BM_Jacobi(benchmark::State& state) {
    const Graph g = build_random(ErdosRenyi{0.3}, static_cast<std::size_t>(state.range(0)), 1);
    const Matrix l = laplacian(g);
    for (auto _ : state) {
        SpectralDecomp d = jacobi_eig(l);
        benchmark::DoNotOptimize(d.eigenvalues.data());
    }
}
BENCHMARK(BM_Jacobi)->Arg(10)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_BetaSampled(benchmark::State& state) {
    const CouplingMatrix h(Matrix{{1, 0.2, 0}, {0.2, 2, 0}, {0, 0, 3}});
    const auto grid = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(beta_sampled(LorenzParams::classic(), h, grid));
}
BENCHMARK(BM_BetaSampled)->Arg(11)->Arg(41)->Unit(benchmark::kMillisecond);

static void BM_BetaClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(beta_closed_form(LorenzParams::classic()));
}
BENCHMARK(BM_BetaClosedForm);

BENCHMARK_MAIN();
