#include <benchmark/benchmark.h>

#include "qsixj/sixj.hpp"
#include "qsixj/tetgeom.hpp"

using namespace qsixj;

static void BM_sixj_root_of_unity(benchmark::State& state) {
    QContext ctx(Regime::RootOfUnity, XFloat(double(state.range(0))));
    int n = int(state.range(0)) / 4;
    SixLabels s = make_six(n, n, n, n, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(sixj(ctx, s));
}
BENCHMARK(BM_sixj_root_of_unity)->Arg(50)->Arg(200)->Arg(800);

static void BM_sixj_classical(benchmark::State& state) {
    QContext ctx(Regime::Classical);
    int n = int(state.range(0));
    SixLabels s = make_six(n, n, n, n, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(sixj(ctx, s));
}
BENCHMARK(BM_sixj_classical)->Arg(10)->Arg(50)->Arg(200);

static void BM_sg_propagate(benchmark::State& state) {
    QContext ctx(Regime::RootOfUnity, XFloat(200.0));
    SixLabels s = make_six(40, 40, 48, 50, 52, 54);
    XFloat seed0 = sixj(ctx, s);
    SixLabels s1 = s;
    s1.j23 = Label(42);
    XFloat seed1 = sixj(ctx, s1);
    for (auto _ : state)
        benchmark::DoNotOptimize(sg_propagate(ctx, seed0, seed1, s, 20));
}
BENCHMARK(BM_sg_propagate);

static void BM_gram_dihedral(benchmark::State& state) {
    EdgeLengths L;
    L.curvature = Curvature::Spherical;
    for (auto& x : L.l) x = XFloat(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(dihedral(L));
}
BENCHMARK(BM_gram_dihedral);

static void BM_volume_spherical(benchmark::State& state) {
    EdgeLengths L;
    L.curvature = Curvature::Spherical;
    for (auto& x : L.l) x = consts::half_pi();
    for (auto _ : state) benchmark::DoNotOptimize(volume(L));
}
BENCHMARK(BM_volume_spherical);

BENCHMARK_MAIN();
