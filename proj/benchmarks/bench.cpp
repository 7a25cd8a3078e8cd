#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "carpet/family.hpp"
#include "carpet/hurwitz.hpp"
#include "carpet/render.hpp"
#include "carpet/symbolic.hpp"
#include "carpet/trees.hpp"

using namespace carpet;

namespace {

const family::PersianCarpetMap& carpet_map() {
    static const auto pc = family::build_f_lambda(Complex(1e-3, 0.0));
    return pc;
}

std::vector<SpherePoint> cycle_of(const family::PersianCarpetMap& pc) {
    return {pc.cycle.begin(), pc.cycle.end()};
}

std::vector<SpherePoint> sample_points(int count) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> box(-2.0, 3.0);
    std::vector<SpherePoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
        pts.push_back(SpherePoint::from_complex({box(rng), box(rng)}));
    return pts;
}

render::Viewport window(int px) {
    render::Viewport vp;
    vp.center = Complex(0.5, 0.0);
    vp.width = vp.height = 5.0;
    vp.px_w = vp.px_h = px;
    return vp;
}

void BM_EvalMap(benchmark::State& state) {
    const auto& pc = carpet_map();
    const auto pts = sample_points(256);
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval(pc.map, pts[k++ & 255]));
    }
}
BENCHMARK(BM_EvalMap);

void BM_BuildFamily(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(family::build_f_lambda(Complex(1e-3, 0.0)));
}
BENCHMARK(BM_BuildFamily);

void BM_DeriveCoefficients(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(family::derive_coefficients(Complex(1e-3, 0.0)));
}
BENCHMARK(BM_DeriveCoefficients);

void BM_ClassifyPoint(benchmark::State& state) {
    const auto& pc = carpet_map();
    const auto cyc = cycle_of(pc);
    const auto pts = sample_points(64);
    std::size_t k = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            render::classify_point(pc.map, pts[k++ & 63], cyc, 600, 2e-10));
}
BENCHMARK(BM_ClassifyPoint);

void BM_RenderDynamicalTile(benchmark::State& state) {
    const auto& pc = carpet_map();
    const auto cyc = cycle_of(pc);
    const auto vp = window(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(render::render_dynamical(pc.map, cyc, vp, 600, 2e-10));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RenderDynamicalTile)->Arg(32)->Arg(64);

void BM_RenderParameterTile(benchmark::State& state) {
    render::Viewport vp;
    vp.center = Complex(0.0, 0.0);
    vp.width = vp.height = 0.02;
    vp.px_w = vp.px_h = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(render::render_parameter(vp, 1500, 1e-3));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RenderParameterTile)->Arg(16)->Arg(32);

void BM_ConnectedComponents(benchmark::State& state) {
    const auto& pc = carpet_map();
    const auto grid =
        render::render_dynamical(pc.map, cycle_of(pc), window(64), 600, 2e-10);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            render::connected_components(grid, [](int16_t b) { return b < 0; }));
}
BENCHMARK(BM_ConnectedComponents);

void BM_LeadingEigenvalue(benchmark::State& state) {
    const auto tree = trees::builtin_tree(trees::TreeKind::HP, {1, 2, 2, 1});
    const auto m = trees::transition_matrix(tree);
    for (auto _ : state) benchmark::DoNotOptimize(trees::leading_eigenvalue(m));
}
BENCHMARK(BM_LeadingEigenvalue);

void BM_PcfRoots(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(family::solve_pcf_parameter(int(state.range(0))));
}
BENCHMARK(BM_PcfRoots)->Arg(4)->Arg(6)->Arg(8);

void BM_MagnitudeLadder(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(family::magnitude_ladder_check(Complex(1e-3, 0.0)));
}
BENCHMARK(BM_MagnitudeLadder);

void BM_AdmissibleWords(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(symbolic::admissible_words(int(state.range(0))));
}
BENCHMARK(BM_AdmissibleWords)->Arg(8)->Arg(12);

void BM_HurwitzBruteForce(benchmark::State& state) {
    const hurwitz::BranchData data{6, {{6}, {4, 1, 1}, {2, 2, 1, 1}}};
    for (auto _ : state)
        benchmark::DoNotOptimize(hurwitz::brute_force_realizable(data));
}
BENCHMARK(BM_HurwitzBruteForce);

} // namespace

BENCHMARK_MAIN();
