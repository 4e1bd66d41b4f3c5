#include "qcdist/parameterize.hpp"
#include "qcdist/primitives.hpp"
#include "qcdist/qctheory.hpp"
#include "qcdist/report.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

namespace {

using namespace qcdist;

MeshMap warped_disk(int rings) {
    const auto mesh = make_ring_disk(rings);
    std::vector<Vec3> v;
    for (const auto& p : mesh.vertices()) v.emplace_back(p.x() + 0.1 * p.y() * p.y(), p.y() + 0.05 * std::sin(3 * p.x()), 0);
    return MeshMap(mesh, mesh.with_vertices(v));
}

void BM_FaceBeltrami(benchmark::State& state) {
    const auto map = warped_disk(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(face_beltrami(map, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(map.source().num_faces()));
}
BENCHMARK(BM_FaceBeltrami)->Arg(30)->Arg(91);

void BM_Summarize(benchmark::State& state) {
    const auto map = warped_disk(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(summarize(map, {.threads = 1}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(map.source().num_faces()));
}
BENCHMARK(BM_Summarize)->Arg(30)->Arg(91)->Unit(benchmark::kMillisecond);

void BM_Tutte(benchmark::State& state) {
    const auto cap = make_spherical_cap(static_cast<int>(state.range(0)), std::numbers::pi / 2);
    const ParamConfig cfg{.weights = state.range(1) ? TutteWeights::Cotangent : TutteWeights::Uniform};
    for (auto _ : state) benchmark::DoNotOptimize(tutte_disk(cap, cfg));
}
BENCHMARK(BM_Tutte)->Args({18, 0})->Args({18, 1})->Args({58, 0})->Args({58, 1})->Unit(benchmark::kMillisecond);

void BM_BruteForceMaxDistortion(benchmark::State& state) {
    const auto grid = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_max_distortion(std::numbers::pi / 3, 2.0, grid));
}
BENCHMARK(BM_BruteForceMaxDistortion)->Arg(1000)->Arg(100000);

}  // namespace
BENCHMARK_MAIN();
