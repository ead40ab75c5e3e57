#include <benchmark/benchmark.h>

#include <random>

#include "lunekit/body.hpp"
#include "lunekit/generators.hpp"
#include "lunekit/hull.hpp"
#include "lunekit/metrics.hpp"
#include "lunekit/polar.hpp"
#include "lunekit/wulff.hpp"

using namespace lunekit;

namespace {

std::vector<Vec> cap_cloud(int dim, int m, double spread, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec> pts;
    Vec apex = Vec::Zero(dim);
    apex[dim - 1] = 1.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);
    while ((int)pts.size() < m) {
        Vec t(dim);
        for (int k = 0; k < dim; ++k) t[k] = n(rng);
        t -= t.dot(apex) * apex;
        if (t.norm() < 1e-12) continue;
        t.normalize();
        const double a = spread * std::sqrt(u(rng));
        pts.push_back(std::cos(a) * apex + std::sin(a) * t);
    }
    return pts;
}

void BM_ConeHull3(benchmark::State& state) {
    const auto pts = cap_cloud(3, (int)state.range(0), 0.6, 21);
    for (auto _ : state)
        benchmark::DoNotOptimize(cone_hull(pts));
    state.SetComplexityN(state.range(0));
}

void BM_Diameter(benchmark::State& state) {
    const Body body = gen_random_polytope(3, (int)state.range(0), 0.6, 33);
    for (auto _ : state)
        benchmark::DoNotOptimize(diameter(body));
}

void BM_PolarCaps(benchmark::State& state) {
    ToleranceConfig cfg;
    cfg.boundary_samples = (int)state.range(0);
    const Body body = gen_reuleaux(M_PI / 3, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(polar_body(body, cfg));
}

void BM_Thickness(benchmark::State& state) {
    ToleranceConfig cfg;
    cfg.boundary_samples = 512;
    const Body body = gen_reuleaux(M_PI / 3, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(thickness(body, cfg));
}

void BM_BoundarySample(benchmark::State& state) {
    const Body body = gen_reuleaux(M_PI / 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(boundary_sample(body, (int)state.range(0), 5));
}

void BM_WulffBuild(benchmark::State& state) {
    GammaParams params;
    params.grid = (int)state.range(0);
    params.amplitude = 0.3;
    const GammaField g = gen_gamma(GammaKind::perturbed, 3, params, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_wulff(g));
}

void BM_SphericalLift(benchmark::State& state) {
    GammaParams params;
    params.grid = (int)state.range(0);
    const WulffPolytope w = build_wulff(gen_gamma(GammaKind::constant, 3, params, 0));
    for (auto _ : state)
        benchmark::DoNotOptimize(spherical_wulff(w));
}

BENCHMARK(BM_ConeHull3)->RangeMultiplier(4)->Range(16, 1024)->Complexity();
BENCHMARK(BM_Diameter)->Arg(12)->Arg(64);
BENCHMARK(BM_PolarCaps)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_Thickness);
BENCHMARK(BM_BoundarySample)->Arg(256)->Arg(1024);
BENCHMARK(BM_WulffBuild)->Arg(200)->Arg(800);
BENCHMARK(BM_SphericalLift)->Arg(200)->Arg(800);

} // namespace

BENCHMARK_MAIN();
