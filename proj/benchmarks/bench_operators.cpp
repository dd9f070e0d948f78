#include "fracsem/extension.hpp"
#include "fracsem/fixtures.hpp"
#include "fracsem/frac_operator.hpp"
#include "fracsem/inverse.hpp"
#include "fracsem/regularity.hpp"

#include <benchmark/benchmark.h>

using namespace fracsem;

namespace {

void spectral_1d(benchmark::State& state) {
    const GridField u = sample(fixtures::gaussian(1, 1.0), 12.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(frac_apply_spectral(u, FracOrder(0.5)));
    }
}
BENCHMARK(spectral_1d)->RangeMultiplier(4)->Range(64, 4096);

void spectral_2d(benchmark::State& state) {
    const GridField u = sample(fixtures::gaussian(2, 1.0), 8.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(frac_apply_spectral(u, FracOrder(0.3)));
    }
}
BENCHMARK(spectral_2d)->Arg(64)->Arg(128)->Arg(256);

void semigroup_grid(benchmark::State& state) {
    const GridField u = sample(fixtures::gaussian(1, 1.0), 12.0, 256);
    for (auto _ : state) {
        benchmark::DoNotOptimize(frac_apply_semigroup(u, FracOrder(0.5)));
    }
}
BENCHMARK(semigroup_grid);

void semigroup_point(benchmark::State& state) {
    const AnalyticField g = fixtures::gaussian(1, 1.0);
    const std::array<double, 1> x{0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(frac_apply_semigroup(g, x, FracOrder(0.25)));
    }
}
BENCHMARK(semigroup_point);

void pointwise(benchmark::State& state) {
    const AnalyticField g = fixtures::gaussian(1, 1.0);
    const std::array<double, 1> x{0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(frac_apply_pointwise(g, x, FracOrder(0.75)));
    }
}
BENCHMARK(pointwise);

void riesz(benchmark::State& state) {
    const AnalyticField f = fixtures::bump(1, 1.0);
    const std::array<double, 1> x{0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(riesz_convolve(f, x, 0.25));
    }
}
BENCHMARK(riesz);

void extension_48(benchmark::State& state) {
    const GridField u = sample(fixtures::gaussian(1, 1.0), 12.0, 256);
    const auto y = log_y_nodes();
    for (auto _ : state) {
        benchmark::DoNotOptimize(extend(u, FracOrder(0.3), y));
    }
}
BENCHMARK(extension_48);

void alpha_fit(benchmark::State& state) {
    const GridField u = sample(fixtures::lacunary(1, 0.5, 30), kPi, 256);
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_alpha(u, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(alpha_fit)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
