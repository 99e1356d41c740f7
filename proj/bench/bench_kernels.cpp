#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "yamabe/kernels.hpp"

using namespace yamabe;

namespace {

struct Fixture {
    RadialMesh mesh;
    RadialStencil st;
    std::vector<double> u, out;
    Tridiagonal sys;

    explicit Fixture(std::size_t n)
        : mesh(Background::Hyperbolic, 3, 0.0, 6.0, n), st(mesh), u(n), out(n), sys(n) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = (mesh[i] - 2.0) / 0.5;
            u[i] = 1.0 + std::exp(-x * x);
        }
    }
};

template <Exec ex>
void BM_curvature(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::curvature(ex, f.st, f.u, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec ex>
void BM_assemble(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    const StepCoefficients c{1e-3, 1.0, true};
    for (auto _ : state) {
        kernels::assemble_step(ex, f.st, f.u, c, f.sys);
        benchmark::DoNotOptimize(f.sys.rhs.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec ex>
void BM_gradient_quantity(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::gradient_quantity(ex, f.st, f.u, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_curvature<Exec::Serial>)->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_curvature<Exec::Parallel>)->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_assemble<Exec::Serial>)->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_assemble<Exec::Parallel>)->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_gradient_quantity<Exec::Serial>)->RangeMultiplier(8)->Range(512, 1 << 18);
BENCHMARK(BM_gradient_quantity<Exec::Parallel>)->RangeMultiplier(8)->Range(512, 1 << 18);

BENCHMARK_MAIN();
