#include <benchmark/benchmark.h>

#include <random>

#include "specseq/matrix.hpp"

using namespace specseq;

namespace {

Matrix random_sparse(Field f, int n, double fill, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<long> val(-3, 3);
    Matrix m(f, n, n + n / 2);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (coin(rng) < fill)
                m.set(i, j, val(rng));
    return m;
}

void bm_rref_rational(benchmark::State& state) {
    Matrix m = random_sparse(Field::rationals(), static_cast<int>(state.range(0)), 0.15, 42);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.rref().pivots.size());
}

void bm_rref_fp(benchmark::State& state) {
    Matrix m = random_sparse(Field::prime(101), static_cast<int>(state.range(0)), 0.15, 42);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.rref().pivots.size());
}

void bm_kernel_rational(benchmark::State& state) {
    Matrix m = random_sparse(Field::rationals(), static_cast<int>(state.range(0)), 0.15, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.kernel().rows());
}

} // namespace

BENCHMARK(bm_rref_rational)->Arg(40)->Arg(120)->Arg(240);
BENCHMARK(bm_rref_fp)->Arg(40)->Arg(120)->Arg(240);
BENCHMARK(bm_kernel_rational)->Arg(40)->Arg(120);

BENCHMARK_MAIN();
