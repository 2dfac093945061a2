#include <benchmark/benchmark.h>

#include <random>

#include "ozf/hyperdominant.hpp"
#include "ozf/jacobi.hpp"
#include "ozf/multiplier.hpp"
#include "ozf/periodic_banded.hpp"
#include "ozf/simulator.hpp"

using namespace ozf;

namespace {

Matrix random_stochastic(std::size_t n, std::size_t terms) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> wdist(0.1, 1.0);
    std::vector<double> w(terms);
    double total = 0.0;
    for (double& x : w) total += x = wdist(rng);
    Matrix a(n, n);
    for (double x : w) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i)
            std::swap(p[i - 1], p[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)]);
        for (std::size_t i = 0; i < n; ++i) a(i, p[i]) += x / total;
    }
    return a;
}

void BM_BirkhoffDecompose(benchmark::State& state) {
    const Matrix a = random_stochastic(static_cast<std::size_t>(state.range(0)), 10);
    for (auto _ : state) benchmark::DoNotOptimize(birkhoff_decompose(a));
}
BENCHMARK(BM_BirkhoffDecompose)->Arg(4)->Arg(8)->Arg(16);

void BM_EnumerateBasis(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const auto b = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_basis(t, b));
}
BENCHMARK(BM_EnumerateBasis)->Args({5, 2})->Args({7, 3})->Args({9, 4});

void BM_PeriodicConicDecompose(benchmark::State& state) {
    const auto basis = enumerate_basis(5, 2);
    std::vector<PeriodicConicTerm> terms{{0.7, basis[3]}, {0.4, basis[17]}, {1.2, basis[29]}};
    const auto m = conic_sum_periodic(terms, 5, 2);
    for (auto _ : state) benchmark::DoNotOptimize(conic_decompose_periodic(m));
}
BENCHMARK(BM_PeriodicConicDecompose);

void BM_SearchFir(benchmark::State& state) {
    const RationalPlant g({-1.0}, {1.0, -1.6 * std::cos(0.5236), 0.64});
    const auto b = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            search_fir(g, b, FrequencyGrid::for_bandwidth(b), MultiplierMode::hyperdominant));
}
BENCHMARK(BM_SearchFir)->Arg(1)->Arg(2)->Arg(3);

void BM_JacobiEig(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(max_eigenpair(a));
}
BENCHMARK(BM_JacobiEig)->Arg(32)->Arg(64)->Arg(128);

void BM_Simulate(benchmark::State& state) {
    SimConfig cfg{RationalPlant({0.0, -0.8}, {1.0, -0.4}), random_monotone(3),
                  Signal::impulse(0), static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg));
}
BENCHMARK(BM_Simulate)->Arg(64)->Arg(256)->Arg(1024);

void BM_CheckPair(benchmark::State& state) {
    const auto basis = enumerate_basis(7, 3);
    const auto n = random_monotone(9);
    const Signal v(0, {1.0, -0.4, 2.0, 0.3, -1.7, 0.9});
    const SequencePair p{v, lift(n, v)};
    for (auto _ : state) benchmark::DoNotOptimize(check_pair(p, basis));
}
BENCHMARK(BM_CheckPair);

}  // namespace

BENCHMARK_MAIN();
