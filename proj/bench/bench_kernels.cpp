// Serial reference vs OpenMP for the two hot kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "korosum/kernels.hpp"
#include "korosum/numtheory.hpp"

namespace {

using namespace korosum::kernels;

// 3^13 = 1594323 and b = 2, a primitive root, so the orbit is long.
constexpr u64 kM = 1594323;
constexpr u64 kB = 2;

void BM_OrbitSerial(benchmark::State& st) {
    const auto n = static_cast<u64>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(orbit_sum_serial(1, kB, kM, n));
    st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * n));
}

void BM_OrbitOmp(benchmark::State& st) {
    const auto n = static_cast<u64>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(orbit_sum_omp(1, kB, kM, n));
    st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * n));
}

std::vector<u64> residues(u64 n) {
    std::vector<u64> r(n);
    u64 x = kB % kM;
    for (u64 i = 0; i < n; ++i) {
        r[i] = x;
        x = korosum::mul_mod(x, kB, kM);
    }
    return r;
}

void BM_LagSerial(benchmark::State& st) {
    const auto r = residues(static_cast<u64>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(lag_sum_magnitudes_serial(r, kM, 64));
}

void BM_LagOmp(benchmark::State& st) {
    const auto r = residues(static_cast<u64>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(lag_sum_magnitudes_omp(r, kM, 64));
}

}  // namespace

BENCHMARK(BM_OrbitSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_OrbitOmp)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_LagSerial)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK(BM_LagOmp)->Arg(1 << 12)->Arg(1 << 14);

BENCHMARK_MAIN();
