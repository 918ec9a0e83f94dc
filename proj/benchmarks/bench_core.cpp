#include <benchmark/benchmark.h>

#include <vector>

#include "quadrep/arithmetic.hpp"
#include "quadrep/expsum.hpp"
#include "quadrep/represent.hpp"
#include "quadrep/sieve.hpp"

using namespace quadrep;

static void BM_BuildPrimeTable(benchmark::State& state) {
  const auto limit = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prime_count(build_prime_table(limit), limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildPrimeTable)->Arg(1'000'000)->Arg(16'000'000)->Unit(benchmark::kMillisecond);

static void BM_Jacobi(benchmark::State& state) {
  u64 n = 1'000'003;
  i64 a = -7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi(a, n));
    a -= 4;
    n += 2;
  }
}
BENCHMARK(BM_Jacobi);

static void BM_IsPrime64(benchmark::State& state) {
  u64 m = (u64{1} << 62) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_prime_64(m));
    m += 2;
  }
}
BENCHMARK(BM_IsPrime64);

static void BM_MinTwinRepresentation(benchmark::State& state) {
  static const auto table = build_prime_table(16'000'002);
  static const auto twins = build_twin_index(table);
  std::vector<u64> qs;
  table.for_each_prime(15'000'000, 15'100'000, [&](u64 q) { qs.push_back(q); });
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_min_twin_representation(qs[i], twins));
    if (++i == qs.size()) i = 0;
  }
}
BENCHMARK(BM_MinTwinRepresentation);

static void BM_SigmaBruteforce(benchmark::State& state) {
  const auto q = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sigma_bruteforce(q, 41));
}
BENCHMARK(BM_SigmaBruteforce)->Arg(105)->Arg(499);

static void BM_SigmaClosed(benchmark::State& state) {
  std::vector<u64> qs;
  for (u64 q = 1; q < 500; q += 2) {
    if (is_squarefree(q)) qs.push_back(q);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_closed(qs[i], 41));
    if (++i == qs.size()) i = 0;
  }
}
BENCHMARK(BM_SigmaClosed);
BENCHMARK_MAIN();
