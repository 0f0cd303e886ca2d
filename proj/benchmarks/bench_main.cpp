#include <benchmark/benchmark.h>

#include "satotate/frobenius.hpp"
#include "satotate/galois_cm.hpp"
#include "satotate/st_groups.hpp"

using namespace satotate;

namespace {

Prime prime_near(u64 n) {
  while (!is_prime(n)) ++n;
  return Prime(n);
}

void BM_EcTraceCharSum(benchmark::State& state) {
  const EllipticCurveQ e(1, 1);
  const Prime p = prime_near(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ec_trace_charsum(e, p));
}
BENCHMARK(BM_EcTraceCharSum)->Arg(1000)->Arg(100000)->Arg(10000000);

void BM_EcTraceBsgs(benchmark::State& state) {
  const EllipticCurveQ e(1, 1);
  const Prime p = prime_near(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ec_trace_bsgs(e, p));
}
BENCHMARK(BM_EcTraceBsgs)->Arg(1000)->Arg(100000)->Arg(10000000)->Arg(1000000000);

void BM_EcScan(benchmark::State& state) {
  const EllipticCurveQ e(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ec_scan(e, static_cast<u64>(state.range(0))));
}
BENCHMARK(BM_EcScan)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Genus2LocalFactor(benchmark::State& state) {
  const HyperCurveQ c(IntPoly::parse("x^5-x+1"));
  const Prime p = prime_near(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(g2_local_factor(c, p));
}
BENCHMARK(BM_Genus2LocalFactor)->Arg(101)->Arg(1009)->Unit(benchmark::kMicrosecond);

void BM_DdfPattern(benchmark::State& state) {
  const IntPoly f = IntPoly::parse("x^6-3x^5+x-1");
  const Prime p = prime_near(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ddf_pattern(f, p));
}
BENCHMARK(BM_DdfPattern)->Arg(1000)->Arg(1000000)->Arg(1000000000);

void BM_PrimeSieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(primes_up_to(static_cast<u64>(state.range(0))));
}
BENCHMARK(BM_PrimeSieve)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Usp4MomentQuadrature(benchmark::State& state) {
  const auto g = GroupSpec::catalog(GroupId::USp4);
  for (auto _ : state) benchmark::DoNotOptimize(trace_moment_quadrature(g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Usp4MomentQuadrature)->Arg(4)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_Usp4Character(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(usp4_char(a, a / 2, 0.7, 2.1));
}
BENCHMARK(BM_Usp4Character)->Arg(2)->Arg(8);

void BM_CmRankAllSmallGroups(benchmark::State& state) {
  const auto groups = small_groups_up_to_8();
  for (auto _ : state) {
    int total = 0;
    for (const auto& g : groups) {
      for (const auto& spec : all_cm_types(g)) total += cm_rank(spec).cm_rank;
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_CmRankAllSmallGroups)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
