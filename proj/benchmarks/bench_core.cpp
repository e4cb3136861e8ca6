#include <benchmark/benchmark.h>

#include "voabranch/decomposer.hpp"
#include "voabranch/voa.hpp"

using namespace voabranch;

static void BM_EulerInverse(benchmark::State& state) {
  const Rational cutoff = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(product_family(EulerKind::minus, -6, cutoff));
}
BENCHMARK(BM_EulerInverse)->Arg(20)->Arg(40)->Arg(80);

static void BM_MinimalModelProduct(benchmark::State& state) {
  const Rational cutoff = state.range(0);
  for (auto _ : state) {
    QSeries a = char_minimal(frac(7, 10), frac(3, 5), cutoff);
    QSeries b = char_minimal(frac(4, 5), frac(1, 15), cutoff);
    benchmark::DoNotOptimize(multiply(a, b));
  }
}
BENCHMARK(BM_MinimalModelProduct)->Arg(10)->Arg(20);

static void BM_ThetaByCoset(benchmark::State& state) {
  const LatticeFamily fam = build_family(static_cast<int>(state.range(0)));
  const auto labels = classify(fam, coset_reps(fam));
  for (auto _ : state) benchmark::DoNotOptimize(theta_by_coset(fam, labels, 8));
}
BENCHMARK(BM_ThetaByCoset)->DenseRange(3, 6);

static void BM_VerifyBranchGrid(benchmark::State& state) {
  for (auto _ : state)
    for (std::int64_t n = 1; n <= 12; ++n)
      for (std::int64_t a = 0; a < 2 * n; ++a) benchmark::DoNotOptimize(verify_branch({n, a}, 20));
}
BENCHMARK(BM_VerifyBranchGrid)->Unit(benchmark::kMillisecond);

static void BM_ConformalCheck(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const LatticeFamily fam = build_family(l);
  const auto v = voa::build_named(fam, voa::NamedVector{voa::NamedKind::omega_i, l + 1, {}});
  for (auto _ : state) benchmark::DoNotOptimize(voa::conformal_check(v));
}
BENCHMARK(BM_ConformalCheck)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_Verify(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify(l, Sign::plus, 8));
}
BENCHMARK(BM_Verify)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
