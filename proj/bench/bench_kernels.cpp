#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "../tests/generators.hpp"
#include "gmf/kernels.hpp"
#include "gmf/subgroup.hpp"

using namespace gmf;

namespace {

std::vector<FieldElement> random_vector(std::size_t n, const FieldTag& k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FieldElement> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(testing::random_element(rng, k, 1000));
  return v;
}

FieldTag field_of(std::int64_t m) { return m == 1 ? FieldTag::rationals() : FieldTag::cyclotomic(m); }

template <bool Parallel>
void BM_cauchy_product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FieldTag k = field_of(state.range(1));
  const auto a = random_vector(n, k, 1);
  const auto b = random_vector(n, k, 2);
  const FieldElement zero = FieldElement::zero(k);
  for (auto _ : state) {
    auto c = Parallel ? kernels::cauchy_product_parallel<FieldElement>(a, b, n, zero)
                      : kernels::cauchy_product_serial<FieldElement>(a, b, n, zero);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_j_normalizes(benchmark::State& state) {
  const auto g = GroupDescriptor::gamma(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? j_normalizes_parallel(g) : j_normalizes_serial(g));
}

}  // namespace

BENCHMARK(BM_cauchy_product<false>)->ArgsProduct({{64, 128, 256, 512}, {1, 12}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cauchy_product<true>)->ArgsProduct({{64, 128, 256, 512}, {1, 12}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_j_normalizes<false>)->Arg(12)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_j_normalizes<true>)->Arg(12)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
