#include <benchmark/benchmark.h>

#include <random>

#include "support/generators.hpp"
#include "torfac/desing.hpp"
#include "torfac/factorization.hpp"
#include "torfac/toroidal.hpp"

using namespace torfac;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// rank 2 fans only; rank 3 outputs can run to thousands of cones
void BM_DesingRank2(benchmark::State& state) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(state.range(0)));
  std::vector<Fan> fans;
  for (int i = 0; i < 16; ++i) fans.push_back(gen::random_cobordism_fan(rng, 2, 4, 10, true));
  std::size_t i = 0, cones = 0;
  for (auto _ : state) {
    auto r = pi_desingularize(fans[i++ % fans.size()]);
    cones += r.fan.maximal_cones().size();
    benchmark::DoNotOptimize(r);
  }
  state.counters["cones/fan"] = benchmark::Counter(static_cast<double>(cones), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_DesingRank2)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_FactorBlowup(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  const Fan base = gen::random_smooth_fan(rng, n, 2);
  const Fan cob = cobordism_of_blowup(base, base.maximal_cones().front());
  for (auto _ : state) benchmark::DoNotOptimize(factorize(cob));
}
BENCHMARK(BM_FactorBlowup)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_WeightCobordism(benchmark::State& state) {
  const std::vector<Int> a{2, 1, -1, -3};
  for (auto _ : state) benchmark::DoNotOptimize(from_weights(a));
}
BENCHMARK(BM_WeightCobordism)->Unit(benchmark::kMillisecond);

void BM_NewtonSubdivision(benchmark::State& state) {
  const std::vector<IntVec> sigma{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})};
  const IntVec a = iv({2, 1, -1});
  std::vector<MonomialIdeal> f;
  for (long alpha : {-1L, 1L, 2L}) f.push_back(weight_ideal_generators(sigma, a, Int(alpha)));
  const MonomialIdeal prod = product_ideal(f);
  for (auto _ : state) benchmark::DoNotOptimize(newton_subdivision(sigma, prod));
}
BENCHMARK(BM_NewtonSubdivision)->Unit(benchmark::kMicrosecond);

void BM_LatticeIndex(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<std::vector<IntVec>> systems;
  for (int s = 0; s < 64; ++s) {
    std::vector<IntVec> m(4, IntVec(4));
    for (auto& row : m)
      for (auto& x : row) x = d(rng);
    systems.push_back(m);
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lattice_index(systems[i++ % systems.size()]));
}
BENCHMARK(BM_LatticeIndex);

}  // namespace

BENCHMARK_MAIN();
