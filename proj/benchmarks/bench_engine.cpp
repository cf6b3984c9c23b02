#include <benchmark/benchmark.h>

#include "symspread/spread.hpp"
#include "symspread/symplectic.hpp"
#include "symspread/verify.hpp"

using namespace symspread;

namespace {

void BM_TowerMake(benchmark::State& state) {
  for (auto _ : state) {
    Tower t = Tower::make(3, 1, 2);
    benchmark::DoNotOptimize(t.size());
  }
}
BENCHMARK(BM_TowerMake);

void BM_SpreadBuild(benchmark::State& state) {
  Tower t = Tower::make(5, 1, 2);
  for (auto _ : state) {
    Spread s = build_spread(t);
    benchmark::DoNotOptimize(s.members.size());
  }
}
BENCHMARK(BM_SpreadBuild);

void BM_ClosureMetacyclic(benchmark::State& state) {
  Tower t = Tower::make(5, 1, 2);
  MatQ pi = build_pi(t);
  MatQ rho = build_rho(t);
  for (auto _ : state) {
    MatGroup g = closure(t.fq(), {pi, rho});
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_ClosureMetacyclic);

void BM_ClosureSp(benchmark::State& state) {
  // 0 -> Sp(2,5), 1 -> Sp(2,9), 2 -> Sp(2,13), 3 -> Sp(4,3)
  static const std::array<std::array<int, 3>, 4> params{
      {{5, 1, 1}, {3, 2, 1}, {13, 1, 1}, {3, 1, 2}}};
  auto [p, a, m] = params[static_cast<size_t>(state.range(0))];
  Tower t = Tower::make(p, a, m);
  for (auto _ : state) {
    MatGroup sp = enumerate_sp(t);
    benchmark::DoNotOptimize(sp.order());
  }
  state.SetLabel("order " + std::to_string(sp_order(t.q(), t.m())));
}
BENCHMARK(BM_ClosureSp)->DenseRange(0, 3);

void BM_OrbitOnSpread(benchmark::State& state) {
  Tower t = Tower::make(3, 1, 2);
  Spread s = build_spread(t);
  MatGroup g = closure(t.fq(), {build_pi(t), build_rho(t)});
  for (auto _ : state) {
    auto orbit = orbit_of_subspace(t.fq(), g.generators, s.members[0]);
    benchmark::DoNotOptimize(orbit.size());
  }
}
BENCHMARK(BM_OrbitOnSpread);

void BM_SylowSp43(benchmark::State& state) {
  Tower t = Tower::make(3, 1, 2);
  MatGroup sp = enumerate_sp(t);
  for (auto _ : state) {
    MatGroup r5 = sylow(t.fq(), sp, 5);
    benchmark::DoNotOptimize(r5.order());
  }
}
BENCHMARK(BM_SylowSp43);

void BM_SubgroupSearchSp25(benchmark::State& state) {
  Tower t = Tower::make(5, 1, 1);
  MatGroup sp = enumerate_sp(t);
  for (auto _ : state) {
    auto subs = find_subgroups_of_order(t.fq(), sp, 24);
    benchmark::DoNotOptimize(subs.size());
  }
}
BENCHMARK(BM_SubgroupSearchSp25);

void BM_MinimalPolynomial(benchmark::State& state) {
  Tower t = Tower::make(3, 1, 2);
  MatQ pi = build_pi(t);
  for (auto _ : state) {
    PolyQ mp = minimal_polynomial(t.fq(), pi);
    benchmark::DoNotOptimize(mp.degree());
  }
}
BENCHMARK(BM_MinimalPolynomial);

void BM_VerifyAllSmall(benchmark::State& state) {
  std::vector<std::array<int, 3>> ctxs{{3, 1, 1}, {5, 1, 1}};
  for (auto _ : state) {
    auto reports = run_all(ctxs);
    benchmark::DoNotOptimize(reports.size());
  }
}
BENCHMARK(BM_VerifyAllSmall);

}  // namespace

BENCHMARK_MAIN();
