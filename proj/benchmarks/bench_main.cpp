#include "ratsym/dynamics.hpp"
#include "ratsym/parse.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace ratsym;

RatFunc fixture(const char* s) {
    Tower t;
    return parse_expression(s, t);
}

void BM_iterate_degree2(benchmark::State& state) {
    RatFunc a = fixture("(z^2-1)/(z^2+1)");
    const int k = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(a.iterate(k, 1 << 14));
}
BENCHMARK(BM_iterate_degree2)->Arg(3)->Arg(5)->Arg(7);

void BM_group_of_example21(benchmark::State& state) {
    RatFunc a = fixture("(z^4+8*z^3+8*z-8)/(8*(z-1))");
    for (auto _ : state) benchmark::DoNotOptimize(group_of(a));
}
BENCHMARK(BM_group_of_example21);

void BM_group_of_dadef(benchmark::State& state) {
    RatFunc b = fixture("-2*z^2/(z^4+1)");
    for (auto _ : state) benchmark::DoNotOptimize(group_of(b));
}
BENCHMARK(BM_group_of_dadef);

void BM_closure_s4(benchmark::State& state) {
    Tower t = adjoin_imaginary(Tower(), 6).tower;
    MoebiusMap iz = MoebiusMap::scaling(TowerElement::imaginary_unit(t));
    MoebiusMap invz = MoebiusMap::inversion_scaled(TowerElement(Rat(1), t));
    MoebiusMap mu2 = MoebiusMap::from_ratfunc(fixture("(z+i)/(z-i)"));
    for (auto _ : state) benchmark::DoNotOptimize(group_closure({iz, invz, mu2}, 64));
}
BENCHMARK(BM_closure_s4);

void BM_sigma_infinity_notdef0(benchmark::State& state) {
    RatFunc a = fixture("(z^2-1)/(z^2+1)");
    for (auto _ : state) benchmark::DoNotOptimize(sigma_infinity(a, 4));
}
BENCHMARK(BM_sigma_infinity_notdef0);

void BM_critical_locus_iterate(benchmark::State& state) {
    RatFunc a = fixture("z*(z^6-2)/(2*z^6-1)");
    for (auto _ : state) benchmark::DoNotOptimize(iterate_critical_locus(a, 2));
}
BENCHMARK(BM_critical_locus_iterate);

} // namespace

BENCHMARK_MAIN();
