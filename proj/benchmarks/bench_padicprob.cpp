#include <benchmark/benchmark.h>

#include "padicprob/cylinder.hpp"
#include "padicprob/formal_series.hpp"
#include "padicprob/limit_theorems.hpp"
#include "padicprob/series_eval.hpp"

using namespace padicprob;

namespace {

void BM_SumDistribution(benchmark::State& state) {
  const auto params = limits::BernoulliParams::symmetric(Prime(3));
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    limits::SumDistribution d(n, params);
    benchmark::DoNotOptimize(d);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SumDistribution)->RangeMultiplier(3)->Range(9, 2187)->Complexity();

void BM_ProbBall(benchmark::State& state) {
  const Prime p(3);
  const limits::SumDistribution d(static_cast<std::uint64_t>(state.range(0)), limits::BernoulliParams::symmetric(p));
  for (auto _ : state) benchmark::DoNotOptimize(limits::prob_ball(d, p, 2, 1));
}
BENCHMARK(BM_ProbBall)->RangeMultiplier(3)->Range(9, 2187);

void BM_ClopenAlgebra(benchmark::State& state) {
  const Prime q(2);
  const auto a = cylinder::Clopen::parse("0;101;1101;11100", q);
  const auto b = cylinder::Clopen::parse("01;110;1111;10", q);
  for (auto _ : state) {
    auto u = cylinder::set_union(a, b);
    auto i = cylinder::set_intersection(a, cylinder::complement(b));
    benchmark::DoNotOptimize(u);
    benchmark::DoNotOptimize(i);
  }
}
BENCHMARK(BM_ClopenAlgebra);

void BM_IntegrateDigits(benchmark::State& state) {
  const Prime two(2), three(3);
  const cylinder::UniformMeasure mu(two, three);
  const cylinder::ContinuousMap digits{[](const cylinder::Word& x) {
                                         Rational s(0), w(1);
                                         for (auto d : x) {
                                           s += w * Rational(static_cast<long>(d));
                                           w *= Rational(3);
                                         }
                                         return s;
                                       },
                                       [three](std::size_t n) { return PadicAbs(three, -static_cast<std::int64_t>(n)); }};
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cylinder::integrate_continuous(mu, digits, depth));
}
BENCHMARK(BM_IntegrateDigits)->DenseRange(4, 12, 4);

void BM_CharfunToMahler(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const auto phi = series::cosh(order);
  for (auto _ : state) benchmark::DoNotOptimize(limits::charfun_to_mahler(phi, order));
}
BENCHMARK(BM_CharfunToMahler)->Arg(10)->Arg(20)->Arg(30);

void BM_PadicExp(benchmark::State& state) {
  const Prime p(5);
  const auto x = PadicApprox::from_rational(Rational(Integer(5), Integer(7)), p, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(padic_exp(x));
}
BENCHMARK(BM_PadicExp)->Arg(20)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
