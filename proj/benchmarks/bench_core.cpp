#include <benchmark/benchmark.h>

#include <random>

#include "greenfield/basis.hpp"
#include "greenfield/dynsys.hpp"
#include "greenfield/elliptic.hpp"
#include "greenfield/experiments.hpp"
#include "greenfield/green.hpp"
#include "greenfield/heights.hpp"
#include "greenfield/macaulay.hpp"
#include "greenfield/upoly.hpp"

using namespace greenfield;

namespace {

PolyMap dense_map(std::size_t nvars, unsigned d) {
  std::mt19937_64 rng(5);
  std::vector<HomoForm> forms;
  for (std::size_t i = 0; i < nvars; ++i) {
    HomoForm f(nvars, d);
    for (const auto& m : monomials(nvars, d)) f.add_term(m, Rational(static_cast<long>(rng() % 11) - 5, 1 + rng() % 3));
    Exponent e(nvars, 0);
    e[i] = d;
    f.add_term(e, 7);
    forms.push_back(f);
  }
  return PolyMap(forms);
}

void BM_Resultant(benchmark::State& state) {
  const PolyMap f = dense_map(static_cast<std::size_t>(state.range(0)) + 1, static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(macaulay_resultant(f));
}
BENCHMARK(BM_Resultant)->Args({1, 4})->Args({1, 8})->Args({2, 2})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_EscapeRateArchimedean(benchmark::State& state) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "y^2"}));
  const ProjPoint p = ProjPoint::exact({Rational(7, 3), 1});
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(escape_rate(f, Place::archimedean(), p, tol));
}
BENCHMARK(BM_EscapeRateArchimedean)->Arg(6)->Arg(9)->Arg(12);

void BM_CanonicalHeight(benchmark::State& state) {
  const DynSystem f(PolyMap::parse({"x^2+1/2*y^2", "3*y^2"}));
  const ProjPoint p = ProjPoint::exact({Rational(-17, 12), Rational(5, 9)});
  for (auto _ : state) benchmark::DoNotOptimize(canonical_height(f, p, 1e-9));
}
BENCHMARK(BM_CanonicalHeight);

void BM_SpecialBasis(benchmark::State& state) {
  const DynSystem f(state.range(0) == 1 ? PolyMap::parse({"x^2-2*y^2", "y^2"})
                                        : PolyMap::parse({"x^2+y*z", "y^2", "z^2-x*y"}));
  for (auto _ : state) benchmark::DoNotOptimize(special_basis(f, static_cast<unsigned>(state.range(1))));
}
BENCHMARK(BM_SpecialBasis)->Args({1, 16})->Args({1, 32})->Args({2, 8})->Args({2, 12})->Unit(benchmark::kMillisecond);

void BM_Fekete(benchmark::State& state) {
  const DynSystem f(PolyMap::parse({"x^2", "y^2"}));
  const BasisFamily b = special_basis(f, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fekete_search(f, b, 20000, 7));
}
BENCHMARK(BM_Fekete)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LehmerScan(benchmark::State& state) {
  const LattesSystem l(EllipticCurve(0, -2), CurvePoint::affine(3, 5));
  for (auto _ : state) benchmark::DoNotOptimize(lehmer_scan(l, {static_cast<unsigned>(state.range(0))}, 1e-9));
}
BENCHMARK(BM_LehmerScan)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
