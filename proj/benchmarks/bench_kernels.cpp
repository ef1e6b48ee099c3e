// SPDX-License-Identifier: MIT
// Timings for the numerical kernels behind the verification suites.
#include <random>

#include <benchmark/benchmark.h>

#include "hecke/hecke.hpp"

using namespace hecke;

namespace {

cplx draw(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  return {n(g), n(g)};
}

TruncSeries series(std::mt19937_64& g, int order) {
  std::vector<cplx> c(order + 1);
  for (auto& x : c) x = draw(g);
  c[0] += 5.0;
  return TruncSeries(c);
}

void BM_Theta(benchmark::State& st) {
  const Lattice L;
  cplx z(0.3, 0.4);
  for (auto _ : st) {
    benchmark::DoNotOptimize(theta_w(L, z, cplx(0.1, 0.7)));
    z += cplx(1e-7, 0.0);
  }
}
BENCHMARK(BM_Theta);

void BM_SeriesMul(benchmark::State& st) {
  std::mt19937_64 g(1);
  const int n = static_cast<int>(st.range(0));
  const auto a = series(g, n), b = series(g, n);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMul)->Arg(8)->Arg(32);

void BM_MatrixInverse(benchmark::State& st) {
  std::mt19937_64 g(2);
  const SeriesMat2 a(series(g, 8), series(g, 8), series(g, 8), series(g, 8));
  for (auto _ : st) benchmark::DoNotOptimize(invert_unit(a));
}
BENCHMARK(BM_MatrixInverse);

void BM_EtaInvariance(benchmark::State& st) {
  std::mt19937_64 g(3);
  const SeriesMat2 a(series(g, 8), series(g, 8), series(g, 8), series(g, 8));
  const SeriesMat2 b(series(g, 8), series(g, 8), series(g, 8), series(g, 8));
  for (auto _ : st) benchmark::DoNotOptimize(eta_invariance_check(a, b));
}
BENCHMARK(BM_EtaInvariance);

void BM_InvertCover(benchmark::State& st) {
  const Lattice L;
  const ProjPoint a(cplx(0.4, -0.2), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(invert_cover(L, a));
}
BENCHMARK(BM_InvertCover);

void BM_MorphismRepEval(benchmark::State& st) {
  const Lattice L;
  const CurvePoint p{cplx(0.35, 0.6)};
  const auto m = morphism_rep(L, EllipticBundle::g2(p.lift), p, ProjPoint(cplx(0.4, -0.2), 1.0));
  cplx z(0.2, 0.3);
  for (auto _ : st) {
    benchmark::DoNotOptimize(m.eval(z));
    z += cplx(1e-7, 0.0);
  }
}
BENCHMARK(BM_MorphismRepEval);

void BM_LocateDetZero(benchmark::State& st) {
  const Lattice L;
  const CurvePoint p{cplx(0.35, 0.6)};
  const auto m = morphism_rep(L, EllipticBundle::f2(), p, ProjPoint(cplx(0.4, -0.2), 1.0));
  for (auto _ : st) benchmark::DoNotOptimize(locate_det_zero(L, m));
}
BENCHMARK(BM_LocateDetZero);

void BM_HTotal(benchmark::State& st) {
  const Lattice L;
  const int n = static_cast<int>(st.range(0));
  std::mt19937_64 g(4);
  std::vector<ProjPoint> tuple;
  std::vector<CurvePoint> pts;
  for (int i = 0; i <= n; ++i) tuple.emplace_back(draw(g), draw(g));
  for (int i = 0; i < n; ++i) pts.push_back(L.point(draw(g)));
  const auto s = construct_sequence(L, tuple, L.point(draw(g)), pts);
  for (auto _ : st) benchmark::DoNotOptimize(h_total(L, s));
}
BENCHMARK(BM_HTotal)->Arg(1)->Arg(2);

void BM_Kamnitzer(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  std::mt19937_64 g(5);
  RationalSequence seq{{0, 0}, {}};
  for (int i = 0; i < 2 * m; ++i) seq.steps.push_back({draw(g), ProjPoint(draw(g), draw(g))});
  for (auto _ : st) benchmark::DoNotOptimize(conjecture_check(seq));
}
BENCHMARK(BM_Kamnitzer)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
