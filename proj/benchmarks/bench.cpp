#include <random>

#include <benchmark/benchmark.h>

#include "sympgeo/geodesic.hpp"
#include "sympgeo/jacobi.hpp"
#include "sympgeo/lie_ops.hpp"
#include "sympgeo/random_fields.hpp"

using namespace sympgeo;

namespace {

SymplecticVectorField field(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_symplectic(Grid2D(n), n / 4, rng);
}

void BM_Transform(benchmark::State& state) {
  const SpectrumField f = field(static_cast<int>(state.range(0)), 1).stream();
  for (auto _ : state) benchmark::DoNotOptimize(transform(transform(f)));
}
BENCHMARK(BM_Transform)->Arg(32)->Arg(64)->Arg(128);

void BM_RhsDirect(benchmark::State& state) {
  const SymplecticVectorField v = field(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rhs_direct(v));
}
BENCHMARK(BM_RhsDirect)->Arg(32)->Arg(64)->Arg(128);

void BM_AdStar(benchmark::State& state) {
  const SymplecticVectorField v = field(static_cast<int>(state.range(0)), 3);
  const SymplecticVectorField w = field(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(ad_star(v, w));
}
BENCHMARK(BM_AdStar)->Arg(64);

void BM_Interpolate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpectrumField f = field(n, 5).stream();
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<Point2> pts(static_cast<std::size_t>(n) * n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_at(f, pts));
}
BENCHMARK(BM_Interpolate)->Arg(32)->Arg(64);

void BM_GeodesicStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SymplecticVectorField v = field(n, 7);
  v *= 1.0 / max_speed(v);
  SolverConfig c;
  c.n = n;
  c.dt = 1e-3;
  c.basis_dim = 0;
  const GeodesicState s = initial_state(v);
  for (auto _ : state) benchmark::DoNotOptimize(step_rk4(s, c));
}
BENCHMARK(BM_GeodesicStep)->Arg(32)->Arg(64);

void BM_JacobiColumn(benchmark::State& state) {
  const int n = 32;
  SymplecticVectorField v = field(n, 8);
  v *= 1.0 / max_speed(v);
  SolverConfig c;
  c.n = n;
  c.dt = 1e-2;
  c.basis_dim = 0;
  const SymplecticVectorField w = field(n, 9);
  for (auto _ : state) {
    JacobiFlow flow(v, {w}, c);
    flow.advance_to(0.1);
    benchmark::DoNotOptimize(flow.columns()[0].y);
  }
}
BENCHMARK(BM_JacobiColumn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
