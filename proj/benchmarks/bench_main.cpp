#include <numbers>

#include <benchmark/benchmark.h>

#include <burgers/holder.hpp>
#include <burgers/norms.hpp>
#include <burgers/scheme.hpp>
#include <burgers/transport.hpp>
#include <burgers/trig_field.hpp>

using namespace burgers;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

void transport_solve(benchmark::State& state) {
  const GridSpec g(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), kTwoPi);
  TransportProblem p(make_trig_field(g, 1, 3, 1.0), 0.1, 1e-2);
  p.drift = TimeSeries<VectorField>::constant(make_trig_field(g, 2, 3, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_transport(p));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(transport_solve)->Args({1, 128})->Args({1, 1024})->Args({2, 64})->Unit(benchmark::kMillisecond);

void picard_fixed_point(benchmark::State& state) {
  const GridSpec g(1, static_cast<int>(state.range(0)), kTwoPi);
  SchemeConfig cfg;
  cfg.grid = g;
  cfg.horizon = 0.1;
  cfg.dt = 1e-3;
  cfg.tol_fp = 1e-12;
  const auto u0 = make_trig_field(g, 3, 3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(run_picard(cfg, u0, Forcing::zero(g)));
}
BENCHMARK(picard_fixed_point)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void holder_sampled(benchmark::State& state) {
  const GridSpec g(1, static_cast<int>(state.range(0)), kTwoPi);
  const auto f = make_trig_scalar(g, 4, 8, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(f, 0.5));
}
BENCHMARK(holder_sampled)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void holder_two_dimensional(benchmark::State& state) {
  const GridSpec g(2, static_cast<int>(state.range(0)), kTwoPi);
  const auto u = make_trig_field(g, 5, 4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(u, 0.5));
}
BENCHMARK(holder_two_dimensional)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
