#include <cmath>

#include <benchmark/benchmark.h>

#include "dcs/initial_data.hpp"
#include "dcs/norms.hpp"
#include "dcs/solver.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

void bench_diff(benchmark::State& state, int order) {
  const dcs::Grid g = dcs::Grid::uniform(static_cast<int>(state.range(0)));
  const dcs::ScalarField f =
      dcs::ScalarField::sample(g, [](double x) { return std::sin(kPi * x) + x * x; });
  for (auto _ : state) {
    dcs::ScalarField d = order == 1 ? dcs::diff1(f) : order == 2 ? dcs::diff2(f) : dcs::diff3(f);
    benchmark::DoNotOptimize(d.values.data());
  }
}

void BM_diff1(benchmark::State& state) { bench_diff(state, 1); }
void BM_diff2(benchmark::State& state) { bench_diff(state, 2); }
void BM_diff3(benchmark::State& state) { bench_diff(state, 3); }

void BM_step_picard(benchmark::State& state) {
  const dcs::Grid g = dcs::Grid::uniform(static_cast<int>(state.range(0)));
  const dcs::ModelParams params{1.0, 1.0};
  const dcs::InitialData data = dcs::build_initial_data(params, 0.05, g);
  const dcs::StatePair s{data.rho0, data.kappa0, 0.0};
  dcs::StepperConfig cfg;
  cfg.dt = 1e-3;
  const dcs::RegParams reg{data.gamma0, 1.0};
  for (auto _ : state) {
    dcs::StepResult res = dcs::step_picard(s, cfg, params, reg);
    benchmark::DoNotOptimize(res.state.rho.values.data());
  }
}

void BM_bmo_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dcs::Grid g = dcs::Grid::uniform(n);
  const dcs::SpaceTimeField f = dcs::SpaceTimeField::sample(
      g, 0.0, 1.0 / (n - 1), n,
      [](double x, double t) { return std::sin(kPi * x) * std::exp(-t); });
  for (auto _ : state) {
    double v = dcs::bmo_norm(f);
    benchmark::DoNotOptimize(v);
  }
}

void BM_lp_norm_spacetime(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dcs::Grid g = dcs::Grid::uniform(n);
  const dcs::SpaceTimeField f = dcs::SpaceTimeField::sample(
      g, 0.0, 1.0 / (n - 1), n,
      [](double x, double t) { return std::sin(kPi * x) * std::exp(-t); });
  for (auto _ : state) {
    double v = dcs::lp_norm(f, 2.0);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_diff1)->Arg(201)->Arg(801);
BENCHMARK(BM_diff2)->Arg(201)->Arg(801);
BENCHMARK(BM_diff3)->Arg(201)->Arg(801);
BENCHMARK(BM_step_picard)->Arg(201)->Arg(401);
BENCHMARK(BM_bmo_norm)->Arg(17)->Arg(33);
BENCHMARK(BM_lp_norm_spacetime)->Arg(33)->Arg(201);

BENCHMARK_MAIN();
