#include <benchmark/benchmark.h>

#include <cmath>

#include "hr13/algebra.hpp"
#include "hr13/classical.hpp"
#include "hr13/field.hpp"
#include "hr13/quantum.hpp"
#include "hr13/reps.hpp"

namespace {

void BM_JacobiSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hr13::algebra::check_algebra());
}
BENCHMARK(BM_JacobiSweep)->Unit(benchmark::kMillisecond);

void BM_HeisenbergBrackets(benchmark::State& state) {
  const auto rep = hr13::reps::build_heisenberg_rep(1.0, static_cast<int>(state.range(0)));
  const auto real = hr13::reps::realize(rep, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(hr13::reps::check_brackets(real));
}
BENCHMARK(BM_HeisenbergBrackets)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LorentzForceFlow(benchmark::State& state) {
  using namespace hr13::classical;
  const auto field = EMField::constant({0.1, 0.0, 0.0}, {0.0, 0.0, 1.0});
  const PhasePoint z0{{0, 0, 0, 0}, {std::sqrt(1.01), 0.1, 0, 0}};
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_force_flow(z0, field, {1.0, 1.0, 1.0}, 1e-3, n));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_LorentzForceFlow)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SplitStepEvolution(benchmark::State& state) {
  using namespace hr13::quantum;
  const int n = static_cast<int>(state.range(0));
  const auto g = Grid::make(1, {n, n}, {40.0, 40.0});
  const auto psi = gaussian_packet(g, {0, 0, 0, 0}, {-std::sqrt(1.09), 0.3, 0, 0}, {1.5, 1.5, 0, 0});
  EvolutionConfig cfg;
  cfg.ds = 1e-3;
  cfg.n_steps = 10;
  cfg.record_every = 10;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_s(psi, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_steps);
}
BENCHMARK(BM_SplitStepEvolution)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_FieldOperator(benchmark::State& state) {
  using namespace hr13::field;
  const int modes = static_cast<int>(state.range(0));
  const auto lat = MomentumLattice::nearest(modes, 1.0, 1.0);
  const auto psi = multiparticle_state(lat, {0, 1, 2}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(field_operator_apply(lat, psi, {0.3, -0.2, 0.5, 0.1}));
}
BENCHMARK(BM_FieldOperator)->Arg(8)->Arg(27)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
