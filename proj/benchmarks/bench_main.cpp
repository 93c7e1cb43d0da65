#include <benchmark/benchmark.h>

#include "qet/correlations.hpp"
#include "qet/protocol.hpp"
#include "qet/sweep.hpp"

namespace {

qet::ModelParams point(double b = 0.5, double alpha = 1.0, double t = 0.5) {
  qet::ModelParams p;
  p.b = b;
  p.alpha = alpha;
  p.temperature = t;
  return p;
}

void BM_HermitianEig(benchmark::State& state) {
  const qet::ComplexMatrix h = qet::build_hamiltonian(point()) + qet::on_A(qet::pauli_x());
  for (auto _ : state) benchmark::DoNotOptimize(qet::hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig);

void BM_ThermalState(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qet::thermal_state(point()));
}
BENCHMARK(BM_ThermalState);

void BM_ThermalProtocol(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qet::run_thermal_qet(point()));
}
BENCHMARK(BM_ThermalProtocol);

void BM_OptimizeAxis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qet::optimize_axis(point(), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OptimizeAxis)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Concurrence(benchmark::State& state) {
  const qet::DensityMatrix rho = qet::thermal_state(point());
  for (auto _ : state) benchmark::DoNotOptimize(qet::concurrence(rho));
}
BENCHMARK(BM_Concurrence);

void BM_DiscordXState(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qet::discord_xstate(point()));
}
BENCHMARK(BM_DiscordXState);

void BM_DiscordNumeric(benchmark::State& state) {
  const qet::DensityMatrix rho = qet::thermal_state(point());
  for (auto _ : state) benchmark::DoNotOptimize(qet::discord_numeric(rho));
}
BENCHMARK(BM_DiscordNumeric)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  qet::sweep::SweepConfig c;
  c.t_steps = c.b_steps = static_cast<int>(state.range(0));
  c.quantities = {qet::sweep::Quantity::kExtract, qet::sweep::Quantity::kConcurrence};
  for (auto _ : state) benchmark::DoNotOptimize(qet::sweep::run(c, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Sweep)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
