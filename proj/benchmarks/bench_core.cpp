#include <benchmark/benchmark.h>

#include <vector>

#include "sched/analysis.hpp"
#include "sched/costs.hpp"
#include "sched/graph.hpp"
#include "sched/nonlinearity.hpp"
#include "sched/protocol.hpp"
#include "sched/rng.hpp"

using namespace sched;

namespace {

protocol::Engine make_engine(int n, double p_link, double p_fail, int tau_bar) {
  costs::Problem problem = costs::sample_academic_costs(n, 11);
  graph::Topology base = graph::generate_er(n, p_link, 1.0, 11);
  graph::SwitchingNetwork net{std::move(base), p_fail, 3, 3};
  protocol::DelayModel delays{tau_bar, 4, {}};
  return protocol::Engine(std::move(problem), std::move(net),
                          nonlin::SectorMap::log_quantizer(1.0 / 1024.0), delays, 0.002,
                          0.5);
}

void BM_EngineStepStatic(benchmark::State& state) {
  protocol::Engine engine = make_engine(static_cast<int>(state.range(0)), 0.25, 0.0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(engine.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineStepStatic)->Arg(20)->Arg(100);

void BM_EngineStepLossyDelayed(benchmark::State& state) {
  protocol::Engine engine = make_engine(static_cast<int>(state.range(0)), 0.25, 0.8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(engine.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineStepLossyDelayed)->Arg(20)->Arg(100);

void BM_RealizeRound(benchmark::State& state) {
  const graph::SwitchingNetwork net{
      graph::generate_er(static_cast<int>(state.range(0)), 0.25, 1.0, 5), 0.8, 7, 3};
  std::int64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(graph::realize(net, k++));
}
BENCHMARK(BM_RealizeRound)->Arg(20)->Arg(200);

void BM_SpectralBounds(benchmark::State& state) {
  graph::Topology t = graph::generate_er(static_cast<int>(state.range(0)), 0.5, 1.0, 5);
  while (!graph::is_connected(t))
    t = graph::generate_er(static_cast<int>(state.range(0)), 0.5, 1.0, 6);
  for (auto _ : state) benchmark::DoNotOptimize(graph::spectral_bounds(t));
}
BENCHMARK(BM_SpectralBounds)->Arg(20)->Arg(100)->Arg(200);

void BM_SolveOracle(benchmark::State& state) {
  const costs::Problem p =
      costs::sample_academic_costs(static_cast<int>(state.range(0)), 17);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::solve_oracle(p));
}
BENCHMARK(BM_SolveOracle)->Arg(20)->Arg(100);

void BM_LogQuantize(benchmark::State& state) {
  const nonlin::SectorMap map = nonlin::SectorMap::log_quantizer(1.0 / 1024.0);
  rng::Stream stream(9);
  std::vector<double> inputs(4096);
  for (double& u : inputs) u = stream.uniform(-1e4, 1e4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.apply(inputs[i]));
    i = (i + 1) & 4095;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LogQuantize);

}  // namespace

BENCHMARK_MAIN();
