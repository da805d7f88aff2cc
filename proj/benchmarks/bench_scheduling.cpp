#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "coflowsim/baselines.hpp"
#include "coflowsim/dcoflow.hpp"
#include "coflowsim/simulator.hpp"
#include "coflowsim/traffic.hpp"

namespace {

using namespace coflowsim;

std::vector<Coflow> make_instance(int machines, int num_coflows) {
  SyntheticConfig cfg;
  cfg.num_coflows = num_coflows;
  cfg.rng_seed = 12345;
  return gen_synthetic(cfg, Fabric::uniform(machines));
}

void BM_DcoflowOrder(benchmark::State& state) {
  const Fabric fabric = Fabric::uniform(50);
  const auto coflows = make_instance(50, static_cast<int>(state.range(0)));
  const LoadMatrix load = build_load_matrix(fabric, coflows);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcoflow_order(load));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DcoflowOrder)->Arg(100)->Arg(200)->Arg(400)->Complexity(benchmark::oNSquared);

void BM_CsMhaOrder(benchmark::State& state) {
  const Fabric fabric = Fabric::uniform(50);
  const auto coflows = make_instance(50, static_cast<int>(state.range(0)));
  const LoadMatrix load = build_load_matrix(fabric, coflows);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs_mha_order(load));
  }
}
BENCHMARK(BM_CsMhaOrder)->Arg(200);

void BM_Simulate(benchmark::State& state) {
  const Fabric fabric = Fabric::uniform(10);
  const auto coflows = make_instance(10, 60);
  const Schedule schedule = dcoflow_order(fabric, coflows);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(fabric, schedule, coflows));
  }
}
BENCHMARK(BM_Simulate);

void BM_MooreHodgson(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> p(0.1, 4.0);
  std::vector<PortJob> jobs;
  for (int j = 0; j < 1000; ++j) {
    const double proc = p(rng);
    jobs.push_back(PortJob{j, proc, proc * 1.5});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(moore_hodgson(jobs));
  }
}
BENCHMARK(BM_MooreHodgson);

}  // namespace

BENCHMARK_MAIN();
