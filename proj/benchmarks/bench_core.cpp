#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "neurohotnet/detect.hpp"
#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/inference.hpp"
#include "neurohotnet/precision.hpp"
#include "neurohotnet/simlab.hpp"

namespace {

using namespace neurohotnet;

WeightedGraph truth_of(std::size_t regions) {
  return generate_truth(regions, 0.3, 8, 11);
}

void BM_Diffuse(benchmark::State& state) {
  const auto g = truth_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diffuse(g, 30.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Diffuse)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_Candidates(benchmark::State& state) {
  const auto inf = diffuse(truth_of(static_cast<std::size_t>(state.range(0))), 30.0);
  for (auto _ : state) benchmark::DoNotOptimize(candidates(inf, 1.8e-3));
}
BENCHMARK(BM_Candidates)->RangeMultiplier(2)->Range(32, 512);

void BM_Glasso(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = truth_of(n);
  SimConfig cfg;
  cfg.regions = n;
  cfg.subjects = 20;
  const Matrix pooled = mean_correlation(generate_subjects(g, cfg, 3));
  const auto inf = diffuse(g, 30.0);
  for (auto _ : state) benchmark::DoNotOptimize(siggm_with_diffusion(pooled, inf, 2.5e-4, 1.0));
}
BENCHMARK(BM_Glasso)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_PermutationTest(benchmark::State& state) {
  const std::size_t n = 60;
  SimConfig cfg;
  cfg.regions = n;
  cfg.subjects = static_cast<std::size_t>(state.range(0));
  const FisherStack z(generate_subjects(truth_of(n), cfg, 5));
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < 10; ++i) members.push_back(i);
  const NodeSet component(members, n);
  PermutationOptions opt;
  opt.permutations = 1000;
  opt.seed = 9;
  for (auto _ : state) benchmark::DoNotOptimize(permutation_test(z, component, opt));
}
BENCHMARK(BM_PermutationTest)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
