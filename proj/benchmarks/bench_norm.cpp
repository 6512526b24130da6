#include <benchmark/benchmark.h>

#include <random>

#include "jtlab/norm.hpp"

namespace {

using namespace jtlab;

Tree random_forest(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::optional<NodeId>> parents(n);
  for (std::size_t i = 1; i < n; ++i) {
    if (rng() % 50 == 0) continue;
    parents[i] = NodeId(static_cast<std::uint32_t>(rng() % i));
  }
  return Tree::from_parents(parents);
}

JTVector dense_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 97);
  JTVector f;
  for (std::size_t i = 0; i < n; ++i) f.set(NodeId(static_cast<std::uint32_t>(i)), Rational(num(rng), den(rng)));
  return f;
}

void BM_NormDp(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  Tree tree = random_forest(rng, n);
  JTVector f = dense_vector(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(norm_dp(tree, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormDp)->RangeMultiplier(2)->Range(16, 2048)->Complexity()->Unit(benchmark::kMillisecond);

// Long chains stress the envelope: every node keeps its whole history of states.
void BM_NormDpChain(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::optional<NodeId>> parents(n);
  for (std::size_t i = 1; i < n; ++i) parents[i] = NodeId(static_cast<std::uint32_t>(i - 1));
  Tree tree = Tree::from_parents(parents);
  JTVector f = dense_vector(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(norm_dp(tree, f));
}
BENCHMARK(BM_NormDpChain)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_NormBruteforce(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  Tree tree = random_forest(rng, n);
  JTVector f = dense_vector(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(norm_bruteforce(tree, f));
}
BENCHMARK(BM_NormBruteforce)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
