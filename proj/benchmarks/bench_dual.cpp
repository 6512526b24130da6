#include <benchmark/benchmark.h>

#include <random>

#include "jtlab/dual.hpp"

namespace {

using namespace jtlab;

struct Instance {
  Tree tree;
  JTFunctional x;
};

Instance make_instance(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<std::optional<NodeId>> parents(n);
  for (std::size_t i = 1; i < n; ++i) parents[i] = NodeId(static_cast<std::uint32_t>(rng() % i));
  Instance in{Tree::from_parents(parents), {}};
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 10 < 7) in.x.set(NodeId(static_cast<std::uint32_t>(i)), Rational(num(rng), den(rng)));
  }
  return in;
}

void BM_DualNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double tol = state.range(1) == 4 ? 1e-4 : 1e-6;
  Instance in = make_instance(7, n);
  int rounds = 0;
  for (auto _ : state) {
    DualBracket b = dual_norm(in.tree, in.x, DualOptions{tol, 100});
    rounds = b.iterations;
    benchmark::DoNotOptimize(b);
  }
  state.counters["rounds"] = rounds;
}
BENCHMARK(BM_DualNorm)->ArgsProduct({{10, 20, 40}, {4, 6}})->Unit(benchmark::kMillisecond);

void BM_SegmentFunctional(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::optional<NodeId>> parents(n);
  for (std::size_t i = 1; i < n; ++i) parents[i] = NodeId(static_cast<std::uint32_t>(i - 1));
  Tree chain = Tree::from_parents(parents);
  JTFunctional x = chi_segment(chain, Segment{NodeId(0), NodeId(static_cast<std::uint32_t>(n - 1))});
  for (auto _ : state) benchmark::DoNotOptimize(dual_norm(chain, x));
}
BENCHMARK(BM_SegmentFunctional)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMillisecond);

void BM_VerifyBracket(benchmark::State& state) {
  Instance in = make_instance(11, static_cast<std::size_t>(state.range(0)));
  DualBracket b = dual_norm(in.tree, in.x, DualOptions{1e-4, 100});
  for (auto _ : state) benchmark::DoNotOptimize(verify_bracket(in.tree, in.x, b));
}
BENCHMARK(BM_VerifyBracket)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
