#include <benchmark/benchmark.h>

#include "mcalloc/algorithms.hpp"
#include "mcalloc/alloc_auction.hpp"
#include "mcalloc/ilp.hpp"
#include "mcalloc/radio.hpp"
#include "mcalloc/scenario.hpp"

namespace {

using namespace mcalloc;

std::vector<Scenario> scenarios(CaseLabel c) {
  GeneratorConfig cfg;
  cfg.outage_case = c;
  std::vector<Scenario> out;
  for (std::uint64_t seed = 1; seed <= 32; ++seed) out.push_back(generate(cfg, seed));
  return out;
}

void BM_Allocator(benchmark::State& state) {
  const auto alg = static_cast<Algorithm>(state.range(0));
  const auto ctx = static_cast<Context>(state.range(1));
  const auto pool = scenarios(CaseLabel::I);
  const AlgorithmSettings settings;
  std::size_t i = 0;
  for (auto _ : state) {
    Rng rng(i);
    benchmark::DoNotOptimize(run_algorithm(alg, pool[i++ % pool.size()], ctx, settings, rng));
  }
  state.SetLabel(std::string(to_string(alg)) + "/" + std::string(to_string(ctx)));
}

void allocator_args(benchmark::internal::Benchmark* b) {
  for (Algorithm a : kAllAlgorithms) {
    for (int ctx : {0, 1}) b->Args({static_cast<int>(a), ctx});
  }
}
BENCHMARK(BM_Allocator)->Apply(allocator_args)->Unit(benchmark::kMicrosecond);

void BM_Rho(benchmark::State& state) {
  const auto pool = scenarios(CaseLabel::I);
  const auto size = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const Scenario& s = pool[i++ % pool.size()];
    benchmark::DoNotOptimize(rho(0, ChannelSet::first_n(std::min(size, s.n_channels())), s));
  }
}
BENCHMARK(BM_Rho)->Arg(1)->Arg(4)->Arg(8)->Arg(20);

// Winner determination on real bid matrices, with and without minimum rows.
void BM_Wdp(benchmark::State& state) {
  const bool with_minima = state.range(0) != 0;
  const auto pool = scenarios(CaseLabel::I);
  std::vector<std::pair<BidMatrix, std::vector<double>>> problems;
  for (const Scenario& s : pool) {
    Rng rng(s.seed());
    const AuctionOutcome o = run_ca(s, Context::Capacity, AuctionConfig{}, rng);
    problems.emplace_back(o.bids, fairness_minimums(s, Context::Capacity));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [m, mins] = problems[i++ % problems.size()];
    const WdpModel w = with_minima ? build_wdp(m, std::span<const double>(mins)) : build_wdp(m);
    benchmark::DoNotOptimize(ilp::solve(w.program));
  }
}
BENCHMARK(BM_Wdp)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Generate(benchmark::State& state) {
  GeneratorConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(cfg, ++seed));
}
BENCHMARK(BM_Generate);

}  // namespace
BENCHMARK_MAIN();
