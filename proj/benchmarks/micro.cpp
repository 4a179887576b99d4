// Microbenchmarks for the hot paths: full-table builds at a few sizes,
// plus the per-query costs that dominate the applications.  Run the
// binary directly; it is intentionally not wired into ctest.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "submode/baselines.hpp"
#include "submode/generate.hpp"
#include "submode/lca.hpp"
#include "submode/mode.hpp"
#include "submode/suffix.hpp"

using namespace submode;

namespace {

constexpr ColorId kDelta = 64;
constexpr std::uint64_t kSeed = 42;

void BM_ScmBuild(benchmark::State& state) {
  const LeafColoredTree t = generate_random_tree(state.range(0), kDelta, 4, kSeed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scm_all_modes(t));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScmBuild)->Arg(1 << 14)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_Ba1Build(benchmark::State& state) {
  const LeafColoredTree t = generate_random_tree(state.range(0), kDelta, 4, kSeed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ba1_all_modes(t));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ba1Build)->Arg(1 << 14)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_Ba3Build(benchmark::State& state) {
  const LeafColoredTree t = generate_random_tree(state.range(0), kDelta, 4, kSeed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ba3_all_modes(t));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ba3Build)->Arg(1 << 14)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_ScmTopK(benchmark::State& state) {
  const LeafColoredTree t = generate_random_tree(1 << 16, kDelta, 4, kSeed);
  const std::int32_t k = static_cast<std::int32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scm_top_k(t, k));
  }
}
BENCHMARK(BM_ScmTopK)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LcaQuery(benchmark::State& state) {
  const LeafColoredTree t = generate_random_tree(1 << 18, kDelta, 4, kSeed);
  const LcaIndex lca(t);
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(t.size() - 1));
  std::vector<std::pair<NodeId, NodeId>> queries(4096);
  for (auto& [u, v] : queries) {
    u = pick(rng);
    v = pick(rng);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [u, v] = queries[i++ & 4095];
    benchmark::DoNotOptimize(lca.lca(u, v));
  }
}
BENCHMARK(BM_LcaQuery);

void BM_RangeModeQuery(benchmark::State& state) {
  constexpr std::int32_t kLen = 1 << 16;
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<ColorId> col(0, kDelta - 1);
  std::vector<ColorId> data(kLen);
  for (auto& c : data) c = col(rng);
  const RangeModeIndex idx(data, 256);  // ~sqrt(N) blocks
  std::uniform_int_distribution<std::int32_t> pos(0, kLen - 1);
  std::vector<std::pair<std::int32_t, std::int32_t>> queries(4096);
  for (auto& [i, j] : queries) {
    i = pos(rng);
    j = pos(rng);
    if (i > j) std::swap(i, j);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [lo, hi] = queries[i++ & 4095];
    benchmark::DoNotOptimize(idx.query(lo, hi));
  }
}
BENCHMARK(BM_RangeModeQuery);

void BM_SpellThroughput(benchmark::State& state) {
  const DocumentCollection docs = generate_random_documents(16, 1 << 18, 4, kSeed);
  const GeneralizedSuffixTree gst = GeneralizedSuffixTree::build(docs);
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> doc_pick(0, docs.documents.size() - 1);
  std::vector<std::string> patterns;
  std::int64_t bytes = 0;
  for (int i = 0; i < 256; ++i) {
    const auto& d = docs.documents[doc_pick(rng)];
    std::uniform_int_distribution<std::size_t> pos(0, d.size() - 1);
    const std::size_t at = pos(rng);
    const std::size_t len = std::min<std::size_t>(64, d.size() - at);
    patterns.emplace_back(d.begin() + at, d.begin() + at + len);
    bytes += static_cast<std::int64_t>(len);
  }
  for (auto _ : state) {
    for (const std::string& p : patterns) {
      benchmark::DoNotOptimize(gst.spell(p));
    }
  }
  state.SetBytesProcessed(state.iterations() * bytes);
}
BENCHMARK(BM_SpellThroughput);

}  // namespace

BENCHMARK_MAIN();
