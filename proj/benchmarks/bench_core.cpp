#include <benchmark/benchmark.h>

#include "clbs/algebra.hpp"
#include "clbs/branching.hpp"
#include "clbs/freeproduct.hpp"
#include "clbs/random.hpp"
#include "clbs/representation.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace clbs;

namespace {

const SeparatedGraph& example() {
  static const SeparatedGraph g = clbs::testing::example1();
  return g;
}

// One vertex with `groups` singleton groups outside S: 2^groups cells.
SeparatedGraph fan(std::size_t groups) {
  std::vector<std::string> names{"hub"};
  std::vector<Edge> edges;
  std::vector<std::vector<Group>> cv(groups + 1);
  for (std::size_t i = 0; i < groups; ++i) {
    names.push_back("t" + std::to_string(i));
    edges.push_back(Edge{"e" + std::to_string(i), VertexId{0}, VertexId{i + 1}});
    cv[0].push_back(Group{EdgeId{i}});
  }
  return SeparatedGraph(std::move(names), std::move(edges), std::move(cv), {});
}

}  // namespace

static void BM_ConstructFan(benchmark::State& state) {
  auto g = fan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(construct(g));
  state.counters["cells"] = static_cast<double>(1u << state.range(0));
}
BENCHMARK(BM_ConstructFan)->DenseRange(2, 10, 2);

static void BM_VerifyAxiomsRandom(benchmark::State& state) {
  auto gs = clbs::testing::random_graph_family(20);
  std::vector<BranchingSystem> systems;
  for (const auto& g : gs) systems.push_back(construct(g));
  for (auto _ : state) {
    for (std::size_t i = 0; i < gs.size(); ++i) {
      benchmark::DoNotOptimize(verify_axioms(gs[i], systems[i]));
    }
  }
}
BENCHMARK(BM_VerifyAxiomsRandom);

static void BM_ReduceRandom(benchmark::State& state) {
  const auto& g = example();
  auto sel = SelectedEdges::defaults(g);
  Rng rng(1);
  std::vector<Element> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(random_element(g, rng, 4, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    for (const auto& x : xs) benchmark::DoNotOptimize(reduce(x, g, sel));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_ReduceRandom)->Arg(2)->Arg(4)->Arg(8);

static void BM_IsZeroCommutators(benchmark::State& state) {
  const auto& g = example();
  Representation rep(construct(g));
  auto sample = commutator_sample(g, 2, CommutatorAlphabet::edges_and_ghosts);
  for (auto _ : state) {
    for (const auto& c : sample) benchmark::DoNotOptimize(rep.is_zero(c));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sample.size()));
}
BENCHMARK(BM_IsZeroCommutators)->Unit(benchmark::kMillisecond);

static void BM_OperatorRank(benchmark::State& state) {
  const auto& g = example();
  auto sel = SelectedEdges::defaults(g);
  Representation rep(construct(g));
  auto words = spanning_set(g, sel, static_cast<std::size_t>(state.range(0))).words;
  for (auto _ : state) benchmark::DoNotOptimize(rep.operator_rank(words));
  state.counters["words"] = static_cast<double>(words.size());
}
BENCHMARK(BM_OperatorRank)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_FaithfulnessTrial(benchmark::State& state) {
  const auto& g = example();
  auto sel = SelectedEdges::defaults(g);
  Representation rep(construct(g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(faithfulness_trial(g, rep, sel, 3, 100, 0));
  }
}
BENCHMARK(BM_FaithfulnessTrial)->Unit(benchmark::kMillisecond);

static void BM_IsoOnRelations(benchmark::State& state) {
  auto gs = clbs::testing::random_graph_family(20);
  for (auto _ : state) {
    for (const auto& g : gs) {
      benchmark::DoNotOptimize(check_iso_on_relations(g, decompose(g), SelectedEdges::defaults(g)));
    }
  }
}
BENCHMARK(BM_IsoOnRelations)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
