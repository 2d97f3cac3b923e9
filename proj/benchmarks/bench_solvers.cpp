// Solver timings on a generated corpus. The corpus and its cost matrices are
// built once per process; every benchmark reuses them.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "dvs/core/evaluate.hpp"
#include "dvs/deltas/populate.hpp"
#include "dvs/exact/enumerate.hpp"
#include "dvs/genlab/generator.hpp"
#include "dvs/heuristics/gith.hpp"
#include "dvs/heuristics/last.hpp"
#include "dvs/heuristics/lmg.hpp"
#include "dvs/heuristics/mp.hpp"
#include "dvs/spanners/spanners.hpp"

namespace {

using namespace dvs;

// Versions of the benchmark corpus; dc_desk shape, shorter history.
constexpr std::uint64_t kVersions = 300;

struct Fixture {
  SolverGraph directed;
  SolverGraph undirected;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    auto params = load_gen_params(std::filesystem::path(DVS_PARAMS_DIR) / "dc_desk.params");
    params.num_commits = kVersions;
    const auto skeleton = gen_version_graph(params);
    const auto contents = gen_datasets(skeleton, params.dataset, params.seed);
    PopulateOptions opt;
    opt.policy = {PairPolicy::Kind::k_hop, 6};
    Fixture out;
    out.directed = build_solver_graph(skeleton.graph, populate_matrices(contents, skeleton.graph, opt));
    opt.mode = DeltaMode::undirected;
    out.undirected = build_solver_graph(skeleton.graph, populate_matrices(contents, skeleton.graph, opt));
    return out;
  }();
  return f;
}

void BM_Mca(benchmark::State& state) {
  const auto& sg = fixture().directed;
  for (auto _ : state) benchmark::DoNotOptimize(mca_directed(sg));
  state.counters["edges"] = static_cast<double>(sg.edges().size());
}
BENCHMARK(BM_Mca)->Unit(benchmark::kMillisecond);

void BM_Mst(benchmark::State& state) {
  const auto& sg = fixture().undirected;
  for (auto _ : state) benchmark::DoNotOptimize(mst_undirected(sg));
}
BENCHMARK(BM_Mst)->Unit(benchmark::kMillisecond);

void BM_Spt(benchmark::State& state) {
  const auto& sg = fixture().directed;
  for (auto _ : state) benchmark::DoNotOptimize(spt(sg));
}
BENCHMARK(BM_Spt)->Unit(benchmark::kMillisecond);

// Argument: budget as a percentage of the min-storage cost.
void BM_Lmg(benchmark::State& state) {
  const auto& sg = fixture().directed;
  const auto base = mca_directed(sg);
  const auto tree = spt(sg);
  const Cost budget = evaluate(base, sg).total_storage * state.range(0) / 100;
  for (auto _ : state) benchmark::DoNotOptimize(lmg(sg, base, tree, budget));
}
BENCHMARK(BM_Lmg)->Arg(110)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

// Argument: theta as a multiple of the largest shortest-path distance.
void BM_Mp(benchmark::State& state) {
  const auto& sg = fixture().directed;
  const auto sp = shortest_distances(sg);
  const Cost theta = *std::max_element(sp.begin(), sp.end()) * state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(mp(sg, theta));
}
BENCHMARK(BM_Mp)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Last(benchmark::State& state) {
  const auto& sg = fixture().undirected;
  const auto mst = mst_undirected(sg);
  const auto tree = spt(sg);
  for (auto _ : state) benchmark::DoNotOptimize(last(sg, mst, tree, 2.0));
}
BENCHMARK(BM_Last)->Unit(benchmark::kMillisecond);

// Argument: window size.
void BM_GitH(benchmark::State& state) {
  const auto& sg = fixture().directed;
  GitHConfig cfg;
  cfg.window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gith(sg, cfg));
}
BENCHMARK(BM_GitH)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const auto& sg = fixture().directed;
  const auto plan = mca_directed(sg);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(plan, sg));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMicrosecond);

}  // namespace
